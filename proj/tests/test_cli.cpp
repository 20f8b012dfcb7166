// End-to-end checks of the nrh binary: exit codes, output shapes, round trips.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "nrh_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path out = scratch() / ("out" + std::to_string(counter) + ".txt");
  fs::path err = scratch() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(NRH_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                    err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* kWirrModel = R"({
  "dim": 3,
  "frame": "witt",
  "metric": [["0","0","1"],["0","1","0"],["1","0","0"]],
  "torsion": [{"indices": [0,1,2], "value": "1"}],
  "curvature": [{"indices": [2,1],
                 "matrix": [["0","0","0"],["0","0","0"],["0","0","0"]]}]
})";

// g . R != 0: mathematically broken but schema-clean.
const char* kBrokenModel = R"({
  "dim": 3,
  "frame": "witt",
  "metric": [["0","0","1"],["0","1","0"],["1","0","0"]],
  "torsion": [{"indices": [0,1,2], "value": "1"}],
  "curvature": [{"indices": [2,1],
                 "matrix": [["-1","0","0"],["0","0","0"],["0","0","1"]]}]
})";

}  // namespace

TEST_CASE("usage errors exit with a parse failure") {
  CHECK(run("").exit_code != 0);
  CHECK(run("frobnicate").exit_code != 0);
}

TEST_CASE("construct then validate round trip") {
  fs::path model = scratch() / "wirr.json";
  auto c = run("construct --family dim3-wirr --param alpha=3/2 -o " + model.string());
  CHECK(c.exit_code == 0);
  CHECK(contains(c.out, "wrote"));

  auto v = run("validate " + model.string());
  CHECK(v.exit_code == 0);
  CHECK(contains(v.out, "PASS"));

  auto vj = run("--json validate " + model.string());
  CHECK(vj.exit_code == 0);
  CHECK(contains(vj.out, "\"pass\": true"));
  CHECK(contains(vj.out, "\"holonomy_dim\": 1"));
}

TEST_CASE("construct to stdout and the extend-product alias") {
  auto c = run("construct --family dim3-boost");
  CHECK(c.exit_code == 0);
  CHECK(contains(c.out, "\"frame\": \"witt\""));

  auto alias = run("construct --family extend-product");
  CHECK(alias.exit_code == 0);
  CHECK(contains(alias.out, "\"dim\": 4"));
}

TEST_CASE("unknown family lists the catalog") {
  auto c = run("construct --family no-such-family");
  CHECK(c.exit_code == 1);
  CHECK(contains(c.err, "unknown family"));
  CHECK(contains(c.err, "dim3-wirr"));
}

TEST_CASE("validate exit codes distinguish schema from math failures") {
  fs::path bad_json = write_file("bad.json", "{ not json");
  CHECK(run("validate " + bad_json.string()).exit_code == 1);

  fs::path missing = scratch() / "missing.json";
  CHECK(run("validate " + missing.string()).exit_code == 1);

  fs::path broken = write_file("broken.json", kBrokenModel);
  auto v = run("validate " + broken.string());
  CHECK(v.exit_code == 2);
  CHECK(contains(v.out, "FAIL"));
}

TEST_CASE("classify and transvection on a model file") {
  fs::path model = write_file("wirr2.json", kWirrModel);
  // R = 0 here: symmetric-by-torsion, still classified.
  auto c = run("classify " + model.string());
  CHECK(c.exit_code == 0);
  CHECK(contains(c.out, "case"));

  auto ct = run("construct --family dim3-wirr --param alpha=1 -o " +
                (scratch() / "wirr3.json").string());
  REQUIRE(ct.exit_code == 0);
  auto cl = run("--json classify " + (scratch() / "wirr3.json").string());
  CHECK(cl.exit_code == 0);
  CHECK(contains(cl.out, "\"case\": 2"));
  CHECK(contains(cl.out, "\"weak_type\": 2"));

  auto tr = run("transvection " + (scratch() / "wirr3.json").string());
  CHECK(tr.exit_code == 0);
  CHECK(contains(tr.out, "dim 4"));

  // A broken model is refused before classification.
  fs::path broken = write_file("broken2.json", kBrokenModel);
  CHECK(run("classify " + broken.string()).exit_code == 2);
}

TEST_CASE("solve_for curvature completes the model") {
  fs::path model = write_file("solve.json", R"({
    "dim": 3,
    "frame": "witt",
    "metric": [["0","0","1"],["0","1","0"],["1","0","0"]],
    "torsion": [{"indices": [0,1,2], "value": "1"}],
    "curvature": {"solve_for": "curvature"}
  })");
  auto v = run("validate " + model.string());
  CHECK(v.exit_code == 0);
}

TEST_CASE("catalog listing and grid validation") {
  auto c = run("catalog --dim 3");
  CHECK(c.exit_code == 0);
  CHECK(contains(c.out, "dim3-rot"));
  CHECK(!contains(c.out, "dim4-rot"));

  auto v = run("catalog --dim 3 --validate --grid -1,0,1/2");
  CHECK(v.exit_code == 0);
  CHECK(contains(v.out, "grid points validate"));

  auto j = run("--json catalog");
  CHECK(j.exit_code == 0);
  CHECK(contains(j.out, "\"families\""));
}

TEST_CASE("coords subcommand") {
  auto ex2 = run("--json coords example2 --n 4 --k 2 --samples 4");
  CHECK(ex2.exit_code == 0);
  CHECK(contains(ex2.out, "\"holonomy_rank\": 2"));
  CHECK(contains(ex2.out, "\"pass\": true"));

  auto ex1 = run("--json coords example1 --n 4 --k 2 --samples 4");
  CHECK(ex1.exit_code == 0);
  CHECK(contains(ex1.out, "\"holonomy_rank\": 4"));

  CHECK(run("coords example1 --n 3 --k 2").exit_code == 1);  // n-k odd
  CHECK(run("coords no-such").exit_code == 1);
}
