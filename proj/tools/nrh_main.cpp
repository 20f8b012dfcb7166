// nrh: exact-arithmetic toolbox for naturally reductive Lorentzian models
// with parallel skew torsion. Subcommands: validate, classify, transvection,
// construct, catalog, coords.
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "nrh/constructions.hpp"
#include "nrh/coordgeo.hpp"
#include "nrh/errors.hpp"
#include "nrh/modelio.hpp"

using nlohmann::json;
using namespace nrh;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;       // I/O, schema, unknown family
constexpr int kExitValidation = 2;  // model fails a mathematical check

json report_header() {
  return {{"report_version", 1}};
}

// ---- shared helpers ----

InfinitesimalModel load_and_complete(const std::string& path) {
  ModelFile mf = load_model(path);
  if (mf.solve_for_curvature) {
    CurvatureSpace cs = curvature_space(so_full(mf.model.space), mf.model.T);
    if (!cs.particular)
      throw ModelInconsistent("no curvature tensor satisfies the Bianchi identity for this torsion");
    mf.model.R = *cs.particular;
  }
  return mf.model;
}

json validation_json(const ValidationReport& rep) {
  json checks = json::array();
  for (auto& [name, c] : rep.checks)
    checks.push_back({{"name", name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"checks", std::move(checks)},
          {"pass", rep.pass()},
          {"holonomy_dim", rep.holonomy_dim},
          {"flat", rep.flat},
          {"torsion_free", rep.torsion_free}};
}

void print_validation_text(const ValidationReport& rep) {
  for (auto& [name, c] : rep.checks) {
    std::cout << (c.pass ? "  ok   " : "  FAIL ") << name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << "holonomy dim: " << rep.holonomy_dim << (rep.flat ? "  [flat]" : "")
            << (rep.torsion_free ? "  [torsion-free]" : "") << "\n"
            << (rep.pass() ? "PASS" : "FAIL") << "\n";
}

std::string killing_str(const Mat& k) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < k.rows; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < k.cols; ++j) os << (j ? " " : "") << to_string(k(i, j));
  }
  os << "]";
  return os.str();
}

// Derived algebra f' of the transvection algebra, classified when it is
// three-dimensional.
json derived_info(const AbstractLieAlgebra& f) {
  std::vector<Vec> full;
  for (int i = 0; i < f.dim; ++i) {
    Vec v(f.dim);
    v[i] = 1;
    full.push_back(v);
  }
  std::vector<Vec> der = derived_basis(f, full);
  json out;
  out["dim"] = der.size();
  if (der.size() == 3) {
    AbstractLieAlgebra sub = subalgebra_on(f, der);
    LieClassification cls = classify_dim3(sub);
    out["classification"] = cls.label;
    out["evidence"] = cls.evidence;
  }
  return out;
}

std::vector<Rat> parse_grid(const std::string& spec) {
  if (spec.empty()) return default_grid();
  std::vector<Rat> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto r = parse_rational(tok);
    if (!r) throw SchemaError("--grid: cannot parse rational '" + tok + "'");
    out.push_back(*r);
  }
  if (out.empty()) throw SchemaError("--grid: empty grid");
  return out;
}

Mat parse_matrix_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a matrix");
  int r = static_cast<int>(j.size()), c = static_cast<int>(j[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c)
      throw SchemaError(where + ": ragged matrix");
    for (int k = 0; k < c; ++k) {
      const json& e = j[i][k];
      std::optional<Rat> v;
      if (e.is_string())
        v = parse_rational(e.get<std::string>());
      else if (e.is_number_integer())
        v = Rat(e.get<long long>());
      if (!v) throw SchemaError(where + ": entries must be integers or rational strings");
      m(i, k) = *v;
    }
  }
  return m;
}

// "name=value" pairs: value is a rational or a JSON matrix [[..],[..]].
void apply_param(FamilyParams& fp, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos) throw SchemaError("--param expects name=value: " + kv);
  std::string name = kv.substr(0, eq), value = kv.substr(eq + 1);
  if (!value.empty() && value[0] == '[') {
    json j;
    try {
      j = json::parse(value);
    } catch (const json::exception& e) {
      throw SchemaError("--param " + name + ": " + e.what());
    }
    fp.matrices[name] = parse_matrix_json(j, "--param " + name);
    return;
  }
  auto r = parse_rational(value);
  if (!r) throw SchemaError("--param " + name + ": cannot parse rational '" + value + "'");
  fp.scalars[name] = *r;
}

DMat parse_dmat(const std::string& spec, int n, bool symmetric, unsigned seed,
                const std::string& flag) {
  DMat m(n, n);
  if (spec == "0" || spec.empty()) return m;
  if (spec == "I") {
    if (!symmetric) throw SchemaError(flag + ": identity is not skew");
    return DMat::identity(n);
  }
  if (spec == "rand") {
    auto pts = sample_points(n * n, 1, seed);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = pts[0][i * n + j];
        if (symmetric) {
          m(i, j) = m(j, i) = (i <= j) ? v : m(i, j);
        } else if (i < j) {
          m(i, j) = v;
          m(j, i) = -v;
        }
      }
    return m;
  }
  json j;
  try {
    j = json::parse(spec);
  } catch (const json::exception& e) {
    throw SchemaError(flag + ": " + e.what());
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw SchemaError(flag + ": expected " + std::to_string(n) + " rows");
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

// ---- subcommand bodies ----

int cmd_validate(const std::string& path, bool as_json) {
  InfinitesimalModel m = load_and_complete(path);
  ValidationReport rep = validate(m);
  if (as_json) {
    json j = report_header();
    j["command"] = "validate";
    j["validation"] = validation_json(rep);
    std::cout << j.dump(2) << "\n";
  } else {
    print_validation_text(rep);
  }
  return rep.pass() ? kExitOk : kExitValidation;
}

int cmd_classify(const std::string& path, bool as_json) {
  InfinitesimalModel m = load_and_complete(path);
  ValidationReport rep = validate(m);
  if (!rep.pass()) {
    if (as_json) {
      json j = report_header();
      j["command"] = "classify";
      j["validation"] = validation_json(rep);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "model fails validation; classification skipped\n";
      print_validation_text(rep);
    }
    return kExitValidation;
  }
  CaseLabel label = classify_case(m);
  json jf;
  std::string ftext;
  {
    AbstractLieAlgebra f = transvection(m);
    jf = derived_info(f);
    ftext = "transvection dim " + std::to_string(f.dim) + ", f' dim " +
            std::to_string(jf["dim"].get<int>());
    if (jf.contains("classification"))
      ftext += ", f' = " + jf["classification"].get<std::string>();
  }
  if (as_json) {
    json j = report_header();
    j["command"] = "classify";
    j["case"] = label.case_id;
    j["detail"] = label.detail;
    j["flat_or_symmetric"] = label.flat_or_symmetric;
    j["holonomy_dim"] = rep.holonomy_dim;
    if (label.weak) j["weak_type"] = label.weak->type;
    j["transvection"] = jf;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "case " << label.case_id << ": " << label.detail << "\n" << ftext << "\n";
  }
  return kExitOk;
}

int cmd_transvection(const std::string& path, bool as_json) {
  InfinitesimalModel m = load_and_complete(path);
  AbstractLieAlgebra f = transvection(m);
  StructureReport sr = structure_report(f);
  json jd = derived_info(f);
  if (as_json) {
    json j = report_header();
    j["command"] = "transvection";
    j["dim"] = f.dim;
    j["labels"] = f.labels;
    json killing = json::array();
    for (int i = 0; i < sr.killing.rows; ++i) {
      json row = json::array();
      for (int k = 0; k < sr.killing.cols; ++k) row.push_back(to_string(sr.killing(i, k)));
      killing.push_back(std::move(row));
    }
    j["killing"] = std::move(killing);
    j["derived_series_dims"] = sr.derived_series_dims;
    j["center_dim"] = sr.center_dim;
    j["solvable"] = sr.solvable;
    j["nilpotent"] = sr.nilpotent;
    j["derived"] = jd;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "transvection algebra: dim " << f.dim << "\nbasis:";
    for (auto& l : f.labels) std::cout << " " << l;
    std::cout << "\nKilling " << killing_str(sr.killing) << "\nderived series dims:";
    for (int d : sr.derived_series_dims) std::cout << " " << d;
    std::cout << "\ncenter dim " << sr.center_dim << (sr.solvable ? "  solvable" : "")
              << (sr.nilpotent ? "  nilpotent" : "") << "\n";
    if (jd.contains("classification"))
      std::cout << "f' = " << jd["classification"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_construct(std::string family, const std::vector<std::string>& params,
                  const std::string& base, int base_dim,
                  const std::vector<std::string>& base_params, const std::string& out_path,
                  bool as_json) {
  FamilyParams fp;
  for (auto& kv : params) apply_param(fp, kv);
  fp.base = base;
  fp.base_dim = base_dim;
  for (auto& kv : base_params) {
    FamilyParams tmp;
    apply_param(tmp, kv);
    for (auto& [k, v] : tmp.scalars) fp.base_scalars[k] = v;
  }
  if (family == "extend-product") family = "d2n2";  // shipped bi-invariant preset

  auto known = known_families();
  if (std::find(known.begin(), known.end(), family) == known.end()) {
    std::cerr << "unknown family '" << family << "'. Known families:\n";
    for (auto& f : known) std::cerr << "  " << f << "\n";
    return kExitUsage;
  }

  ConstraintReport cons = family_constraint_check(family, fp);
  InfinitesimalModel m = build_family(family, fp);
  std::string text = serialize_model(m);
  if (!out_path.empty()) {
    save_model(m, out_path);
    if (as_json) {
      json j = report_header();
      j["command"] = "construct";
      j["family"] = family;
      j["written"] = out_path;
      json cl = json::array();
      for (auto& [c, ok] : cons.clauses) cl.push_back({{"clause", c}, {"pass", ok}});
      j["constraints"] = std::move(cl);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "wrote " << out_path << "\n";
      for (auto& [c, ok] : cons.clauses)
        if (!ok) std::cout << "note: unsatisfied " << c << "\n";
    }
  } else {
    std::cout << text;
  }
  return kExitOk;
}

int cmd_catalog(int dim, bool as_json, bool do_validate, const std::string& grid_spec) {
  std::vector<int> dims = dim > 0 ? std::vector<int>{dim} : std::vector<int>{3, 4, 5};
  json out = report_header();
  out["command"] = "catalog";
  json families = json::array();
  bool all_ok = true;

  for (int d : dims)
    for (const CatalogEntry& e : catalog(d)) {
      json je = {{"family", e.family}, {"dim", e.dim}, {"label", e.label},
                 {"params", e.params}, {"description", e.description}};
      if (do_validate) {
        std::vector<Rat> grid = parse_grid(grid_spec);
        int total = 0, passed = 0;
        // Sweep each scalar parameter over the grid, others at defaults.
        std::vector<FamilyParams> sweep{FamilyParams{}};
        for (auto& pname : e.params) {
          std::vector<FamilyParams> next;
          for (auto& fp : sweep)
            for (auto& v : grid) {
              FamilyParams q = fp;
              q.scalars[pname] = v;
              next.push_back(std::move(q));
            }
          sweep = std::move(next);
        }
        for (auto& fp : sweep) {
          ++total;
          if (validate(build_family(e.family, fp)).pass()) ++passed;
        }
        je["grid_points"] = total;
        je["grid_passed"] = passed;
        if (passed != total) all_ok = false;
        if (!as_json)
          std::cout << e.family << " (dim " << e.dim << ", " << e.label << "): " << passed << "/"
                    << total << " grid points validate\n";
      } else if (!as_json) {
        std::cout << e.family << "  dim=" << e.dim << "  label=" << e.label << "  params=";
        for (auto& pn : e.params) std::cout << pn << ",";
        std::cout << "  " << e.description << "\n";
      }
      families.push_back(std::move(je));
    }

  if (const char* dir = std::getenv("NRH_CATALOG_DIR")) {
    json user = json::array();
    std::error_code ec;
    for (auto& de : std::filesystem::directory_iterator(dir, ec))
      if (de.path().extension() == ".json") {
        user.push_back(de.path().string());
        if (!as_json) std::cout << "user model: " << de.path().string() << "\n";
      }
    out["user_models"] = std::move(user);
  }
  out["families"] = std::move(families);
  if (as_json) std::cout << out.dump(2) << "\n";
  return all_ok ? kExitOk : kExitValidation;
}

int cmd_coords(const std::string& which, int n, int k, const std::string& a_spec,
               const std::string& f_spec, const std::string& check, unsigned seed, double tolv,
               int nsamples, bool as_json) {
  NumericTolerance tol;
  if (tolv > 0) tol.svd_cut = tolv;

  CoordinateMetric metric;
  TorsionDescriptor torsion = TorsionDescriptor::zero(n);
  json setup;
  if (which == "plane-wave") {
    DMat A = parse_dmat(a_spec, n, true, seed + 1, "--A");
    DMat F = parse_dmat(f_spec, n, false, seed + 2, "--F");
    metric = CoordinateMetric::plane_wave(A, F);
    torsion = TorsionDescriptor::du_wedge_omega(F);
    setup = {{"family", "plane-wave"}, {"n", n}};
  } else if (which == "example1" || which == "example2") {
    if ((n - k) % 2 != 0 || k < 0 || k > n)
      throw SchemaError("examples need 0 <= k <= n with n-k even");
    DMat Q(n, n);
    for (int i = 0; i < k; ++i) Q(i, i) = 1.0;
    if (which == "example2")
      for (int i = k; i < n; ++i) Q(i, i) = -1.0;
    metric = CoordinateMetric::pp_wave(n, Poly::quadratic(Q, n + 1));
    DMat omega(n, n);
    for (int i = k; i + 1 < n; i += 2) {
      omega(i, i + 1) = 1.0;
      omega(i + 1, i) = -1.0;
    }
    torsion = TorsionDescriptor::du_wedge_omega(omega);
    setup = {{"family", which}, {"n", n}, {"k", k}};
  } else {
    std::cerr << "unknown coords family '" << which << "' (plane-wave|example1|example2)\n";
    return kExitUsage;
  }

  auto samples = sample_points(n + 2, nsamples, seed);
  json j = report_header();
  j["command"] = "coords";
  j["setup"] = setup;
  j["seed"] = seed;
  j["tolerances"] = {{"abs_tol", tol.abs_tol}, {"svd_cut", tol.svd_cut}, {"fd_step", tol.fd_step}};
  bool ok = true;

  if (check.empty() || check == "nablaT") {
    double worst = 0.0;
    for (auto& pt : samples) worst = std::max(worst, nablaT_residual(metric, torsion, pt));
    j["nablaT_residual_max"] = worst;
    if (worst > tol.abs_tol) ok = false;
    if (!as_json) std::cout << "max |nabla T| over " << nsamples << " samples: " << worst << "\n";
  }
  if (check.empty() || check == "curvature") {
    NumericCurvature R = curvature_at(metric, torsion, samples[0]);
    j["curvature_nonzero_pairs"] = R.vals.size();
    j["curvature_max_abs"] = R.max_abs();
    if (!as_json)
      std::cout << "curvature at first sample: " << R.vals.size()
                << " nonzero pairs, max |entry| = " << R.max_abs() << "\n";
  }
  if (check.empty() || check == "holonomy") {
    NumericHolonomy hol = infinitesimal_holonomy(metric, torsion, samples, tol);
    j["holonomy_rank"] = hol.rank;
    j["rank_unstable"] = hol.rank_unstable;
    if (hol.rank_unstable) ok = false;
    if (!as_json)
      std::cout << "infinitesimal holonomy rank: " << hol.rank
                << (hol.rank_unstable ? "  (RankUnstable warning)" : "") << "\n";
  }

  j["pass"] = ok;
  if (as_json) std::cout << j.dump(2) << "\n";
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebra of Lorentzian naturally reductive spaces with parallel skew torsion"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");

  std::string path;
  auto* validate_cmd = app.add_subcommand("validate", "run all infinitesimal-model checks");
  validate_cmd->add_option("file", path, "model JSON file")->required();
  auto* classify_cmd = app.add_subcommand("classify", "holonomy case classification");
  classify_cmd->add_option("file", path, "model JSON file")->required();
  auto* transvection_cmd = app.add_subcommand("transvection", "transvection algebra report");
  transvection_cmd->add_option("file", path, "model JSON file")->required();

  std::string family, base, out_path, grid_spec;
  int base_dim = 0;
  std::vector<std::string> params, base_params;
  auto* construct_cmd = app.add_subcommand("construct", "build a shipped family model");
  construct_cmd->add_option("--family", family, "family id (see catalog)")->required();
  construct_cmd->add_option("--param", params, "name=value (rational or JSON matrix)");
  construct_cmd->add_option("--base", base, "Riemannian base id (flat|const-curv|so3|so3-flat)");
  construct_cmd->add_option("--base-dim", base_dim, "Riemannian base dimension");
  construct_cmd->add_option("--base-param", base_params, "base parameter name=value");
  construct_cmd->add_option("-o,--output", out_path, "write model file here (default stdout)");

  int dim = 0;
  bool do_validate = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "list shipped families");
  catalog_cmd->add_option("--dim", dim, "restrict to one dimension (3|4|5)");
  catalog_cmd->add_flag("--validate", do_validate, "validate every family over the grid");
  catalog_cmd->add_option("--grid", grid_spec, "comma-separated rational grid override");

  std::string coords_family, a_spec = "I", f_spec = "0", check;
  int n = 3, k = 0, nsamples = 8;
  unsigned seed = 20260823;
  double tolv = 0;
  auto* coords_cmd = app.add_subcommand("coords", "numeric coordinate-metric checks");
  coords_cmd->add_option("family", coords_family, "plane-wave|example1|example2")->required();
  coords_cmd->add_option("--n", n, "fiber dimension");
  coords_cmd->add_option("--k", k, "quadratic rank parameter for the examples");
  coords_cmd->add_option("--A", a_spec, "symmetric matrix: I|0|rand|JSON rows");
  coords_cmd->add_option("--F", f_spec, "skew matrix: 0|rand|JSON rows");
  coords_cmd->add_option("--check", check, "nablaT|curvature|holonomy (default: all)");
  coords_cmd->add_option("--seed", seed, "sample-point seed");
  coords_cmd->add_option("--tol", tolv, "SVD rank cut override");
  coords_cmd->add_option("--samples", nsamples, "number of sample points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return cmd_validate(path, as_json);
    if (*classify_cmd) return cmd_classify(path, as_json);
    if (*transvection_cmd) return cmd_transvection(path, as_json);
    if (*construct_cmd)
      return cmd_construct(family, params, base, base_dim, base_params, out_path, as_json);
    if (*catalog_cmd) return cmd_catalog(dim, as_json, do_validate, grid_spec);
    if (*coords_cmd)
      return cmd_coords(coords_family, n, k, a_spec, f_spec, check, seed, tolv, nsamples, as_json);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FamilyConstraintError& e) {
    std::cerr << "family constraint: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelInconsistent& e) {
    std::cerr << "model inconsistent: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
