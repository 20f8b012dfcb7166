#include "nrh/modelio.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nrh/errors.hpp"

namespace nrh {

using nlohmann::json;

namespace {

Rat rat_field(const json& j, const std::string& where) {
  if (!j.is_string())
    throw SchemaError(where + ": rationals must be strings like \"3\" or \"-1/2\"");
  auto r = parse_rational(j.get<std::string>());
  if (!r) throw SchemaError(where + ": cannot parse rational '" + j.get<std::string>() + "'");
  return *r;
}

Mat matrix_field(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw SchemaError(where + ": expected a " + std::to_string(n) + "-row matrix");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError(where + "[" + std::to_string(i) + "]: expected " + std::to_string(n) +
                        " entries");
    for (int k = 0; k < n; ++k)
      m(i, k) = rat_field(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

std::vector<int> index_field(const json& j, int count, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != count)
    throw SchemaError(where + ": expected " + std::to_string(count) + " indices");
  std::vector<int> idx;
  for (auto& e : j) {
    if (!e.is_number_integer()) throw SchemaError(where + ": indices must be integers");
    int v = e.get<int>();
    if (v < 0 || v >= dim) throw SchemaError(where + ": index " + std::to_string(v) + " out of range");
    idx.push_back(v);
  }
  return idx;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ModelFile parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw SchemaError("dim: required integer field");
  int n = j["dim"].get<int>();
  if (n < 1 || n > 24) throw SchemaError("dim: must be between 1 and 24");

  if (!j.contains("metric")) throw SchemaError("metric: required field");
  Mat G = matrix_field(j["metric"], n, "metric");
  if (G.transposed() != G) throw SchemaError("metric: must be symmetric");

  std::vector<std::string> labels;
  if (j.contains("basis_labels")) {
    const json& bl = j["basis_labels"];
    if (!bl.is_array() || static_cast<int>(bl.size()) != n)
      throw SchemaError("basis_labels: expected " + std::to_string(n) + " strings");
    for (auto& e : bl) {
      if (!e.is_string()) throw SchemaError("basis_labels: entries must be strings");
      labels.push_back(e.get<std::string>());
    }
  }

  FrameKind fk = FrameKind::general;
  if (j.contains("frame")) {
    std::string f = j["frame"].is_string() ? j["frame"].get<std::string>() : "";
    if (f == "witt")
      fk = FrameKind::witt;
    else if (f == "orthonormal")
      fk = FrameKind::orthonormal;
    else if (f == "general")
      fk = FrameKind::general;
    else
      throw SchemaError("frame: must be one of witt|orthonormal|general");
  }

  SpacePtr sp;
  try {
    sp = PseudoEuclideanSpace::general(G, labels);
  } catch (const Error& e) {
    throw SchemaError(std::string("metric: ") + e.what());
  }
  if (fk != FrameKind::general) {
    auto owned = std::make_shared<PseudoEuclideanSpace>(*sp);
    owned->frame = fk;
    sp = owned;
  }

  ModelFile out;
  out.model.space = sp;
  out.model.T = TorsionTensor::zero(sp);
  out.model.R = CurvatureTensor(sp);

  if (j.contains("torsion")) {
    const json& ts = j["torsion"];
    if (!ts.is_array()) throw SchemaError("torsion: expected an array of component entries");
    MultiVector form(sp, 3);
    for (size_t i = 0; i < ts.size(); ++i) {
      std::string where = "torsion[" + std::to_string(i) + "]";
      const json& e = ts[i];
      if (!e.is_object() || !e.contains("indices") || !e.contains("value"))
        throw SchemaError(where + ": expected {indices:[i,j,k], value}");
      auto idx = index_field(e["indices"], 3, n, where + ".indices");
      if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2])
        throw SchemaError(where + ".indices: repeated index");
      form.add_term(idx, rat_field(e["value"], where + ".value"));
    }
    out.model.T = TorsionTensor(std::move(form));
  }

  if (j.contains("curvature")) {
    const json& cs = j["curvature"];
    if (cs.is_object()) {
      if (cs.value("solve_for", "") != "curvature")
        throw SchemaError("curvature: object form must be {\"solve_for\": \"curvature\"}");
      out.solve_for_curvature = true;
    } else if (cs.is_array()) {
      for (size_t i = 0; i < cs.size(); ++i) {
        std::string where = "curvature[" + std::to_string(i) + "]";
        const json& e = cs[i];
        if (!e.is_object() || !e.contains("indices") || !e.contains("matrix"))
          throw SchemaError(where + ": expected {indices:[i,j], matrix}");
        auto idx = index_field(e["indices"], 2, n, where + ".indices");
        if (idx[0] == idx[1]) throw SchemaError(where + ".indices: repeated index");
        Mat m = matrix_field(e["matrix"], n, where + ".matrix");
        if (!(m.transposed() * sp->G + sp->G * m).is_zero())
          throw SchemaError(where + ".matrix: value is not skew with respect to the metric");
        out.model.R.add(idx[0], idx[1], m);
      }
    } else {
      throw SchemaError("curvature: expected an array or {\"solve_for\": \"curvature\"}");
    }
  }

  if (j.contains("candidate_splitting")) {
    const json& cands = j["candidate_splitting"];
    if (!cands.is_array()) throw SchemaError("candidate_splitting: expected an array of index lists");
    for (size_t i = 0; i < cands.size(); ++i) {
      std::string where = "candidate_splitting[" + std::to_string(i) + "]";
      const json& lst = cands[i];
      if (!lst.is_array()) throw SchemaError(where + ": expected an index list");
      auto idx = index_field(lst, static_cast<int>(lst.size()), n, where);
      out.model.candidate_splitting.push_back(std::move(idx));
    }
  }
  return out;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(const InfinitesimalModel& m, int indent) {
  const SpacePtr& sp = m.space;
  json j;
  j["schema_version"] = 1;
  j["dim"] = sp->dim;
  switch (sp->frame) {
    case FrameKind::witt: j["frame"] = "witt"; break;
    case FrameKind::orthonormal: j["frame"] = "orthonormal"; break;
    case FrameKind::general: j["frame"] = "general"; break;
  }
  j["basis_labels"] = sp->labels;
  j["metric"] = matrix_json(sp->G);

  json ts = json::array();
  for (auto& [idx, v] : m.T.form.coeffs)
    ts.push_back({{"indices", idx}, {"value", to_string(v)}});
  j["torsion"] = std::move(ts);

  json cs = json::array();
  for (auto& [ij, mat] : m.R.vals)
    cs.push_back({{"indices", {ij.first, ij.second}}, {"matrix", matrix_json(mat)}});
  j["curvature"] = std::move(cs);

  if (!m.candidate_splitting.empty()) j["candidate_splitting"] = m.candidate_splitting;
  return j.dump(indent) + "\n";
}

void save_model(const InfinitesimalModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write file: " + path);
  out << serialize_model(m);
}

}  // namespace nrh
