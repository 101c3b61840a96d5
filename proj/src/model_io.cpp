// Copyright 2026 The qkvdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "model_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace qkvdp {
namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("field \"") + key + "\": " + e.what());
  }
}

Eigen::MatrixXd matrix_from_json(const Json& q, int n) {
  const auto format = get<std::string>(q, "format");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (format == "dense") {
    const auto data = get<std::vector<std::vector<double>>>(q, "data");
    if (static_cast<int>(data.size()) != n) throw InvalidInput("dense Q must have " + std::to_string(n) + " rows");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(data[i].size()) != n) throw InvalidInput("dense Q row has the wrong length");
      for (int j = 0; j < n; ++j) m(i, j) = data[i][j];
    }
  } else if (format == "coo") {
    if (q.contains("n") && get<int>(q, "n") != n)
      throw InvalidInput("coo Q has n = " + std::to_string(get<int>(q, "n")) + ", expected " + std::to_string(n));
    for (const auto& e : get<Json>(q, "entries")) {
      if (!e.is_array() || e.size() != 3) throw InvalidInput("coo entries are [i, j, value]");
      const int i = e[0].get<int>();
      const int jj = e[1].get<int>();
      if (i < 0 || i >= n || jj < 0 || jj >= n) throw InvalidInput("coo entry out of range");
      m(i, jj) += e[2].get<double>();
    }
  } else {
    throw InvalidInput("unknown Q format \"" + format + "\"");
  }
  return m;
}

Json coo(const Eigen::MatrixXd& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) entries.push_back({i, j, m(i, j)});
  return {{"format", "coo"}, {"n", m.rows()}, {"entries", entries}};
}

}  // namespace

Instance instance_from_json(const Json& j, std::vector<std::string>* warnings) {
  const int nv = get<int>(j, "num_vertices");
  std::vector<Arc> arcs;
  for (const auto& a : get<std::vector<std::array<int, 2>>>(j, "arcs")) arcs.push_back({a[0], a[1]});
  Instance inst;
  inst.graph = DirectedGraph(nv, std::move(arcs));
  for (const auto& p : get<std::vector<std::array<int, 2>>>(j, "pairs")) inst.pairs.push_back({p[0], p[1]});
  const int n = inst.k() * inst.graph.num_arcs();
  inst.cost = matrix_from_json(get<Json>(j, "Q"), n);
  if (!inst.cost.allFinite()) throw InvalidInput("Q has non-finite entries");
  const double asym = symmetrize(inst.cost);
  if (asym > 1e-9 && warnings)
    warnings->push_back("Q was asymmetric by " + std::to_string(asym) + "; symmetrized");
  inst.validate();
  return inst;
}

Json instance_to_json(const Instance& instance, const Json& provenance) {
  Json arcs = Json::array();
  for (ArcId e = 0; e < instance.graph.num_arcs(); ++e)
    arcs.push_back({instance.graph.arc(e).tail, instance.graph.arc(e).head});
  Json pairs = Json::array();
  for (const auto& p : instance.pairs) pairs.push_back({p.source, p.target});
  Json j = {{"num_vertices", instance.graph.num_vertices()},
            {"arcs", arcs},
            {"pairs", pairs},
            {"Q", coo(instance.cost)}};
  if (!provenance.is_null()) j["provenance"] = provenance;
  return j;
}

Json reduced_to_json(const ReducedModel& reduced) {
  const FlowModel& m = reduced.model;
  Json arcs = Json::array();
  for (const auto& a : m.arcs)
    arcs.push_back({{"union_arc", a.union_arc}, {"copy", a.copy}, {"tail", a.tail}, {"head", a.head}});
  Json rows = Json::array();
  for (const auto& v : m.vertices) rows.push_back({v.copy, v.vertex});
  Json a_coo = Json::array();
  for (int e = 0; e < m.num_arcs(); ++e) {
    a_coo.push_back({m.tail_row[e], e, 1});
    a_coo.push_back({m.head_row[e], e, -1});
  }
  Json b = Json::array();
  for (Eigen::Index r = 0; r < m.supply.size(); ++r) b.push_back(std::lround(m.supply(r)));
  Json c = Json::array();
  for (Eigen::Index e = 0; e < m.linear.size(); ++e) c.push_back(m.linear(e));
  Json conflicts = Json::array();
  for (const auto& [p, q] : m.conflicts.pairs()) conflicts.push_back({p, q});
  return {{"kind", "reduced_model"},
          {"k", m.k},
          {"base_vertices", m.base_vertices},
          {"union_arc_count", reduced.union_arcs},
          {"arcs", arcs},
          {"vertices", rows},
          {"A", a_coo},
          {"b", b},
          {"Q", coo(m.quad)},
          {"c", c},
          {"kappa", m.constant},
          {"conflicts", conflicts},
          {"fixed_zero", reduced.fixed.fixed_zero},
          {"fixed_one", reduced.fixed.fixed_one}};
}

ReducedModel reduced_from_json(const Json& j) {
  if (get<std::string>(j, "kind") != "reduced_model") throw InvalidInput("not a reduced model file");
  ReducedModel r;
  FlowModel& m = r.model;
  m.k = get<int>(j, "k");
  m.base_vertices = get<int>(j, "base_vertices");
  r.union_arcs = get<int>(j, "union_arc_count");
  for (const auto& a : get<Json>(j, "arcs"))
    m.arcs.push_back({get<int>(a, "copy"), get<int>(a, "tail"), get<int>(a, "head"), get<int>(a, "union_arc")});
  for (const auto& v : get<std::vector<std::array<int, 2>>>(j, "vertices")) m.vertices.push_back({v[0], v[1]});
  const auto b = get<std::vector<double>>(j, "b");
  if (b.size() != m.vertices.size()) throw InvalidInput("b does not match the vertex rows");
  m.supply = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  const int n = m.num_arcs();
  m.quad = matrix_from_json(get<Json>(j, "Q"), n);
  const auto c = get<std::vector<double>>(j, "c");
  if (static_cast<int>(c.size()) != n) throw InvalidInput("c does not match the arc count");
  m.linear = Eigen::Map<const Eigen::VectorXd>(c.data(), n);
  m.constant = get<double>(j, "kappa");
  std::vector<std::pair<ArcId, ArcId>> conflicts;
  for (const auto& p : get<std::vector<std::array<int, 2>>>(j, "conflicts")) {
    if (p[0] < 0 || p[1] < 0 || p[0] >= n || p[1] >= n) throw InvalidInput("conflict out of range");
    conflicts.emplace_back(p[0], p[1]);
  }
  m.conflicts = ConflictSet(n, std::move(conflicts));
  m.index_rows();
  r.fixed.fixed_zero = get<std::vector<ArcId>>(j, "fixed_zero");
  r.fixed.fixed_one = get<std::vector<ArcId>>(j, "fixed_one");
  r.reduced_index.assign(r.union_arcs, -1);
  for (int e = 0; e < n; ++e) {
    const ArcId u = m.arcs[e].union_arc;
    if (u < 0 || u >= r.union_arcs) throw InvalidInput("union arc id out of range");
    r.reduced_index[u] = e;
  }
  for (ArcId e : r.fixed.fixed_one)
    if (e < 0 || e >= r.union_arcs) throw InvalidInput("fixed arc out of range");
  return r;
}

Json result_to_json(const BnbResult& result, const ReducedModel& reduced) {
  Json arcs = Json::array();
  if (!result.incumbent.empty() || std::isfinite(result.incumbent_value)) {
    const std::vector<int> x = reduced.lift(result.incumbent);
    for (std::size_t e = 0; e < x.size(); ++e)
      if (x[e]) arcs.push_back(e);
  }
  return {{"status", to_string(result.status)},
          {"incumbent_value", number_or_null(result.incumbent_value)},
          {"lower_bound", number_or_null(result.lower_bound)},
          {"gap", number_or_null(result.gap)},
          {"nodes", result.nodes},
          {"time_s", result.time_s},
          {"incumbent_arcs", arcs}};
}

Json certificate_to_json(const SlaterCertificate& cert) {
  Json w = Json::array();
  for (Eigen::Index i = 0; i < cert.w.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < cert.w.cols(); ++j) row.push_back(cert.w(i, j));
    w.push_back(row);
  }
  Json out = {{"valid", cert.valid},
              {"residual", cert.residual},
              {"z_e0", cert.z_e0},
              {"min_eig_W", cert.min_eig_w},
              {"W", w}};
  if (!cert.valid) out["violation"] = cert.violation;
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace qkvdp
