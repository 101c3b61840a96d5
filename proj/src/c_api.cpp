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


#include "qkvdp/qkvdp.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "bnb.hpp"
#include "certificate.hpp"
#include "instance_gen.hpp"
#include "model_io.hpp"
#include "numerics.hpp"
#include "reduction.hpp"
#include "sdp_model.hpp"

struct qkvdp_instance {
  qkvdp::Instance inst;
  qkvdp::Json provenance;
};

struct qkvdp_model {
  qkvdp::ReducedModel reduced;
  qkvdp::ReductionStats stats;
};

struct qkvdp_result {
  qkvdp::BnbResult res;
  qkvdp::ReducedModel reduced;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
qkvdp_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return QKVDP_OK;
  } catch (const qkvdp::IoError& e) {
    g_last_error = e.what();
    return QKVDP_ERR_IO;
  } catch (const qkvdp::Infeasible& e) {
    g_last_error = e.what();
    return QKVDP_ERR_INFEASIBLE;
  } catch (const qkvdp::NumericalError& e) {
    g_last_error = e.what();
    return QKVDP_ERR_NUMERICAL;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return QKVDP_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return QKVDP_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QKVDP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QKVDP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QKVDP_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw qkvdp::InvalidInput(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qkvdp::BnbParams bnb_params(const qkvdp_solve_options* opts) {
  qkvdp_solve_options o;
  qkvdp_solve_options_default(&o);
  if (opts) o = *opts;
  require(o.time_limit > 0.0, "time limit must be positive");
  require(o.gap_tol >= 0.0, "gap tolerance must be non-negative");
  require(o.threads >= 1, "threads must be at least 1");
  qkvdp::BnbParams p;
  p.time_limit = o.time_limit;
  p.gap_tol = o.gap_tol;
  p.threads = o.threads;
  p.admm.tol = o.admm_tol;
  p.admm.max_iters = o.admm_max_iters;
  p.admm.validate();
  return p;
}

qkvdp_model* model_from_json(const qkvdp::Json& j, int reduce, int threads) {
  auto m = std::make_unique<qkvdp_model>();
  if (j.contains("kind")) {
    m->reduced = qkvdp::reduced_from_json(j);
    m->stats = {m->reduced.model.k, m->reduced.model.base_vertices, m->reduced.union_arcs,
                m->reduced.model.num_arcs(), 0.0};
  } else {
    const qkvdp::Instance inst = qkvdp::instance_from_json(j);
    if (reduce) {
      qkvdp::Reduction r = qkvdp::reduce(inst, {threads});
      m->reduced = std::move(r.reduced);
      m->stats = r.stats;
    } else {
      const qkvdp::UnionModel u = qkvdp::disjoint_union(inst);
      m->reduced = qkvdp::identity_reduction(u);
      m->stats = qkvdp::reduction_stats(u, m->reduced, 0.0);
    }
  }
  return m.release();
}

}  // namespace

extern "C" {

const char* qkvdp_version(void) { return "0.1.0"; }

const char* qkvdp_last_error(void) { return g_last_error.c_str(); }

void qkvdp_string_free(char* s) { std::free(s); }

void qkvdp_gen_config_default(qkvdp_gen_config* cfg) {
  if (!cfg) return;
  const qkvdp::GenConfig d;
  *cfg = {d.num_vertices, d.k, d.seed, d.density, d.cost_lo, d.cost_hi, d.max_retries};
}

qkvdp_status qkvdp_instance_generate(const qkvdp_gen_config* cfg, qkvdp_instance** out) {
  return guard([&] {
    require(cfg && out, "null argument");
    qkvdp::GenConfig c;
    c.num_vertices = cfg->num_vertices;
    c.k = cfg->k;
    c.seed = cfg->seed;
    c.density = cfg->density;
    c.cost_lo = cfg->cost_lo;
    c.cost_hi = cfg->cost_hi;
    c.max_retries = cfg->max_retries;
    qkvdp::GeneratedInstance g = qkvdp::generate(c);
    auto h = std::make_unique<qkvdp_instance>();
    h->inst = std::move(g.instance);
    h->provenance = {{"seed", c.seed},
                     {"config",
                      {{"m_v", c.num_vertices},
                       {"k", c.k},
                       {"density", c.density},
                       {"cost_range", {c.cost_lo, c.cost_hi}},
                       {"grid", {g.rows, g.cols}},
                       {"attempts", g.attempts}}},
                     {"generator_version", qkvdp::kGeneratorVersion}};
    *out = h.release();
  });
}

qkvdp_status qkvdp_instance_load(const char* path, qkvdp_instance** out) {
  return guard([&] {
    require(path && out, "null argument");
    const qkvdp::Json j = qkvdp::read_json_file(path);
    auto h = std::make_unique<qkvdp_instance>();
    h->inst = qkvdp::instance_from_json(j);
    if (j.contains("provenance")) h->provenance = j["provenance"];
    *out = h.release();
  });
}

qkvdp_status qkvdp_instance_from_json(const char* json, qkvdp_instance** out) {
  return guard([&] {
    require(json && out, "null argument");
    const qkvdp::Json j = qkvdp::Json::parse(json);
    auto h = std::make_unique<qkvdp_instance>();
    h->inst = qkvdp::instance_from_json(j);
    if (j.contains("provenance")) h->provenance = j["provenance"];
    *out = h.release();
  });
}

qkvdp_status qkvdp_instance_to_json(const qkvdp_instance* inst, char** out) {
  return guard([&] {
    require(inst && out, "null argument");
    *out = dup_string(qkvdp::instance_to_json(inst->inst, inst->provenance).dump(1) + "\n");
  });
}

int qkvdp_instance_num_arcs(const qkvdp_instance* inst) {
  return inst ? inst->inst.graph.num_arcs() : -1;
}

int qkvdp_instance_num_pairs(const qkvdp_instance* inst) { return inst ? inst->inst.k() : -1; }

void qkvdp_instance_free(qkvdp_instance* inst) { delete inst; }

qkvdp_status qkvdp_reduce(const qkvdp_instance* inst, int threads, qkvdp_model** out) {
  return guard([&] {
    require(inst && out, "null argument");
    require(threads >= 1, "threads must be at least 1");
    qkvdp::Reduction r = qkvdp::reduce(inst->inst, {threads});
    auto m = std::make_unique<qkvdp_model>();
    m->reduced = std::move(r.reduced);
    m->stats = r.stats;
    *out = m.release();
  });
}

qkvdp_status qkvdp_model_unreduced(const qkvdp_instance* inst, qkvdp_model** out) {
  return guard([&] {
    require(inst && out, "null argument");
    const qkvdp::UnionModel u = qkvdp::disjoint_union(inst->inst);
    auto m = std::make_unique<qkvdp_model>();
    m->reduced = qkvdp::identity_reduction(u);
    m->stats = qkvdp::reduction_stats(u, m->reduced, 0.0);
    *out = m.release();
  });
}

qkvdp_status qkvdp_model_load(const char* path, int reduce, int threads, qkvdp_model** out) {
  return guard([&] {
    require(path && out, "null argument");
    require(threads >= 1, "threads must be at least 1");
    *out = model_from_json(qkvdp::read_json_file(path), reduce, threads);
  });
}

qkvdp_status qkvdp_model_to_json(const qkvdp_model* model, char** out) {
  return guard([&] {
    require(model && out, "null argument");
    *out = dup_string(qkvdp::reduced_to_json(model->reduced).dump(1) + "\n");
  });
}

qkvdp_status qkvdp_model_stats(const qkvdp_model* model, qkvdp_reduction_stats* out) {
  return guard([&] {
    require(model && out, "null argument");
    const auto& s = model->stats;
    *out = {s.k, s.base_vertices, s.initial_arcs, s.remaining_arcs, s.time_s};
  });
}

int qkvdp_model_num_arcs(const qkvdp_model* model) {
  return model ? model->reduced.model.num_arcs() : -1;
}

qkvdp_status qkvdp_model_face_dim(const qkvdp_model* model, int* out) {
  return guard([&] {
    require(model && out, "null argument");
    *out = qkvdp::build_sdp(model->reduced.model).face_dim();
  });
}

void qkvdp_model_free(qkvdp_model* model) { delete model; }

qkvdp_status qkvdp_stats_csv(const qkvdp_reduction_stats* rows, size_t count, int aggregate,
                             char** out) {
  return guard([&] {
    require(out && (rows || count == 0), "null argument");
    std::vector<qkvdp::ReductionStats> v;
    for (size_t i = 0; i < count; ++i)
      v.push_back({rows[i].k, rows[i].base_vertices, rows[i].initial_arcs, rows[i].remaining_arcs,
                   rows[i].time_s});
    std::ostringstream os;
    qkvdp::write_stats_csv(os, v, aggregate != 0);
    *out = dup_string(os.str());
  });
}

void qkvdp_solve_options_default(qkvdp_solve_options* opts) {
  if (!opts) return;
  const qkvdp::BnbParams p;
  *opts = {p.time_limit, p.gap_tol, p.threads, p.admm.tol, p.admm.max_iters};
}

qkvdp_status qkvdp_solve(const qkvdp_model* model, const qkvdp_solve_options* opts,
                         qkvdp_result** out) {
  return guard([&] {
    require(model && out, "null argument");
    const qkvdp::BnbParams params = bnb_params(opts);
    const qkvdp::SdpRelaxation sdp = qkvdp::build_sdp(model->reduced.model);
    auto r = std::make_unique<qkvdp_result>();
    r->res = qkvdp::solve_bnb(model->reduced.model, sdp, params);
    r->reduced = model->reduced;
    *out = r.release();
  });
}

qkvdp_status qkvdp_result_summary_get(const qkvdp_result* res, qkvdp_result_summary* out) {
  return guard([&] {
    require(res && out, "null argument");
    const qkvdp::BnbResult& b = res->res;
    qkvdp_solve_status st = QKVDP_SOLVE_OPTIMAL;
    if (b.status == qkvdp::BnbStatus::time_limit) st = QKVDP_SOLVE_TIME_LIMIT;
    if (b.status == qkvdp::BnbStatus::infeasible) st = QKVDP_SOLVE_INFEASIBLE;
    *out = {st, b.incumbent_value, b.lower_bound, b.gap, b.nodes, b.time_s};
  });
}

qkvdp_status qkvdp_result_incumbent(const qkvdp_result* res, int* x, size_t len) {
  return guard([&] {
    require(res && x, "null argument");
    require(len == static_cast<size_t>(res->reduced.union_arcs), "length must equal the union arc count");
    require(std::isfinite(res->res.incumbent_value), "no incumbent");
    const std::vector<int> full = res->reduced.lift(res->res.incumbent);
    std::copy(full.begin(), full.end(), x);
  });
}

qkvdp_status qkvdp_result_to_json(const qkvdp_result* res, char** out) {
  return guard([&] {
    require(res && out, "null argument");
    *out = dup_string(qkvdp::result_to_json(res->res, res->reduced).dump(1) + "\n");
  });
}

void qkvdp_result_free(qkvdp_result* res) { delete res; }

qkvdp_status qkvdp_certify(const qkvdp_model* model, const char* w_json, int printed,
                           char** report_json) {
  return guard([&] {
    require(model && report_json, "null argument");
    const qkvdp::SdpRelaxation sdp = qkvdp::build_sdp(model->reduced.model);
    const auto tol = printed ? qkvdp::CertificateTolerances::printed()
                             : qkvdp::CertificateTolerances::strict();
    qkvdp::Json report;
    if (w_json) {
      const auto rows = qkvdp::Json::parse(w_json).get<std::vector<std::vector<double>>>();
      const int r = static_cast<int>(rows.size());
      Eigen::MatrixXd w(r, r);
      for (int i = 0; i < r; ++i) {
        require(static_cast<int>(rows[i].size()) == r, "W must be square");
        for (int j = 0; j < r; ++j) w(i, j) = rows[i][j];
      }
      qkvdp::SlaterCertificate cert = qkvdp::verify_exposing_vector(sdp, w, tol);
      bool aligned = false;
      double distance = 0.0;
      if (!cert.valid) {
        const qkvdp::AlignedCertificate al = qkvdp::align_exposing_vector(sdp, w);
        qkvdp::SlaterCertificate again = qkvdp::verify_exposing_vector(sdp, al.w, tol);
        if (again.valid) {
          cert = std::move(again);
          aligned = true;
          distance = al.distance;
        }
      }
      report = {{"found", true}};
      report.update(qkvdp::certificate_to_json(cert));
      report["aligned"] = aligned;
      if (aligned) report["alignment_distance"] = distance;
    } else if (auto cert = qkvdp::find_exposing_vector(sdp)) {
      report = {{"found", true}};
      report.update(qkvdp::certificate_to_json(*cert));
    } else {
      report = {{"found", false}, {"valid", false}};
    }
    report["face_dim"] = sdp.face_dim();
    *report_json = dup_string(report.dump(1) + "\n");
  });
}

qkvdp_status qkvdp_bench_run(const char* instance_path, const qkvdp_solve_options* opts,
                             char** record_json) {
  return guard([&] {
    require(instance_path && record_json, "null argument");
    const qkvdp::BnbParams params = bnb_params(opts);
    std::unique_ptr<qkvdp_model> m(
        model_from_json(qkvdp::read_json_file(instance_path), 1, params.threads));
    const qkvdp::SdpRelaxation sdp = qkvdp::build_sdp(m->reduced.model);
    const qkvdp::BnbResult res = qkvdp::solve_bnb(m->reduced.model, sdp, params);
    qkvdp::Json rec = {{"instance", std::filesystem::path(instance_path).filename().string()},
                       {"arcs", m->reduced.model.num_arcs()},
                       {"reduction_time_s", m->stats.time_s}};
    rec.update(qkvdp::result_to_json(res, m->reduced));
    *record_json = dup_string(rec.dump(1) + "\n");
  });
}

qkvdp_status qkvdp_report(const char* run_dir, char** table_csv) {
  return guard([&] {
    namespace fs = std::filesystem;
    require(run_dir && table_csv, "null argument");
    if (!fs::is_directory(run_dir)) throw qkvdp::IoError(std::string("not a directory: ") + run_dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(run_dir))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<qkvdp::RunRecord> runs;
    for (const auto& f : files) {
      const qkvdp::Json j = qkvdp::read_json_file(f.string());
      if (!j.is_object() || !j.contains("status") || !j.contains("arcs")) continue;
      qkvdp::RunRecord r;
      r.instance = j.value("instance", f.filename().string());
      r.arcs = j["arcs"].get<int>();
      r.status = j["status"].get<std::string>();
      r.gap = j["gap"].is_number() ? j["gap"].get<double>()
                                   : std::numeric_limits<double>::infinity();
      r.time_s = j.value("time_s", 0.0);
      r.nodes = j.value("nodes", 0L);
      runs.push_back(r);
    }
    std::ostringstream os;
    qkvdp::write_bin_table(os, qkvdp::aggregate_runs(runs));
    *table_csv = dup_string(os.str());
  });
}

}  // extern "C"
