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


/* Quadratic k vertex-disjoint paths: reduction, SDP relaxation and
 * branch-and-bound behind a C interface.
 *
 * Every function returning qkvdp_status sets a thread-local message readable
 * through qkvdp_last_error() on failure. Strings returned through char** are
 * owned by the caller and released with qkvdp_string_free(). */

#ifndef QKVDP_QKVDP_H
#define QKVDP_QKVDP_H

#include <stddef.h>
#include <stdint.h>

#if defined(QKVDP_BUILDING_LIB)
#define QKVDP_API __attribute__((visibility("default")))
#else
#define QKVDP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qkvdp_status {
  QKVDP_OK = 0,
  QKVDP_ERR_INVALID_ARGUMENT = 1,
  QKVDP_ERR_INFEASIBLE = 2,
  QKVDP_ERR_NUMERICAL = 3,
  QKVDP_ERR_IO = 4,
  QKVDP_ERR_INTERNAL = 5
} qkvdp_status;

typedef enum qkvdp_solve_status {
  QKVDP_SOLVE_OPTIMAL = 0,
  QKVDP_SOLVE_TIME_LIMIT = 1,
  QKVDP_SOLVE_INFEASIBLE = 2
} qkvdp_solve_status;

typedef struct qkvdp_instance qkvdp_instance;
typedef struct qkvdp_model qkvdp_model;
typedef struct qkvdp_result qkvdp_result;

QKVDP_API const char* qkvdp_version(void);
QKVDP_API const char* qkvdp_last_error(void);
QKVDP_API void qkvdp_string_free(char* s);

/* ---- instances ---- */

typedef struct qkvdp_gen_config {
  int num_vertices; /* m_v = rows * cols, both >= 2 */
  int k;
  uint64_t seed;
  double density;   /* (0, 1] */
  double cost_lo;
  double cost_hi;
  int max_retries;
} qkvdp_gen_config;

QKVDP_API void qkvdp_gen_config_default(qkvdp_gen_config* cfg);
QKVDP_API qkvdp_status qkvdp_instance_generate(const qkvdp_gen_config* cfg, qkvdp_instance** out);
QKVDP_API qkvdp_status qkvdp_instance_load(const char* path, qkvdp_instance** out);
QKVDP_API qkvdp_status qkvdp_instance_from_json(const char* json, qkvdp_instance** out);
/* Includes a provenance block for generated instances. */
QKVDP_API qkvdp_status qkvdp_instance_to_json(const qkvdp_instance* inst, char** out);
/* Arcs of the base graph. */
QKVDP_API int qkvdp_instance_num_arcs(const qkvdp_instance* inst);
QKVDP_API int qkvdp_instance_num_pairs(const qkvdp_instance* inst);
QKVDP_API void qkvdp_instance_free(qkvdp_instance* inst);

/* ---- models (reduced or union) ---- */

typedef struct qkvdp_reduction_stats {
  int k;
  int base_vertices;
  int initial_arcs;
  int remaining_arcs;
  double time_s;
} qkvdp_reduction_stats;

/* Fixed-arc detection and the reduced model. QKVDP_ERR_INFEASIBLE when the
 * instance has no routing. */
QKVDP_API qkvdp_status qkvdp_reduce(const qkvdp_instance* inst, int threads, qkvdp_model** out);
/* The union model without any fixed arcs. */
QKVDP_API qkvdp_status qkvdp_model_unreduced(const qkvdp_instance* inst, qkvdp_model** out);
/* Loads a reduced-model file, or an instance file which is then reduced
 * (reduce != 0) or taken as is (reduce == 0). */
QKVDP_API qkvdp_status qkvdp_model_load(const char* path, int reduce, int threads,
                                        qkvdp_model** out);
QKVDP_API qkvdp_status qkvdp_model_to_json(const qkvdp_model* model, char** out);
QKVDP_API qkvdp_status qkvdp_model_stats(const qkvdp_model* model, qkvdp_reduction_stats* out);
QKVDP_API int qkvdp_model_num_arcs(const qkvdp_model* model);
/* Dimension r of the face, i.e. of ker([-b | A]). */
QKVDP_API qkvdp_status qkvdp_model_face_dim(const qkvdp_model* model, int* out);
QKVDP_API void qkvdp_model_free(qkvdp_model* model);

/* CSV "k,m_v,initial_arcs,remaining_arcs,time_s"; aggregate != 0 averages
 * per (k, m_v). */
QKVDP_API qkvdp_status qkvdp_stats_csv(const qkvdp_reduction_stats* rows, size_t count,
                                       int aggregate, char** out);

/* ---- solving ---- */

typedef struct qkvdp_solve_options {
  double time_limit;  /* seconds */
  double gap_tol;
  int threads;
  double admm_tol;
  int admm_max_iters;
} qkvdp_solve_options;

typedef struct qkvdp_result_summary {
  qkvdp_solve_status status;
  double incumbent_value; /* +inf without incumbent */
  double lower_bound;
  double gap;
  long nodes;
  double time_s;
} qkvdp_result_summary;

QKVDP_API void qkvdp_solve_options_default(qkvdp_solve_options* opts);
QKVDP_API qkvdp_status qkvdp_solve(const qkvdp_model* model, const qkvdp_solve_options* opts,
                                   qkvdp_result** out);
QKVDP_API qkvdp_status qkvdp_result_summary_get(const qkvdp_result* res, qkvdp_result_summary* out);
/* Incumbent as 0/1 over the union arcs; `len` must be the union arc count. */
QKVDP_API qkvdp_status qkvdp_result_incumbent(const qkvdp_result* res, int* x, size_t len);
QKVDP_API qkvdp_status qkvdp_result_to_json(const qkvdp_result* res, char** out);
QKVDP_API void qkvdp_result_free(qkvdp_result* res);

/* ---- certificates ---- */

/* Without `w_json` searches for an exposing vector; with it (a JSON array of
 * rows) verifies that matrix, aligning it to the model's basis first when it
 * fails as given. printed != 0 selects tolerances for matrices printed to
 * four decimals. The report is
 * {"found", "valid", "residual", "z_e0", "min_eig_W", "W", ...}. */
QKVDP_API qkvdp_status qkvdp_certify(const qkvdp_model* model, const char* w_json, int printed,
                                     char** report_json);

/* ---- benchmarks ---- */

/* Load, reduce and solve one instance file; returns a run record
 * {"instance", "arcs", "status", "gap", "time_s", "nodes", ...}. */
QKVDP_API qkvdp_status qkvdp_bench_run(const char* instance_path, const qkvdp_solve_options* opts,
                                       char** record_json);
/* Aggregates every *.json run record in `run_dir` into the bin table CSV
 * "bin,instances,solved_to_opt,avg_gap,avg_time_s". */
QKVDP_API qkvdp_status qkvdp_report(const char* run_dir, char** table_csv);

#ifdef __cplusplus
}
#endif

#endif /* QKVDP_QKVDP_H */
