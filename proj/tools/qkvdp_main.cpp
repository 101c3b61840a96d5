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


// qkvdp: generate, reduce, solve, certify, bench and report from the shell.
// Exit codes: 0 success/optimal, 1 error, 2 time limit, 3 infeasible, 64 usage.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkvdp/qkvdp.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitError = 1;
constexpr int kExitTimeLimit = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 64;

struct Failure {
  int code;
};

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out(s ? s : "");
  qkvdp_string_free(s);
  return out;
}

void check(qkvdp_status st, const std::string& what, int invalid_code = kExitError) {
  if (st == QKVDP_OK) return;
  std::cerr << "qkvdp: " << what << ": " << qkvdp_last_error() << "\n";
  if (st == QKVDP_ERR_INFEASIBLE) throw Failure{kExitInfeasible};
  if (st == QKVDP_ERR_INVALID_ARGUMENT) throw Failure{invalid_code};
  throw Failure{kExitError};
}

// Same temp-then-rename protocol as the library's writers.
void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out.flush()) {
      std::cerr << "qkvdp: cannot write " << tmp << "\n";
      throw Failure{kExitError};
    }
  }
  fs::rename(tmp, path);
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_file(out, content);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "qkvdp: cannot open " << path << "\n";
    throw Failure{kExitError};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SolveFlags {
  double time_limit = 3600.0;
  double tol = 1e-6;
  int threads = 1;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--time-limit", f.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "Relative optimality gap tolerance")->check(CLI::NonNegativeNumber);
  cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
}

qkvdp_solve_options to_options(const SolveFlags& f) {
  qkvdp_solve_options o;
  qkvdp_solve_options_default(&o);
  o.time_limit = f.time_limit;
  o.gap_tol = f.tol;
  o.threads = f.threads;
  return o;
}

int exit_for(qkvdp_solve_status st) {
  switch (st) {
    case QKVDP_SOLVE_OPTIMAL: return 0;
    case QKVDP_SOLVE_TIME_LIMIT: return kExitTimeLimit;
    case QKVDP_SOLVE_INFEASIBLE: return kExitInfeasible;
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic k vertex-disjoint paths: reduction, SDP bounds and branch-and-bound"};
  app.require_subcommand(1);

  // generate
  int mv = 0, k = 0, count = 1;
  std::uint64_t seed = 1;
  double density = 0.5;
  std::string gen_out = ".";
  auto* gen = app.add_subcommand("generate", "Write random grid instances");
  gen->add_option("--mv", mv, "Base vertex count (rows x cols)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", k, "Number of terminal pairs")->required()->check(CLI::PositiveNumber);
  gen->add_option("--count", count, "Instances to write")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Seed of the first instance; instance i uses seed + i");
  gen->add_option("--density", density, "Density of the cost matrix")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", gen_out, "Output directory");

  // reduce
  std::vector<std::string> red_inputs;
  std::string red_out = ".", red_stats;
  bool red_aggregate = false;
  int red_threads = 1;
  auto* red = app.add_subcommand("reduce", "Detect fixed arcs and write reduced models");
  red->add_option("inputs", red_inputs, "Instance files")->required()->check(CLI::ExistingFile);
  red->add_option("--out", red_out, "Output file (one input) or directory");
  red->add_option("--stats", red_stats, "Write reduction statistics CSV here");
  red->add_flag("--aggregate", red_aggregate, "Average the statistics per (k, m_v)");
  red->add_option("--threads", red_threads, "Worker threads")->check(CLI::PositiveNumber);

  // solve
  std::string solve_in, solve_out;
  bool solve_no_reduce = false;
  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve an instance or reduced model to optimality");
  solve->add_option("input", solve_in, "Instance or reduced-model file")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", solve_out, "Result JSON (default: stdout)");
  solve->add_flag("--no-reduce", solve_no_reduce, "Solve the union model of an instance as is");
  add_solve_flags(solve, solve_flags);

  // certify
  std::string cert_in, cert_w, cert_out;
  bool cert_printed = false, cert_no_reduce = false;
  auto* cert = app.add_subcommand("certify", "Find or verify an exposing vector (no Slater point)");
  cert->add_option("input", cert_in, "Instance or reduced-model file")->required()->check(CLI::ExistingFile);
  cert->add_option("--w", cert_w, "JSON file with a candidate W (array of rows)")->check(CLI::ExistingFile);
  cert->add_flag("--printed", cert_printed, "Tolerances for W printed to four decimals");
  cert->add_flag("--no-reduce", cert_no_reduce, "Use the union model of an instance as is");
  cert->add_option("--out", cert_out, "Report JSON (default: stdout)");

  // bench
  std::vector<std::string> bench_inputs;
  std::string bench_out;
  SolveFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Reduce and solve instances, one run record each");
  bench->add_option("inputs", bench_inputs, "Instance files")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "Run directory")->required();
  add_solve_flags(bench, bench_flags);

  // report
  std::string report_dir, report_out;
  auto* report = app.add_subcommand("report", "Aggregate run records by arc-count bin");
  report->add_option("run_dir", report_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", report_out, "Table CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      for (int i = 0; i < count; ++i) {
        qkvdp_gen_config cfg;
        qkvdp_gen_config_default(&cfg);
        cfg.num_vertices = mv;
        cfg.k = k;
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        cfg.density = density;
        qkvdp_instance* inst = nullptr;
        check(qkvdp_instance_generate(&cfg, &inst), "generate", kExitUsage);
        char* js = nullptr;
        const qkvdp_status st = qkvdp_instance_to_json(inst, &js);
        qkvdp_instance_free(inst);
        check(st, "serialize");
        const fs::path path = fs::path(gen_out) / ("qkvdp_mv" + std::to_string(mv) + "_k" +
                                                   std::to_string(k) + "_seed" +
                                                   std::to_string(cfg.seed) + ".json");
        write_file(path, take(js));
        std::cout << path.string() << "\n";
      }
      return 0;
    }

    if (*red) {
      std::vector<qkvdp_reduction_stats> stats;
      const bool single = red_inputs.size() == 1 && fs::path(red_out).extension() == ".json";
      for (const auto& in : red_inputs) {
        qkvdp_model* m = nullptr;
        check(qkvdp_model_load(in.c_str(), 1, red_threads, &m), in);
        qkvdp_reduction_stats s;
        qkvdp_model_stats(m, &s);
        stats.push_back(s);
        char* js = nullptr;
        const qkvdp_status st = qkvdp_model_to_json(m, &js);
        qkvdp_model_free(m);
        check(st, in);
        const fs::path path =
            single ? fs::path(red_out)
                   : fs::path(red_out) / (fs::path(in).stem().string() + ".reduced.json");
        write_file(path, take(js));
        std::cout << path.string() << ": " << s.initial_arcs << " -> " << s.remaining_arcs
                  << " arcs (" << s.time_s << " s)\n";
      }
      if (!red_stats.empty()) {
        char* csv = nullptr;
        check(qkvdp_stats_csv(stats.data(), stats.size(), red_aggregate ? 1 : 0, &csv), "stats");
        write_file(red_stats, take(csv));
      }
      return 0;
    }

    if (*solve) {
      qkvdp_model* m = nullptr;
      check(qkvdp_model_load(solve_in.c_str(), solve_no_reduce ? 0 : 1, solve_flags.threads, &m),
            solve_in);
      const qkvdp_solve_options opts = to_options(solve_flags);
      qkvdp_result* res = nullptr;
      const qkvdp_status st = qkvdp_solve(m, &opts, &res);
      qkvdp_model_free(m);
      check(st, "solve");
      qkvdp_result_summary sum;
      qkvdp_result_summary_get(res, &sum);
      char* js = nullptr;
      const qkvdp_status st2 = qkvdp_result_to_json(res, &js);
      qkvdp_result_free(res);
      check(st2, "serialize");
      emit(solve_out, take(js));
      return exit_for(sum.status);
    }

    if (*cert) {
      qkvdp_model* m = nullptr;
      check(qkvdp_model_load(cert_in.c_str(), cert_no_reduce ? 0 : 1, 1, &m), cert_in);
      std::string w;
      if (!cert_w.empty()) w = slurp(cert_w);
      char* js = nullptr;
      const qkvdp_status st =
          qkvdp_certify(m, cert_w.empty() ? nullptr : w.c_str(), cert_printed ? 1 : 0, &js);
      qkvdp_model_free(m);
      check(st, "certify");
      const std::string report_json = take(js);
      emit(cert_out, report_json);
      const auto parsed = nlohmann::json::parse(report_json);
      const bool valid = parsed.value("valid", false);
      const bool found = parsed.value("found", false);
      if (!found) {
        std::cerr << "no certificate found\n";
      } else {
        std::cerr << (valid ? "certificate found and verified\n" : "certificate rejected\n");
      }
      return 0;
    }

    if (*bench) {
      const qkvdp_solve_options opts = to_options(bench_flags);
      for (const auto& in : bench_inputs) {
        char* js = nullptr;
        check(qkvdp_bench_run(in.c_str(), &opts, &js), in);
        const fs::path path =
            fs::path(bench_out) / (fs::path(in).stem().string() + ".result.json");
        write_file(path, take(js));
        std::cerr << path.string() << "\n";
      }
      char* csv = nullptr;
      check(qkvdp_report(bench_out.c_str(), &csv), "report");
      std::cout << take(csv);
      return 0;
    }

    if (*report) {
      char* csv = nullptr;
      check(qkvdp_report(report_dir.c_str(), &csv), "report");
      emit(report_out, take(csv));
      return 0;
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "qkvdp: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
