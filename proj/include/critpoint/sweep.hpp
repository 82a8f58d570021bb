#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "critpoint/config.hpp"
#include "critpoint/objective.hpp"
#include "critpoint/oracle.hpp"

namespace critpoint {

// A benchmark grid: the cross product of epsilons, Hessian budgets and seeds
// over one objective family and one solve method.
struct SweepConfig {
  FamilyParams family;
  std::string method = "dispatch";  // dispatch | restarted | reduction
  std::vector<double> epsilons;
  std::vector<double> budgets;  // n_H values
  std::vector<std::uint64_t> seeds;
  OracleMode oracle_mode = OracleMode::exact;
  double oracle_delta = 0.0;
  // Constant-relaxation factor in (0, 1]; 1 = faithful mode.  Set from the
  // ini keys mode = faithful | practical and scale.
  double scale = 1.0;
  int threads = 0;  // 0 = CRITPOINT_THREADS env or 1

  static SweepConfig from_ini(const IniFile& ini);
};

// One CSV row.  wall_ms is written as 0 to keep sweep outputs byte-stable;
// the measured time is kept separately for console summaries.
struct RunRecord {
  long long run_id = 0;
  std::string family;
  int d = 0;
  std::string method;
  double epsilon = 0.0;
  double n_H = 0.0;
  std::string oracle_mode;
  double delta = 0.0;
  long long grad_queries = 0;
  long long hess_queries = 0;
  long long iterations = 0;
  double final_grad_norm = 0.0;
  double f_final = 0.0;
  std::string terminated;
  std::uint64_t seed = 0;
  double wall_measured_ms = 0.0;  // not serialized
};

// Instance and noise seeds for one run, derived from the family seed and the
// run seed so that every run is independently reproducible.
std::uint64_t instance_seed(std::uint64_t family_seed, std::uint64_t run_seed);

RunRecord run_single(const SweepConfig& cfg, double epsilon, double n_H,
                     std::uint64_t seed, long long run_id);

// Runs the whole grid (optionally on a small worker pool) and returns the
// records ordered by run_id regardless of scheduling.
std::vector<RunRecord> run_sweep(const SweepConfig& cfg);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& in);

// Median gradient queries per (epsilon, n_H) cell, one series per epsilon,
// with the n_H^{-1/2} guide anchored at the first cell.
void write_sweep_svg(const std::string& path, const std::vector<RunRecord>& records);

double median(std::vector<double> v);

}  // namespace critpoint
