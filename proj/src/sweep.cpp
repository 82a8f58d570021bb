#include "critpoint/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "critpoint/dispatch.hpp"
#include "critpoint/svg.hpp"

namespace critpoint {

SweepConfig SweepConfig::from_ini(const IniFile& ini) {
  SweepConfig cfg;
  cfg.family.name = ini.require("family", "name");
  cfg.family.d = static_cast<int>(ini.get_num("family", "d", 2));
  cfg.family.seed = static_cast<std::uint64_t>(ini.get_num("family", "seed", 0));
  const auto fam = ini.sections().find("family");
  if (fam != ini.sections().end()) {
    for (const auto& [key, value] : fam->second) {
      if (key == "name" || key == "d" || key == "seed") continue;
      if (key == "x0_dir")
        cfg.family.str[key] = value;
      else
        cfg.family.num[key] = parse_double(value);
    }
  }

  cfg.method = ini.get("sweep", "method", "dispatch");
  if (cfg.method != "dispatch" && cfg.method != "restarted" && cfg.method != "reduction")
    throw config_error("unknown method '" + cfg.method + "'");
  cfg.epsilons = parse_num_list(ini.require("sweep", "epsilon"));
  cfg.budgets = parse_num_list(ini.get("sweep", "n_H", "1"));
  cfg.seeds = parse_seed_list(ini.get("sweep", "seed", "0"));
  cfg.oracle_mode = parse_oracle_mode(ini.get("sweep", "oracle", "exact"));
  cfg.oracle_delta = ini.get_num("sweep", "oracle_delta", 0.0);

  const std::string mode = ini.get("sweep", "mode", "faithful");
  if (mode == "faithful") {
    cfg.scale = ini.get_num("sweep", "scale", 1.0);
    if (cfg.scale != 1.0)
      throw config_error("scale = " + ini.get("sweep", "scale", "") +
                         " requires mode = practical");
  } else if (mode == "practical") {
    cfg.scale = parse_double(ini.require("sweep", "scale"));
    if (!(cfg.scale > 0.0) || cfg.scale > 1.0)
      throw config_error("scale must lie in (0, 1], got " +
                         ini.get("sweep", "scale", ""));
  } else {
    throw config_error("unknown mode '" + mode + "'");
  }

  cfg.threads = static_cast<int>(ini.get_num("sweep", "threads", 0));
  return cfg;
}

std::uint64_t instance_seed(std::uint64_t family_seed, std::uint64_t run_seed) {
  std::uint64_t z = family_seed + 0x9e3779b97f4a7c15ULL * (run_seed + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RunRecord run_single(const SweepConfig& cfg, double epsilon, double n_H,
                     std::uint64_t seed, long long run_id) {
  FamilyParams fp = cfg.family;
  fp.seed = instance_seed(cfg.family.seed, seed);
  const auto obj = make_objective(fp);

  OracleConfig oc;
  oc.mode = cfg.oracle_mode;
  if (oc.mode == OracleMode::noisy || oc.mode == OracleMode::finite_difference)
    oc.delta = cfg.oracle_delta;
  oc.seed = seed;
  Oracle oracle(*obj, oc);

  const Vec x0 = obj->start_point();
  ProblemSpec spec;
  spec.eps = epsilon;
  spec.L2 = obj->l2();
  spec.Delta = obj->delta_upper(x0);
  spec.n_H = n_H;
  spec.delta = oracle.delta();
  spec.L1 = obj->l1();

  RunRecord rec;
  rec.run_id = run_id;
  rec.family = obj->name();
  rec.d = obj->dim();
  rec.epsilon = epsilon;
  rec.n_H = n_H;
  rec.oracle_mode = to_string(cfg.oracle_mode);
  rec.delta = oracle.delta();
  rec.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.method == "dispatch") {
    DispatchOptions dopt;
    dopt.scale = cfg.scale;
    const DispatchReport rep = solve(oracle, x0, spec, dopt);
    rec.method = "dispatch:" + to_string(rep.branch);
    rec.grad_queries = rep.grad_queries;
    rec.hess_queries = rep.hess_queries;
    rec.iterations = rep.branch == Branch::restarted
                         ? rep.restarted->outer_iterations
                         : rep.reduction->inner.outer_iterations;
    rec.final_grad_norm = rep.final_grad_norm;
    rec.f_final = rep.f_final;
    rec.terminated = to_string(rep.terminated);
  } else if (cfg.method == "restarted") {
    if (!spec.L1)
      throw invalid_parameter_error("restarted method needs a family with known L1");
    RestartedParams par;
    par.delta = spec.delta;
    par.eps = spec.eps;
    par.L1 = *spec.L1;
    par.L2 = spec.L2;
    par.Delta = spec.Delta;
    par.n_H = spec.n_H;
    par.scale = cfg.scale;
    const SolverReport rep = restarted_solve(oracle, x0, par);
    rec.method = "restarted";
    rec.grad_queries = rep.grad_queries;
    rec.hess_queries = rep.hess_queries;
    rec.iterations = rep.outer_iterations;
    rec.final_grad_norm = rep.final_grad_norm;
    rec.f_final = rep.f_final;
    rec.terminated = to_string(rep.terminated);
  } else {
    ReductionParams par;
    par.delta = spec.delta;
    par.eps = spec.eps;
    par.L2 = spec.L2;
    par.Delta = spec.Delta;
    par.n_H = spec.n_H;
    par.scale = cfg.scale;
    const ReductionReport rep = reduction_solve(oracle, x0, par);
    rec.method = "reduction";
    rec.grad_queries = rep.grad_queries;
    rec.hess_queries = rep.hess_queries;
    rec.iterations = rep.inner.outer_iterations;
    rec.final_grad_norm = rep.final_grad_norm;
    rec.f_final = rep.f_final;
    rec.terminated = to_string(rep.terminated);
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_measured_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
          .count();
  return rec;
}

std::vector<RunRecord> run_sweep(const SweepConfig& cfg) {
  struct Cell {
    double epsilon, n_H;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const double eps : cfg.epsilons)
    for (const double nh : cfg.budgets)
      for (const std::uint64_t s : cfg.seeds) cells.push_back({eps, nh, s});

  int threads = cfg.threads;
  if (threads <= 0) {
    const char* env = std::getenv("CRITPOINT_THREADS");
    threads = env ? std::atoi(env) : 1;
  }
  threads = std::max(1, std::min({threads, 64, static_cast<int>(cells.size())}));

  std::vector<RunRecord> records(cells.size());
  if (threads == 1) {
    for (size_t i = 0; i < cells.size(); ++i)
      records[i] = run_single(cfg, cells[i].epsilon, cells[i].n_H, cells[i].seed,
                              static_cast<long long>(i));
    return records;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        records[i] = run_single(cfg, cells[i].epsilon, cells[i].n_H, cells[i].seed,
                                static_cast<long long>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

const char* const kCsvHeader =
    "run_id,family,d,method,epsilon,n_H,oracle_mode,delta,grad_queries,hess_queries,"
    "iterations,final_grad_norm,f_final,terminated,wall_ms,seed";

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    char head[64];
    std::snprintf(head, sizeof head, "%lld,", r.run_id);
    out << head << r.family << "," << r.d << "," << r.method << "," << num(r.epsilon)
        << "," << num(r.n_H) << "," << r.oracle_mode << "," << num(r.delta) << ","
        << r.grad_queries << "," << r.hess_queries << "," << r.iterations << ","
        << num(r.final_grad_norm) << "," << num(r.f_final) << "," << r.terminated
        << ",0," << r.seed << "\n";
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw argument_error("empty CSV");
  if (trim(line) != kCsvHeader)
    throw argument_error("line 1: unexpected CSV header '" + line + "'");
  std::vector<RunRecord> out;
  long long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 16)
      throw argument_error("line " + std::to_string(lineno) + ": bad CSV row '" + line + "'");
    RunRecord r;
    r.run_id = std::atoll(f[0].c_str());
    r.family = f[1];
    r.d = std::atoi(f[2].c_str());
    r.method = f[3];
    r.epsilon = parse_double(f[4]);
    r.n_H = parse_double(f[5]);
    r.oracle_mode = f[6];
    r.delta = parse_double(f[7]);
    r.grad_queries = std::atoll(f[8].c_str());
    r.hess_queries = std::atoll(f[9].c_str());
    r.iterations = std::atoll(f[10].c_str());
    r.final_grad_norm = parse_double(f[11]);
    r.f_final = parse_double(f[12]);
    r.terminated = f[13];
    r.wall_measured_ms = parse_double(f[14]);
    r.seed = static_cast<std::uint64_t>(std::strtoull(f[15].c_str(), nullptr, 10));
    out.push_back(std::move(r));
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw argument_error("median of empty set");
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_sweep_svg(const std::string& path, const std::vector<RunRecord>& records) {
  if (records.empty()) throw argument_error("no records to plot");
  std::set<double> eps_set, nh_set;
  for (const auto& r : records) {
    eps_set.insert(r.epsilon);
    nh_set.insert(r.n_H);
  }
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                           "#9467bd", "#ff7f0e", "#8c564b"};
  SvgPlot plot;
  plot.title = "gradient queries vs hessian budget";
  plot.xlabel = "n_H";
  plot.ylabel = "median gradient queries";

  int color = 0;
  for (const double eps : eps_set) {
    SvgSeries series;
    char label[48];
    std::snprintf(label, sizeof label, "eps = %.3g", eps);
    series.label = label;
    series.color = palette[color++ % 6];
    for (const double nh : nh_set) {
      std::vector<double> vals;
      for (const auto& r : records)
        if (r.epsilon == eps && r.n_H == nh)
          vals.push_back(static_cast<double>(r.grad_queries));
      if (!vals.empty()) series.points.emplace_back(nh, median(vals));
    }
    if (!series.points.empty()) plot.series.push_back(std::move(series));
  }
  if (!plot.series.empty() && !plot.series.front().points.empty()) {
    SvgGuide guide;
    guide.slope = -0.5;
    guide.x0 = plot.series.front().points.front().first;
    guide.y0 = plot.series.front().points.front().second;
    guide.label = "slope -1/2";
    plot.guides.push_back(guide);
  }
  write_loglog_svg(path, plot);
}

}  // namespace critpoint
