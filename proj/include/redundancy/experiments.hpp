#pragma once

// Builds comparison tables from the analytic, mean-field and simulation layers, and reads
// and writes per-cell simulation sample files.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "ecdf.hpp"
#include "meanfield.hpp"
#include "orderstats.hpp"
#include "queue_sim.hpp"
#include "table.hpp"
#include "version.hpp"

namespace redundancy {

inline std::vector<double> parse_grid(std::string_view text, const std::string& flag) {
  std::vector<double> grid;
  for (auto part : split(text, ',')) grid.push_back(parse_double(part, flag));
  if (grid.empty()) throw ValidationError("empty grid", flag);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw ValidationError("times must be finite and >= 0", flag);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("times must be strictly increasing", flag);
  }
  return grid;
}

// Replication closed forms: the per-queue virtual tail, the single-job and batch tails,
// and the batch tail's large-t leading term n * P(R^{1,d} > t).
inline ComparisonTable analytic_table(const SystemParams& p, std::span<const double> grid) {
  detail::check_replication(p.lambda, p.d);
  if (p.n < 1) throw ValidationError("must be >= 1", "n");
  ComparisonTable table;
  table.add_metadata("command", "analytic");
  table.add_metadata("lambda", format_double(p.lambda));
  table.add_metadata("n", std::to_string(p.n));
  table.add_metadata("d", std::to_string(p.d));
  table.times.assign(grid.begin(), grid.end());
  std::vector<double> virt, single, batch, lead;
  const double dm1 = p.d - 1.0;
  for (double t : grid) {
    virt.push_back(std::exp(-detail::log_mix_exp(p.lambda, dm1 * t) / dm1));
    single.push_back(rep_single_tail(p, t));
    batch.push_back(rep_batch_tail(p, t));
    lead.push_back(std::min(1.0, p.n * single.back()));
  }
  const std::string d = std::to_string(p.d);
  table.add_column("v_d" + d, virt);
  table.add_column("rep_single_d" + d, single);
  table.add_column("rep_d" + d, batch);
  table.add_column("rep_lead_d" + d, lead);
  return table;
}

inline std::vector<double> sample_curve(const TailCurve& curve, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(curve.at(t));
  return out;
}

// Virtual and batch tails from the mean-field ODE, one pair of columns per m.
inline ComparisonTable meanfield_table(double lambda, int n, const std::vector<int>& ms, double t_max, double step,
                                       std::span<const double> grid) {
  ComparisonTable table;
  table.add_metadata("command", "meanfield");
  table.add_metadata("lambda", format_double(lambda));
  table.add_metadata("n", std::to_string(n));
  table.add_metadata("step", format_double(step));
  table.times.assign(grid.begin(), grid.end());
  for (int m : ms) {
    const auto sol = solve_virtual_tail(MeanFieldProblem{SystemParams{lambda, n, m, 1, n + m}, t_max, step});
    table.add_column("v_m" + std::to_string(m), sample_curve(sol.virtual_tail, grid));
    table.add_column("mds_m" + std::to_string(m), sample_curve(sol.batch_tail, grid));
  }
  return table;
}

// Batch of n = 3: replication with d = 3 against MDS with m = 2..6.
inline ComparisonTable fig1_table(double lambda, std::span<const double> grid, double step = 1e-3) {
  constexpr int n = 3, d = 3;
  if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("must lie in (0,1)", "lambda");
  const double horizon = std::max(grid.back(), 10.0 / 3.0);
  ComparisonTable table;
  table.add_metadata("command", "fig1");
  table.add_metadata("lambda", format_double(lambda));
  table.add_metadata("n", std::to_string(n));
  table.add_metadata("d", std::to_string(d));
  table.add_metadata("step", format_double(step));
  table.times.assign(grid.begin(), grid.end());
  std::vector<double> rep;
  for (double t : grid) rep.push_back(rep_batch_tail(lambda, n, d, t));
  table.add_column("rep_d3", rep);
  for (int m = 2; m <= 6; ++m) {
    const auto sol = solve_virtual_tail(MeanFieldProblem{SystemParams{lambda, n, m, d, n + m}, horizon, step});
    table.add_column("mds_m" + std::to_string(m), sample_curve(sol.batch_tail, grid));
  }
  return table;
}

inline std::vector<double> dense(const Column& c) {
  std::vector<double> out;
  for (const auto& v : c.values) out.push_back(v.value_or(std::nan("")));
  return out;
}

// Number of sign changes of a - b, ignoring points where |a - b| <= tol.
inline int count_crossings(std::span<const double> a, std::span<const double> b, double tol = 1e-12) {
  int crossings = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const double diff = a[i] - b[i];
    if (!(std::abs(diff) > tol)) continue;
    const int sign = diff > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++crossings;
    last_sign = sign;
  }
  return crossings;
}

// a <= b + tol at every point.
inline bool pointwise_below(std::span<const double> a, std::span<const double> b, double tol = 0.0) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] > b[i] + tol) return false;
  return true;
}

// Theory curves matching a simulation cell, in the mean-field limit.
struct CellTheory {
  std::function<double(double)> batch_tail;
  std::function<double(double)> virtual_tail;
  std::string batch_column;  // rep_d{d} or mds_m{m}
};

inline std::optional<CellTheory> theory_for(const SimConfig& cell, double t_max = 15.0, double step = 1e-3) {
  const auto& p = cell.params;
  if (!cell.removal || !(p.lambda < 1.0)) return std::nullopt;
  CellTheory out;
  if (cell.policy == Policy::Replication) {
    const double lambda = p.lambda;
    const int n = p.n, d = p.d;
    out.batch_column = "rep_d" + std::to_string(d);
    if (d == 1) {
      out.virtual_tail = [lambda](double t) { return std::exp(-(1.0 - lambda) * t); };
      out.batch_tail = [lambda, n](double t) { return max_of_n_tail(std::exp(-(1.0 - lambda) * t), n); };
    } else {
      out.virtual_tail = [lambda, d](double t) {
        return std::exp(-detail::log_mix_exp(lambda, (d - 1.0) * t) / (d - 1.0));
      };
      out.batch_tail = [lambda, n, d](double t) { return rep_batch_tail(lambda, n, d, t); };
    }
    return out;
  }
  if (p.n + p.m > kMaxCodeLength) return std::nullopt;
  // The right-hand side is at most -(1 - lambda) q, so P(V > t) <= exp(-(1 - lambda) t): solve far
  // enough that clamping past the horizon costs at most 1e-12.
  const double horizon = std::max({t_max, 10.0 / (p.m + 1), std::log(1e12) / (1.0 - p.lambda)});
  MeanFieldProblem problem{p, horizon, step};
  auto sol = std::make_shared<VirtualTailSolution>(solve_virtual_tail(problem));
  out.batch_column = "mds_m" + std::to_string(p.m);
  out.virtual_tail = [sol](double t) { return sol->virtual_tail.at(t); };
  out.batch_tail = [sol](double t) { return sol->batch_tail.at(t); };
  return out;
}

inline std::string cell_label(const SimConfig& c) {
  std::ostringstream os;
  if (c.policy == Policy::Mds)
    os << "mds_n" << c.params.n << "_m" << c.params.m;
  else
    os << "rep_n" << c.params.n << "_d" << c.params.d;
  if (!c.removal) os << "_noremoval";
  return os.str();
}

// Appends sim_<label>_lo/mid/hi: the empirical tail and its DKW band at confidence 1 - delta.
inline void add_sim_columns(ComparisonTable& table, const std::string& label, std::span<const double> sorted,
                            double delta) {
  std::vector<double> lo, mid, hi;
  for (double t : table.times) {
    const auto est = ecdf_tail(sorted, t, delta);
    lo.push_back(est.lower);
    mid.push_back(est.value);
    hi.push_back(est.upper);
  }
  table.add_column("sim_" + label + "_lo", lo);
  table.add_column("sim_" + label + "_mid", mid);
  table.add_column("sim_" + label + "_hi", hi);
}

struct CellReport {
  std::string label;
  std::size_t batch_samples = 0;
  std::size_t probe_samples = 0;
  double band = 0.0;  // DKW half-width for the batch samples
  std::optional<double> batch_sup;
  std::optional<double> probe_sup;
};

struct Comparison {
  ComparisonTable table;
  std::vector<CellReport> reports;
};

// Theory columns for every distinct policy setting plus simulation bands per cell.
inline Comparison compare(const std::vector<SimResult>& cells, std::span<const double> grid, double delta = 0.01,
                          double t_max = 15.0, double step = 1e-3) {
  Comparison out;
  out.table.add_metadata("command", "compare");
  if (!cells.empty()) out.table.add_metadata("lambda", format_double(cells.front().config.params.lambda));
  out.table.add_metadata("delta", format_double(delta));
  out.table.times.assign(grid.begin(), grid.end());
  for (const auto& cell : cells) {
    CellReport report;
    report.label = cell_label(cell.config);
    report.batch_samples = cell.batch_completion_samples.size();
    report.probe_samples = cell.probe_sojourn_samples.size();
    report.band = dkw_half_width(std::max<std::size_t>(report.batch_samples, 1), delta);
    if (auto theory = theory_for(cell.config, t_max, step)) {
      if (!out.table.find(theory->batch_column)) {
        std::vector<double> col;
        for (double t : grid) col.push_back(theory->batch_tail(t));
        out.table.add_column(theory->batch_column, col);
      }
      report.batch_sup = sup_distance(cell.batch_completion_samples, theory->batch_tail);
      if (cell.probe_sojourn_samples.size() >= kMinEcdfSamples)
        report.probe_sup = sup_distance(cell.probe_sojourn_samples, theory->virtual_tail);
    }
    std::string label = report.label;
    if (cell.seeds.size() == 1) label += "_s" + std::to_string(cell.seeds.front());
    if (!out.table.find("sim_" + label + "_mid"))
      add_sim_columns(out.table, label, cell.batch_completion_samples, delta);
    out.reports.push_back(std::move(report));
  }
  return out;
}

// Per-cell sample file: "# key=value" lines echoing the configuration and counts, then a
// two-column table of sorted samples (the shorter column padded with empty fields).
inline void write_samples(std::ostream& os, const SimResult& r) {
  const auto& c = r.config;
  os << "# policy=" << to_string(c.policy) << '\n'
     << "# lambda=" << format_double(c.params.lambda) << '\n'
     << "# n=" << c.params.n << "\n# m=" << c.params.m << "\n# d=" << c.params.d << "\n# k=" << c.params.k << '\n'
     << "# removal=" << (c.removal ? "on" : "off") << '\n'
     << "# horizon=" << c.horizon << "\n# warmup=" << c.warmup << '\n'
     << "# probe_rate=" << format_double(c.probe_rate) << '\n'
     << "# seed=" << c.seed << '\n';
  os << "# seeds=";
  for (std::size_t i = 0; i < r.seeds.size(); ++i) os << (i ? "," : "") << r.seeds[i];
  os << '\n';
  os << "# count.batches=" << r.counts.batches << "\n# count.arrivals=" << r.counts.arrivals
     << "\n# count.enqueued=" << r.counts.enqueued << "\n# count.served=" << r.counts.served
     << "\n# count.removed=" << r.counts.removed << "\n# count.preemptions=" << r.counts.preemptions
     << "\n# count.probes=" << r.counts.probes << "\n# count.events=" << r.counts.events << '\n';
  for (const auto& w : r.warnings) os << "# warning=" << w << '\n';
  os << "batch_completion,probe_sojourn\n";
  const std::size_t rows = std::max(r.batch_completion_samples.size(), r.probe_sojourn_samples.size());
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < r.batch_completion_samples.size()) os << format_double(r.batch_completion_samples[i]);
    os << ',';
    if (i < r.probe_sojourn_samples.size()) os << format_double(r.probe_sojourn_samples[i]);
    os << '\n';
  }
}

inline SimResult read_samples(std::istream& is) {
  SimResult r;
  std::map<std::string, std::string> meta;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "warning")
        r.warnings.push_back(value);
      else
        meta[key] = value;
      continue;
    }
    if (line.empty()) continue;
    if (!header) {
      if (line != "batch_completion,probe_sojourn") throw ValidationError("unexpected header '" + line + "'", "samples");
      header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw ValidationError("expected two fields", "samples");
    if (!fields[0].empty()) r.batch_completion_samples.push_back(parse_double(fields[0], "batch_completion"));
    if (!fields[1].empty()) r.probe_sojourn_samples.push_back(parse_double(fields[1], "probe_sojourn"));
  }
  if (!header) throw ValidationError("missing header", "samples");
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) throw ValidationError("missing metadata", key);
    return it->second;
  };
  auto& c = r.config;
  c.policy = detail::parse_policy(get("policy"));
  c.params.lambda = parse_double(get("lambda"), "lambda");
  c.params.n = detail::parse_int<int>(get("n"), "n");
  c.params.m = detail::parse_int<int>(get("m"), "m");
  c.params.d = detail::parse_int<int>(get("d"), "d");
  c.params.k = detail::parse_int<int>(get("k"), "k");
  c.removal = detail::parse_bool(get("removal"), "removal");
  c.horizon = detail::parse_int<std::uint64_t>(get("horizon"), "horizon");
  c.warmup = detail::parse_int<std::uint64_t>(get("warmup"), "warmup");
  c.probe_rate = parse_double(get("probe_rate"), "probe_rate");
  c.seed = detail::parse_int<std::uint64_t>(get("seed"), "seed");
  for (auto s : split(get("seeds"), ','))
    if (!s.empty()) r.seeds.push_back(detail::parse_int<std::uint64_t>(s, "seeds"));
  auto count = [&](const char* key) { return detail::parse_int<std::uint64_t>(get(std::string("count.") + key), key); };
  r.counts.batches = count("batches");
  r.counts.arrivals = count("arrivals");
  r.counts.enqueued = count("enqueued");
  r.counts.served = count("served");
  r.counts.removed = count("removed");
  r.counts.preemptions = count("preemptions");
  r.counts.probes = count("probes");
  r.counts.events = count("events");
  return r;
}

// Plain-text record of everything needed to rerun an experiment.
inline void write_manifest(std::ostream& os, const std::string& command,
                           const std::vector<std::pair<std::string, std::string>>& entries) {
  os << "command=" << command << '\n';
  for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
  os << "version=" << REDUNDANCY_VERSION << '\n';
#if defined(__VERSION__)
  os << "compiler=" << __VERSION__ << '\n';
#endif
}

}  // namespace redundancy
