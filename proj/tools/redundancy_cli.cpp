// Command-line front end: analytic tails, mean-field curves, simulation experiments,
// theory-versus-simulation comparison, the n = 3 figure, a codec demo and a self test.
//
// Exit codes: 0 success, 1 validation failure, 2 runtime or integration failure,
// 3 self-test failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "redundancy/redundancy.hpp"

namespace fs = std::filesystem;
using namespace redundancy;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitSelftest = 3;

// Config keys exposed as flags; values are applied through ExperimentConfig::set so errors
// name the key.
struct ConfigFlags {
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::vector<std::string>& keys) {
    for (const auto& key : keys) {
      std::string names = "--" + key;
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      if (dashed != key) names += ",--" + dashed;
      app->add_option(names, values[key], "config key '" + key + "'");
    }
  }

  void apply(ExperimentConfig& cfg) const {
    for (const auto& [key, value] : values)
      if (!value.empty()) cfg.set(key, value);
  }
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'", "input");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_table(const ComparisonTable& table, const std::string& out, const std::string& chart) {
  if (out.empty() || out == "-")
    write_csv(std::cout, table);
  else
    write_file(out, to_csv(table));
  if (!chart.empty()) write_file(chart, render_svg(table));
}

std::vector<double> grid_from(const std::string& explicit_grid, const ExperimentConfig& cfg) {
  if (!explicit_grid.empty()) return parse_grid(explicit_grid, "--grid");
  return uniform_grid(cfg.t_max, cfg.grid_step);
}

std::vector<std::pair<std::string, std::string>> manifest_entries(const ExperimentConfig& cfg) {
  std::ostringstream ms, ps;
  for (std::size_t i = 0; i < cfg.m.size(); ++i) ms << (i ? "," : "") << cfg.m[i];
  for (std::size_t i = 0; i < cfg.policies.size(); ++i) ps << (i ? "," : "") << to_string(cfg.policies[i]);
  return {{"lambda", format_double(cfg.lambda)},
          {"n", std::to_string(cfg.n)},
          {"m", ms.str()},
          {"d", std::to_string(cfg.d)},
          {"k", std::to_string(cfg.k)},
          {"policy", ps.str()},
          {"removal", cfg.removal ? "on" : "off"},
          {"horizon", std::to_string(cfg.horizon)},
          {"warmup", std::to_string(cfg.warmup)},
          {"probe_rate", format_double(cfg.probe_rate)},
          {"seeds", std::to_string(cfg.seeds)},
          {"t_max", format_double(cfg.t_max)},
          {"step", format_double(cfg.step)},
          {"grid_step", format_double(cfg.grid_step)}};
}

void print_reports(const std::vector<CellReport>& reports) {
  for (const auto& r : reports) {
    std::cout << std::left << std::setw(28) << r.label << " batches=" << r.batch_samples << " probes=" << r.probe_samples
              << " band=" << std::setprecision(4) << r.band;
    if (r.batch_sup) std::cout << " sup_batch=" << *r.batch_sup;
    if (r.probe_sup) std::cout << " sup_probe=" << *r.probe_sup;
    std::cout << '\n';
  }
}

// Runs cells on up to `jobs` threads. Failed cells are reported and left out.
struct CellOutcome {
  SimConfig config;
  std::optional<SimResult> result;
  std::string error;
};

std::vector<CellOutcome> run_cells(const std::vector<SimConfig>& cells, unsigned jobs, const fs::path& out_dir) {
  std::vector<CellOutcome> outcomes(cells.size());
  std::size_t next = 0;
  while (next < cells.size()) {
    std::vector<std::future<void>> running;
    for (unsigned j = 0; j < jobs && next < cells.size(); ++j, ++next) {
      running.push_back(std::async(std::launch::async, [&, i = next] {
        outcomes[i].config = cells[i];
        try {
          SimResult r = run(cells[i]);
          std::ostringstream ss;
          write_samples(ss, r);
          write_file(out_dir / ("cell_" + cell_label(cells[i]) + "_s" + std::to_string(cells[i].seed) + ".csv"),
                     ss.str());
          outcomes[i].result = std::move(r);
        } catch (const std::exception& e) {
          outcomes[i].error = e.what();
        }
      }));
    }
    for (auto& f : running) f.get();
  }
  return outcomes;
}

// Merges replications per cell label, compares them with theory and writes the comparison.
void write_comparison(const std::vector<SimResult>& results, const ExperimentConfig& cfg, double delta,
                      const fs::path& out_dir) {
  std::map<std::string, std::vector<SimResult>> by_label;
  std::vector<std::string> order;
  for (const auto& r : results) {
    const auto label = cell_label(r.config);
    if (!by_label.count(label)) order.push_back(label);
    by_label[label].push_back(r);
  }
  std::vector<SimResult> merged;
  for (const auto& label : order) merged.push_back(merge(by_label[label]));
  const auto grid = uniform_grid(cfg.t_max, cfg.grid_step);
  auto cmp = compare(merged, grid, delta, cfg.t_max, cfg.step);
  write_file(out_dir / "comparison.csv", to_csv(cmp.table));
  write_file(out_dir / "comparison.svg", render_svg(cmp.table));
  print_reports(cmp.reports);
}

int cmd_analytic(ExperimentConfig cfg, const ConfigFlags& flags, const std::string& grid_text, const std::string& out,
                 const std::string& chart) {
  flags.apply(cfg);
  const auto grid = grid_from(grid_text, cfg);
  SystemParams p{cfg.lambda, cfg.n, 0, cfg.d, std::max(cfg.n, cfg.d)};
  emit_table(analytic_table(p, grid), out, chart);
  return kExitOk;
}

int cmd_meanfield(ExperimentConfig cfg, const ConfigFlags& flags, const std::string& grid_text, const std::string& out,
                  const std::string& chart, bool allow_unstable) {
  flags.apply(cfg);
  const auto grid = grid_from(grid_text, cfg);
  bool warned = false;
  for (int m : cfg.m) {
    MeanFieldProblem problem{SystemParams{cfg.lambda, cfg.n, m, 1, cfg.n + m}, cfg.t_max, cfg.step};
    problem.validate();
    if (auto w = problem.load_warning()) {
      std::cerr << "warning: " << *w << '\n';
      warned = true;
    }
  }
  if (warned && !allow_unstable) {
    std::cerr << "error: load guard exceeded; pass --allow-unstable to continue\n";
    return kExitValidation;
  }
  emit_table(meanfield_table(cfg.lambda, cfg.n, cfg.m, cfg.t_max, cfg.step, grid), out, chart);
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const ConfigFlags& flags, std::uint64_t seed, double delta,
                 unsigned jobs) {
  ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
  flags.apply(cfg);
  cfg.validate();
  const fs::path out_dir = cfg.out_dir;
  const auto cells = cfg.cells(seed);
  std::vector<std::string> warned;
  for (const auto& c : cells) {
    const auto label = cell_label(c);
    if (std::find(warned.begin(), warned.end(), label) != warned.end()) continue;
    if (auto w = c.load_warning()) {
      std::cerr << "warning: " << label << ": " << *w << '\n';
      warned.push_back(label);
    }
  }

  const auto outcomes = run_cells(cells, std::max(1u, jobs), out_dir);
  std::vector<SimResult> ok;
  int failed = 0;
  for (const auto& o : outcomes) {
    if (o.result)
      ok.push_back(*o.result);
    else {
      ++failed;
      std::cerr << "error: cell " << cell_label(o.config) << " seed " << o.config.seed << ": " << o.error << '\n';
    }
  }
  auto entries = manifest_entries(cfg);
  entries.emplace_back("seed", std::to_string(seed));
  entries.emplace_back("delta", format_double(delta));
  entries.emplace_back("cells", std::to_string(cells.size()));
  entries.emplace_back("failed_cells", std::to_string(failed));
  std::ostringstream manifest;
  write_manifest(manifest, "simulate", entries);
  write_file(out_dir / "manifest.txt", manifest.str());
  if (!ok.empty()) write_comparison(ok, cfg, delta, out_dir);
  return failed ? kExitRuntime : kExitOk;
}

int cmd_compare(const std::vector<std::string>& files, ExperimentConfig cfg, const ConfigFlags& flags, double delta,
                const std::string& out, const std::string& chart) {
  flags.apply(cfg);
  std::vector<SimResult> results;
  for (const auto& f : files) {
    std::istringstream in(read_file(f));
    results.push_back(read_samples(in));
  }
  const auto grid = uniform_grid(cfg.t_max, cfg.grid_step);
  const auto cmp = compare(results, grid, delta, cfg.t_max, cfg.step);
  emit_table(cmp.table, out, chart);
  if (!out.empty() && out != "-") print_reports(cmp.reports);
  return kExitOk;
}

int cmd_fig1(ExperimentConfig cfg, const ConfigFlags& flags, bool simulate, std::uint64_t seed, unsigned jobs) {
  cfg.t_max = 8.0;
  cfg.grid_step = 0.02;
  cfg.n = 3;
  cfg.d = 3;
  flags.apply(cfg);
  const auto grid = uniform_grid(cfg.t_max, cfg.grid_step);
  auto table = fig1_table(cfg.lambda, grid, cfg.step);
  const auto rep = dense(*table.find("rep_d3"));
  const int crossings = count_crossings(dense(*table.find("mds_m3")), rep);
  std::cout << "lambda=" << format_double(cfg.lambda) << '\n';
  std::cout << "m=3 vs replication d=3: " << crossings << " crossing(s)\n";
  for (int m = 2; m <= 6; ++m)
    std::cout << "m=" << m << " below replication everywhere: "
              << (pointwise_below(dense(*table.find("mds_m" + std::to_string(m))), rep) ? "yes" : "no") << '\n';

  const fs::path out_dir = cfg.out_dir;
  if (simulate) {
    std::vector<SimConfig> cells;
    SimConfig base;
    base.params = SystemParams{cfg.lambda, 3, 0, 3, cfg.k};
    base.horizon = cfg.horizon;
    base.warmup = cfg.warmup;
    base.probe_rate = 0.0;
    base.seed = seed;
    base.policy = Policy::Replication;
    cells.push_back(base);
    base.policy = Policy::Mds;
    for (int m = 2; m <= 6; ++m) {
      base.params.m = m;
      cells.push_back(base);
    }
    for (const auto& c : cells) c.validate();
    for (const auto& o : run_cells(cells, std::max(1u, jobs), out_dir)) {
      if (!o.result) throw std::runtime_error("cell " + cell_label(o.config) + ": " + o.error);
      add_sim_columns(table, cell_label(o.config), o.result->batch_completion_samples, 0.01);
    }
  }
  write_file(out_dir / "fig1.csv", to_csv(table));
  write_file(out_dir / "fig1.svg", render_svg(table));
  auto entries = manifest_entries(cfg);
  entries.emplace_back("simulate", simulate ? "on" : "off");
  if (simulate) entries.emplace_back("seed", std::to_string(seed));
  std::ostringstream manifest;
  write_manifest(manifest, "fig1", entries);
  write_file(out_dir / "manifest.txt", manifest.str());
  return kExitOk;
}

template <typename Field>
int codec_demo(int n, int m, CodingScheme scheme, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::vector<std::uint8_t>> jobs(static_cast<std::size_t>(n), std::vector<std::uint8_t>(size));
  for (auto& j : jobs)
    for (auto& b : j) b = static_cast<std::uint8_t>(byte(rng));
  const auto coded = encode<Field>(jobs, m, scheme, seed);

  // Keep a random n of the n+m coded jobs, as if the others were still queued.
  std::vector<std::size_t> order(coded.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<CodedJob<Field>> received;
  for (int i = 0; i < n; ++i) received.push_back(coded[order[static_cast<std::size_t>(i)]]);

  std::cout << "field=GF(2^" << Field::bits << ") scheme=" << to_string(scheme) << " n=" << n << " m=" << m
            << " payload_bytes=" << size << '\n';
  for (const auto& c : coded) {
    std::cout << "  K" << c.index << " = [";
    for (std::size_t i = 0; i < c.coefficients.size(); ++i) std::cout << (i ? " " : "") << +c.coefficients[i];
    std::cout << "]\n";
  }
  try {
    const auto got = decode<Field>(received, n);
    std::cout << "decoded from K";
    for (std::size_t i = 0; i < got.used_indices.size(); ++i) std::cout << (i ? ",K" : "") << got.used_indices[i];
    const bool exact = got.payloads == jobs;
    std::cout << "\nbit-exact recovery: " << (exact ? "yes" : "no") << '\n';
    return exact ? kExitOk : kExitRuntime;
  } catch (const UnrecoverableError& e) {
    std::cout << "unrecoverable: " << e.what() << '\n';
    return kExitRuntime;
  }
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

// Fast subset of the acceptance criteria (theory, codec and a small simulation).
int cmd_selftest() {
  std::vector<Check> checks;
  {
    double worst_norm = 0.0, worst_alt = 0.0;
    for (int n = 1; n <= 25; ++n)
      for (int m = 0; n + m <= 25; ++m) {
        worst_norm = std::max(worst_norm, std::abs(order_stat_tail(n, m, 1.0) - 1.0));
        for (int i = 0; i <= 100; ++i)
          worst_alt = std::max(worst_alt, std::abs(order_stat_tail(n, m, i / 100.0) -
                                                   order_stat_tail_alternating(n, m, i / 100.0)));
      }
    std::ostringstream os;
    os << "norm_err=" << worst_norm << " alt_err=" << worst_alt;
    checks.push_back({"order-statistics identity", worst_norm <= 1e-12 && worst_alt <= 1e-10, os.str()});
  }
  {
    double worst = 0.0;
    for (int d : {2, 3, 4})
      for (double lambda : {0.3, 0.5, 0.7}) {
        const auto sol = solve_virtual_tail(MeanFieldProblem{SystemParams{lambda, 1, d - 1, d, d}, 15.0, 1e-3});
        for (std::size_t i = 0; i < sol.virtual_tail.size(); ++i) {
          const double t = sol.virtual_tail.times[i];
          const double exact = std::exp(-detail::log_mix_exp(lambda, (d - 1.0) * t) / (d - 1.0));
          worst = std::max(worst, std::abs(sol.virtual_tail.values[i] - exact));
        }
      }
    std::ostringstream os;
    os << "sup_err=" << worst;
    checks.push_back({"ode vs closed form", worst <= 1e-6, os.str()});
  }
  {
    bool pass = true;
    std::ostringstream os;
    for (int m : {2, 3, 6}) {
      const auto sol = solve_virtual_tail(MeanFieldProblem{SystemParams{0.5, 3, m, 3, 3 + m}, 15.0, 1e-3});
      const double v = tail_exponent(sol.virtual_tail, 10.0, 14.0);
      const double b = tail_exponent(sol.batch_tail, 10.0, 14.0);
      pass = pass && v >= -1.05 && v <= -0.95 && b <= -0.9 * (m + 1);
      os << "m=" << m << ":" << v << "/" << b << " ";
    }
    checks.push_back({"tail exponents", pass, os.str()});
  }
  {
    const auto grid = uniform_grid(15.0, 0.01);
    const auto t = fig1_table(0.5, grid);
    const auto rep = dense(*t.find("rep_d3"));
    bool pass = count_crossings(dense(*t.find("mds_m3")), rep) >= 1;
    for (int m = 4; m <= 6; ++m) pass = pass && pointwise_below(dense(*t.find("mds_m" + std::to_string(m))), rep);
    checks.push_back({"fig1 qualitative shape", pass, ""});
  }
  {
    bool pass = true;
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 4; ++n)
      for (int m = 0; m <= 4; ++m) {
        std::vector<std::vector<std::uint8_t>> jobs(static_cast<std::size_t>(n), std::vector<std::uint8_t>(16));
        for (auto& j : jobs)
          for (auto& b : j) b = static_cast<std::uint8_t>(rng());
        const auto coded = encode<GF256>(jobs, m, CodingScheme::SystematicVandermonde, rng());
        std::vector<bool> mask(coded.size(), false);
        std::fill(mask.begin(), mask.begin() + n, true);
        do {
          std::vector<CodedJob<GF256>> sub;
          for (std::size_t i = 0; i < coded.size(); ++i)
            if (mask[i]) sub.push_back(coded[i]);
          pass = pass && decode<GF256>(sub, n).payloads == jobs;
        } while (std::prev_permutation(mask.begin(), mask.end()));
      }
    checks.push_back({"codec round trip", pass, ""});
  }
  {
    SimConfig c;
    c.params = SystemParams{0.5, 1, 0, 1, 200};
    c.horizon = 300000;
    c.warmup = 10000;
    c.probe_rate = 0.5;
    c.seed = 1;
    const auto r = run(c);
    const double jm = mean(r.batch_completion_samples), pm = mean(r.probe_sojourn_samples);
    std::ostringstream os;
    os << "job_mean=" << jm << " probe_mean=" << pm;
    checks.push_back({"M/M/1 sanity", std::abs(jm - 2.0) <= 0.04 && std::abs(pm - 2.0) <= 0.04, os.str()});
  }
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << '\n';
    all = all && c.pass;
  }
  return all ? kExitOk : kExitSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replication-d versus MDS coding in multi-server queues"};
  app.require_subcommand(1);
  app.set_version_flag("--version", REDUNDANCY_VERSION);

  ExperimentConfig defaults;
  std::string grid_text, out, chart, config_path;
  bool allow_unstable = false;
  std::uint64_t seed = 0;
  double delta = 0.01;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  ConfigFlags analytic_flags, meanfield_flags, simulate_flags, compare_flags, fig1_flags;

  auto* analytic = app.add_subcommand("analytic", "replication closed-form tails on a time grid");
  analytic_flags.add(analytic, {"lambda", "n", "d", "t_max", "grid_step"});
  analytic->add_option("--grid", grid_text, "explicit comma-separated time grid");
  analytic->add_option("--out", out, "CSV output path (default stdout)");
  analytic->add_option("--chart", chart, "SVG chart output path");

  auto* meanfield = app.add_subcommand("meanfield", "mean-field virtual and MDS batch tails");
  meanfield_flags.add(meanfield, {"lambda", "n", "m", "t_max", "step", "grid_step"});
  meanfield->add_option("--grid", grid_text, "explicit comma-separated time grid");
  meanfield->add_option("--out", out, "CSV output path (default stdout)");
  meanfield->add_option("--chart", chart, "SVG chart output path");
  meanfield->add_flag("--allow-unstable", allow_unstable, "continue when lambda*(n+m)/n >= 1");

  auto* simulate = app.add_subcommand("simulate", "run simulation cells and compare with theory");
  simulate->add_option("--config", config_path, "key = value configuration file");
  simulate->add_option("--seed", seed, "base seed; replication i uses seed + i")->required();
  simulate_flags.add(simulate, {"lambda", "n", "m", "d", "k", "policy", "removal", "horizon", "warmup", "probe_rate",
                                "seeds", "t_max", "step", "grid_step", "out_dir"});
  simulate->add_option("--delta", delta, "ECDF band confidence is 1 - delta");
  simulate->add_option("--jobs", jobs, "parallel cells");

  std::vector<std::string> sample_files;
  auto* compare_cmd = app.add_subcommand("compare", "compare saved simulation samples with theory");
  compare_cmd->add_option("samples", sample_files, "cell sample files written by simulate")->required();
  compare_flags.add(compare_cmd, {"t_max", "step", "grid_step"});
  compare_cmd->add_option("--delta", delta, "ECDF band confidence is 1 - delta");
  compare_cmd->add_option("--out", out, "CSV output path (default stdout)");
  compare_cmd->add_option("--chart", chart, "SVG chart output path");

  bool fig1_simulate = false;
  auto* fig1 = app.add_subcommand("fig1", "n=3 batch: replication d=3 against MDS m=2..6");
  fig1_flags.add(fig1, {"lambda", "t_max", "step", "grid_step", "k", "horizon", "warmup", "out_dir"});
  fig1->add_flag("--simulate", fig1_simulate, "overlay simulated ECDFs");
  fig1->add_option("--seed", seed, "seed for --simulate");
  fig1->add_option("--jobs", jobs, "parallel cells");

  int codec_n = 4, codec_m = 2, codec_field = 8;
  std::size_t codec_size = 1024;
  std::uint64_t codec_seed = 1;
  std::string codec_scheme = "systematic-vandermonde";
  auto* codec = app.add_subcommand("codec-demo", "encode, drop m coded jobs, decode");
  codec->add_option("--n", codec_n, "original jobs");
  codec->add_option("--m", codec_m, "redundant coded jobs");
  codec->add_option("--scheme", codec_scheme, "systematic-vandermonde | random-linear")
      ->check(CLI::IsMember({"systematic-vandermonde", "random-linear"}));
  codec->add_option("--field", codec_field, "8 or 16 (bits per symbol)")->check(CLI::IsMember({8, 16}));
  codec->add_option("--size", codec_size, "payload bytes per job");
  codec->add_option("--seed", codec_seed, "seed for payloads, coefficients and erasures");

  auto* selftest = app.add_subcommand("selftest", "quick acceptance checks");

  std::string chart_csv;
  auto* chart_cmd = app.add_subcommand("chart", "render an SVG chart from a comparison CSV");
  chart_cmd->add_option("--csv", chart_csv, "input CSV")->required();
  chart_cmd->add_option("--out", out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*analytic) return cmd_analytic(defaults, analytic_flags, grid_text, out, chart);
    if (*meanfield) return cmd_meanfield(defaults, meanfield_flags, grid_text, out, chart, allow_unstable);
    if (*simulate) return cmd_simulate(config_path, simulate_flags, seed, delta, jobs);
    if (*compare_cmd) return cmd_compare(sample_files, defaults, compare_flags, delta, out, chart);
    if (*fig1) {
      if (fig1_simulate && fig1->count("--seed") == 0) throw ValidationError("required with --simulate", "seed");
      return cmd_fig1(defaults, fig1_flags, fig1_simulate, seed, jobs);
    }
    if (*codec) {
      const auto scheme =
          codec_scheme == "random-linear" ? CodingScheme::RandomLinear : CodingScheme::SystematicVandermonde;
      return codec_field == 8 ? codec_demo<GF256>(codec_n, codec_m, scheme, codec_size, codec_seed)
                              : codec_demo<GF65536>(codec_n, codec_m, scheme, codec_size, codec_seed);
    }
    if (*selftest) return cmd_selftest();
    if (*chart_cmd) {
      std::istringstream in(read_file(chart_csv));
      write_file(out, render_svg(read_csv(in)));
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
