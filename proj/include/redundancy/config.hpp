#pragma once

// Flat key = value experiment configuration. Lines starting with '#' are comments.
// Recognised keys: lambda, n, m, d, k, policy, removal, horizon, warmup, probe_rate,
// seeds, t_max, step, grid_step, out_dir. `m` and `policy` accept comma lists; `m` also
// accepts an inclusive range such as 2..6. `seeds` is the number of replications.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "meanfield.hpp"
#include "queue_sim.hpp"
#include "table.hpp"

namespace redundancy {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_int(std::string_view text, const std::string& key) {
  text = trim(text);
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError("not an integer: '" + std::string(text) + "'", key);
  return v;
}

inline std::vector<int> parse_int_list(std::string_view text, const std::string& key) {
  text = trim(text);
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = parse_int<int>(text.substr(0, dots), key);
    const int hi = parse_int<int>(text.substr(dots + 2), key);
    if (hi < lo) throw ValidationError("empty range '" + std::string(text) + "'", key);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(parse_int<int>(part, key));
  return out;
}

inline bool parse_bool(std::string_view text, const std::string& key) {
  text = trim(text);
  if (text == "on" || text == "true" || text == "1" || text == "yes") return true;
  if (text == "off" || text == "false" || text == "0" || text == "no") return false;
  throw ValidationError("expected on/off, got '" + std::string(text) + "'", key);
}

inline Policy parse_policy(std::string_view text) {
  text = trim(text);
  if (text == "mds") return Policy::Mds;
  if (text == "replication" || text == "rep") return Policy::Replication;
  throw ValidationError("unknown policy '" + std::string(text) + "'", "policy");
}

}  // namespace detail

struct ExperimentConfig {
  double lambda = 0.5;
  int n = 3;
  std::vector<int> m{3};
  int d = 3;
  int k = 1000;
  std::vector<Policy> policies{Policy::Mds};
  bool removal = true;
  std::uint64_t horizon = 200000;
  std::uint64_t warmup = 10000;
  double probe_rate = 0.1;
  int seeds = 1;
  double t_max = 15.0;
  double step = 1e-3;
  double grid_step = 0.05;
  std::string out_dir = ".";

  // Applies one key/value; unknown keys are rejected by name.
  void set(const std::string& key, std::string_view value) {
    if (key == "lambda") lambda = parse_double(detail::trim(value), key);
    else if (key == "n") n = detail::parse_int<int>(value, key);
    else if (key == "m") m = detail::parse_int_list(value, key);
    else if (key == "d") d = detail::parse_int<int>(value, key);
    else if (key == "k") k = detail::parse_int<int>(value, key);
    else if (key == "policy") {
      policies.clear();
      for (auto part : split(detail::trim(value), ',')) policies.push_back(detail::parse_policy(part));
    } else if (key == "removal") removal = detail::parse_bool(value, key);
    else if (key == "horizon") horizon = detail::parse_int<std::uint64_t>(value, key);
    else if (key == "warmup") warmup = detail::parse_int<std::uint64_t>(value, key);
    else if (key == "probe_rate") probe_rate = parse_double(detail::trim(value), key);
    else if (key == "seeds") seeds = detail::parse_int<int>(value, key);
    else if (key == "t_max") t_max = parse_double(detail::trim(value), key);
    else if (key == "step") step = parse_double(detail::trim(value), key);
    else if (key == "grid_step") grid_step = parse_double(detail::trim(value), key);
    else if (key == "out_dir") out_dir = std::string(detail::trim(value));
    else throw ValidationError("unknown configuration key", key);
  }

  static ExperimentConfig parse(std::istream& is) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      auto body = std::string_view(line);
      body = detail::trim(body.substr(0, body.find('#')));
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw ValidationError("expected key = value at line " + std::to_string(line_no), "config");
      cfg.set(std::string(detail::trim(body.substr(0, eq))), body.substr(eq + 1));
    }
    return cfg;
  }

  static ExperimentConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'", "config");
    return parse(in);
  }

  // One cell per (policy, m, replication seed). Replication cells ignore m.
  std::vector<SimConfig> cells(std::uint64_t base_seed) const {
    std::vector<SimConfig> out;
    for (Policy policy : policies) {
      const std::vector<int> ms = policy == Policy::Mds ? m : std::vector<int>{m.front()};
      for (int mm : ms)
        for (int s = 0; s < seeds; ++s) {
          SimConfig c;
          c.params = SystemParams{lambda, n, mm, d, k};
          c.policy = policy;
          c.removal = removal;
          c.horizon = horizon;
          c.warmup = warmup;
          c.probe_rate = probe_rate;
          c.seed = base_seed + static_cast<std::uint64_t>(s);
          out.push_back(c);
        }
    }
    return out;
  }

  // Every parameter combination is checked before anything runs.
  void validate() const {
    if (m.empty()) throw ValidationError("needs at least one value", "m");
    if (policies.empty()) throw ValidationError("needs at least one policy", "policy");
    if (seeds < 1) throw ValidationError("must be >= 1", "seeds");
    if (!(grid_step > 0.0)) throw ValidationError("must be > 0", "grid_step");
    for (const auto& c : cells(0)) c.validate();
    for (Policy policy : policies) {
      if (policy == Policy::Replication) {
        if (d < 2) throw ValidationError("replication theory needs d >= 2", "d");
        if (!(lambda < 1.0)) throw ValidationError("lambda >= 1 is an unstable regime", "lambda");
      } else {
        for (int mm : m) MeanFieldProblem{SystemParams{lambda, n, mm, d, k}, t_max, step}.validate();
      }
    }
  }
};

}  // namespace redundancy
