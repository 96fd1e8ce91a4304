#pragma once

/* Run configuration for the command-line driver. Plain "key = value" text,
 * '#' comments, one setting per line. Parsing is strict: unknown keys are
 * rejected, every value must consume its whole field, and validation pins
 * each knob to its legal range before any work starts. Sampling tasks
 * (boxcount, holder) refuse to run without an explicit seed so that no
 * published number ever depends on a silent default.
 */

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "avedim/common.hpp"

namespace avedim {

struct RunConfig {
  std::string task;  // entropy | pressure | dim | boxcount | sweep | holder | verify

  // Model. "horseshoe" takes branch rates, "matrix" takes an explicit
  // transition table plus one generator matrix per symbol and bundle.
  std::string model_kind;
  std::vector<double> expansions;
  std::vector<double> contractions;
  double beta = 1.0;
  std::vector<double> expansions_b;  // second model for the holder task
  std::vector<double> contractions_b;
  int alphabet = 0;
  std::vector<int> transitions;  // row-major 0/1, alphabet x alphabet
  int bundle_dim = 1;
  std::vector<std::vector<double>> unstable_gen;  // row-major, one per symbol
  std::vector<std::vector<double>> stable_gen;

  // Knobs.
  int k_max = 4;
  double tol = 1e-10;
  int depth = 0;
  std::vector<double> scales;
  bool has_seed = false;
  std::uint64_t seed = 0;
  double sweep_from = 3.0;
  double sweep_to = 5.0;
  double sweep_step = 0.05;
  double t_value = 1.0;
  std::string cost = "norm";  // norm | conorm, for the pressure task
  int pairs = 2000;
  bool emit_points = false;
  std::string out_dir = ".";
  int threads = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_double(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw DomainError("cli: value for '" + key + "' is not a number: '" + v + "'");
  }
  if (used != v.size())
    throw DomainError("cli: trailing characters after number in '" + key + "': '" + v + "'");
  return x;
}

inline long long parse_int(const std::string& raw, const std::string& key) {
  const double x = parse_double(raw, key);
  const long long n = static_cast<long long>(x);
  if (static_cast<double>(n) != x)
    throw DomainError("cli: value for '" + key + "' must be an integer, got '" + trim(raw) + "'");
  return n;
}

inline std::vector<double> parse_list(const std::string& raw, const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::string v = trim(raw);
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t comma = v.find(',', start);
    if (comma == std::string::npos) comma = v.size();
    item = trim(v.substr(start, comma - start));
    if (item.empty()) throw DomainError("cli: empty element in list '" + key + "'");
    out.push_back(parse_double(item, key));
    start = comma + 1;
  }
  return out;
}

inline bool parse_bool(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DomainError("cli: value for '" + key + "' must be true or false, got '" + v + "'");
}

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "task",        "model",        "expansions", "contractions", "beta",
      "expansions_b", "contractions_b", "alphabet",  "transitions",  "bundle_dim",
      "k_max",       "tol",          "depth",      "scales",       "seed",
      "sweep_from",  "sweep_to",     "sweep_step", "t",            "cost",
      "pairs",       "emit_points",  "out",        "threads"};
  return keys;
}

}  // namespace detail

inline RunConfig parse_config_text(const std::string& text) {
  using detail::trim;
  RunConfig cfg;
  std::map<int, std::vector<double>> unstable_rows, stable_rows;

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("cli: line " + std::to_string(line_no) + " is not 'key = value': '" +
                        line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw DomainError("cli: missing key on line " + std::to_string(line_no));
    if (value.empty())
      throw DomainError("cli: missing value for '" + key + "' on line " + std::to_string(line_no));

    // Generator matrices use indexed keys, one matrix per symbol.
    if (key.rfind("unstable_", 0) == 0 || key.rfind("stable_", 0) == 0) {
      const bool is_unstable = key[0] == 'u';
      const std::string idx = key.substr(is_unstable ? 9 : 7);
      if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("cli: malformed generator key '" + key + "'");
      const int symbol = static_cast<int>(detail::parse_int(idx, key));
      auto& rows = is_unstable ? unstable_rows : stable_rows;
      if (rows.count(symbol)) throw DomainError("cli: duplicate generator key '" + key + "'");
      rows[symbol] = detail::parse_list(value, key);
      continue;
    }

    if (!detail::known_keys().count(key))
      throw DomainError("cli: unknown config key '" + key + "'");

    if (key == "task") cfg.task = value;
    else if (key == "model") cfg.model_kind = value;
    else if (key == "expansions") cfg.expansions = detail::parse_list(value, key);
    else if (key == "contractions") cfg.contractions = detail::parse_list(value, key);
    else if (key == "beta") cfg.beta = detail::parse_double(value, key);
    else if (key == "expansions_b") cfg.expansions_b = detail::parse_list(value, key);
    else if (key == "contractions_b") cfg.contractions_b = detail::parse_list(value, key);
    else if (key == "alphabet") cfg.alphabet = static_cast<int>(detail::parse_int(value, key));
    else if (key == "transitions") {
      for (double x : detail::parse_list(value, key)) {
        if (x != 0.0 && x != 1.0)
          throw DomainError("cli: 'transitions' entries must be 0 or 1");
        cfg.transitions.push_back(static_cast<int>(x));
      }
    } else if (key == "bundle_dim") cfg.bundle_dim = static_cast<int>(detail::parse_int(value, key));
    else if (key == "k_max") cfg.k_max = static_cast<int>(detail::parse_int(value, key));
    else if (key == "tol") cfg.tol = detail::parse_double(value, key);
    else if (key == "depth") cfg.depth = static_cast<int>(detail::parse_int(value, key));
    else if (key == "scales") cfg.scales = detail::parse_list(value, key);
    else if (key == "seed") {
      const long long s = detail::parse_int(value, key);
      if (s < 0) throw DomainError("cli: 'seed' must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(s);
      cfg.has_seed = true;
    } else if (key == "sweep_from") cfg.sweep_from = detail::parse_double(value, key);
    else if (key == "sweep_to") cfg.sweep_to = detail::parse_double(value, key);
    else if (key == "sweep_step") cfg.sweep_step = detail::parse_double(value, key);
    else if (key == "t") cfg.t_value = detail::parse_double(value, key);
    else if (key == "cost") cfg.cost = value;
    else if (key == "pairs") cfg.pairs = static_cast<int>(detail::parse_int(value, key));
    else if (key == "emit_points") cfg.emit_points = detail::parse_bool(value, key);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "threads") cfg.threads = static_cast<int>(detail::parse_int(value, key));
  }

  // Pack indexed generator matrices densely from symbol 0 upward.
  auto pack = [](const std::map<int, std::vector<double>>& rows, const char* side) {
    std::vector<std::vector<double>> out;
    int expect = 0;
    for (const auto& [symbol, entries] : rows) {
      if (symbol != expect)
        throw DomainError(std::string("cli: ") + side + " generator indices must start at 0 and be contiguous");
      out.push_back(entries);
      ++expect;
    }
    return out;
  };
  cfg.unstable_gen = pack(unstable_rows, "unstable");
  cfg.stable_gen = pack(stable_rows, "stable");
  return cfg;
}

inline void validate_config(const RunConfig& cfg) {
  static const std::set<std::string> tasks = {"entropy", "pressure", "dim",   "boxcount",
                                              "sweep",   "holder",   "verify"};
  if (!tasks.count(cfg.task))
    throw DomainError("cli: unknown task '" + cfg.task + "'");
  if (cfg.task == "verify") return;  // self-contained, ignores the model block

  if (cfg.model_kind != "horseshoe" && cfg.model_kind != "matrix")
    throw DomainError("cli: 'model' must be horseshoe or matrix, got '" + cfg.model_kind + "'");
  if (cfg.k_max < 0 || cfg.k_max > 30)
    throw DomainError("cli: 'k_max' must lie in [0, 30]");
  if (!(cfg.tol > 0))
    throw DomainError("cli: 'tol' must be positive");
  if (cfg.threads < 1)
    throw DomainError("cli: 'threads' must be at least 1");
  if (!(cfg.beta > 0 && cfg.beta <= 1))
    throw DomainError("cli: 'beta' must lie in (0, 1]");
  if (cfg.cost != "norm" && cfg.cost != "conorm")
    throw DomainError("cli: 'cost' must be norm or conorm");

  const bool samples = cfg.task == "boxcount" || cfg.task == "holder";
  if (samples && !cfg.has_seed)
    throw DomainError("cli: task '" + cfg.task + "' samples points; an explicit 'seed' is required");

  if (cfg.model_kind == "horseshoe") {
    // The sweep task supplies the expansion rates itself, one per grid point.
    if (cfg.task != "sweep" &&
        (cfg.expansions.empty() || cfg.expansions.size() != cfg.contractions.size()))
      throw DomainError("cli: horseshoe model needs matching 'expansions' and 'contractions' lists");
  } else {
    if (cfg.alphabet < 1) throw DomainError("cli: matrix model needs 'alphabet' >= 1");
    const std::size_t q = static_cast<std::size_t>(cfg.alphabet);
    if (cfg.transitions.size() != q * q)
      throw DomainError("cli: 'transitions' must have alphabet^2 entries");
    if (cfg.bundle_dim < 1) throw DomainError("cli: 'bundle_dim' must be at least 1");
    const std::size_t d = static_cast<std::size_t>(cfg.bundle_dim);
    auto check_side = [&](const std::vector<std::vector<double>>& gen, const char* side) {
      if (gen.size() != q)
        throw DomainError(std::string("cli: matrix model needs one ") + side +
                          " generator per symbol");
      for (const auto& g : gen)
        if (g.size() != d * d)
          throw DomainError(std::string("cli: each ") + side +
                            " generator needs bundle_dim^2 entries");
    };
    if (cfg.task == "dim") {
      check_side(cfg.unstable_gen, "unstable");
      check_side(cfg.stable_gen, "stable");
    } else if (cfg.task == "pressure") {
      check_side(cfg.unstable_gen, "unstable");
    }
  }

  if (cfg.task == "boxcount") {
    if (cfg.model_kind != "horseshoe")
      throw DomainError("cli: boxcount task needs a horseshoe model with planar geometry");
    if (cfg.depth < 1) throw DomainError("cli: 'depth' must be at least 1 for boxcount");
    if (cfg.scales.size() < 4)
      throw DomainError("cli: boxcount needs at least 4 'scales'");
  }
  if (cfg.task == "holder") {
    if (cfg.model_kind != "horseshoe")
      throw DomainError("cli: holder task compares two horseshoe models");
    if (cfg.expansions_b.empty() || cfg.expansions_b.size() != cfg.contractions_b.size())
      throw DomainError("cli: holder task needs 'expansions_b' and 'contractions_b'");
    if (cfg.depth < 2) throw DomainError("cli: 'depth' must be at least 2 for holder");
    if (cfg.pairs < 8) throw DomainError("cli: 'pairs' must be at least 8");
  }
  if (cfg.task == "sweep") {
    if (cfg.model_kind != "horseshoe")
      throw DomainError("cli: sweep task varies a horseshoe expansion rate");
    if (!(cfg.sweep_step > 0) || !(cfg.sweep_to >= cfg.sweep_from))
      throw DomainError("cli: sweep range needs sweep_from <= sweep_to and sweep_step > 0");
    if (cfg.contractions.empty())
      throw DomainError("cli: sweep task needs 'contractions' for the fixed stable rate");
  }
}

}  // namespace avedim
