#include "mrproj/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mrproj/errors.hpp"

namespace mrproj {
namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long long to_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_parse_error(line, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_parse_error(line, "expected a nonnegative integer, got '" + v + "'");
  }
}

double to_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_parse_error(line, "expected a finite number, got '" + v + "'");
  }
}

bool known_generator(const std::string& g) {
  return g == "box" || g == "steps" || g == "bumps" || g == "spikes" ||
         g == "bandlimited";
}

}  // namespace

bool parse_dyadic(const std::string& s, double& out) {
  const std::string v = trim(s);
  if (v.empty()) return false;
  const std::size_t slash = v.find('/');
  if (slash != std::string::npos) {
    try {
      std::size_t pos = 0;
      const long long num = std::stoll(v.substr(0, slash), &pos);
      if (pos != slash) return false;
      const std::string den_s = v.substr(slash + 1);
      const long long den = std::stoll(den_s, &pos);
      if (pos != den_s.size()) return false;
      if (den <= 0 || (den & (den - 1)) != 0) return false;
      out = static_cast<double>(num) / static_cast<double>(den);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }
  // Integer or terminating decimal. The decimal a.b is dyadic exactly when
  // the reduced denominator 10^d / gcd is a power of two, i.e. 5^d divides
  // the scaled numerator; "0.1" and friends are rejected rather than
  // silently rounded.
  std::size_t i = 0;
  bool negative = false;
  if (i < v.size() && (v[i] == '+' || v[i] == '-')) negative = v[i++] == '-';
  std::int64_t num = 0;
  int digits = 0, frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < v.size(); ++i) {
    if (v[i] == '.') {
      if (seen_dot) return false;
      seen_dot = true;
    } else if (v[i] >= '0' && v[i] <= '9') {
      if (++digits > 18) return false;
      num = num * 10 + (v[i] - '0');
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      return false;
    }
  }
  if (!seen_digit) return false;
  std::int64_t den = 1;
  for (int k = 0; k < frac_digits; ++k) {
    if (num % 5 != 0) return false;
    num /= 5;
    den *= 2;
  }
  out = static_cast<double>(negative ? -num : num) / static_cast<double>(den);
  return true;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::map<std::string, int> scalar_line;  // first occurrence of scalar keys
  std::map<std::string, int> key_line;     // last occurrence of any key
  bool systems_explicit = false, p_explicit = false, corpus_explicit = false;
  bool have_box_lo = false, have_box_hi = false, have_k_cap = false;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw config_parse_error(line, "expected key = value");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) throw config_parse_error(line, "empty key");
    if (value.empty()) throw config_parse_error(line, "empty value for '" + key + "'");

    const bool list_key = key == "system" || key == "p" || key == "corpus" || key == "alpha";
    if (!list_key) {
      const auto [it, fresh] = scalar_line.emplace(key, line);
      if (!fresh)
        throw config_parse_error(
            line, "'" + key + "' already set on line " + std::to_string(it->second));
    }
    key_line[key] = line;

    if (key == "system") {
      if (!systems_explicit) cfg.systems.clear();
      systems_explicit = true;
      cfg.systems.push_back(value);
    } else if (key == "dim") {
      cfg.dim = static_cast<int>(to_int(value, line));
      if (cfg.dim < 1 || cfg.dim > 3)
        throw config_parse_error(line, "dim must be 1..3");
    } else if (key == "J") {
      cfg.J = static_cast<int>(to_int(value, line));
      if (cfg.J < 0 || cfg.J > 52)
        throw config_parse_error(line, "J must be in 0..52");
    } else if (key == "box_lo") {
      if (!parse_dyadic(value, cfg.box_lo))
        throw config_parse_error(line, "box_lo must be a dyadic rational");
      have_box_lo = true;
    } else if (key == "box_hi") {
      if (!parse_dyadic(value, cfg.box_hi))
        throw config_parse_error(line, "box_hi must be a dyadic rational");
      have_box_hi = true;
    } else if (key == "k_cap") {
      cfg.k_cap.clear();
      std::istringstream parts(value);
      std::string item;
      while (std::getline(parts, item, ','))
        cfg.k_cap.push_back(static_cast<int>(to_int(trim(item), line)));
      if (cfg.k_cap.empty()) throw config_parse_error(line, "k_cap must list scale caps");
      have_k_cap = true;
    } else if (key == "p") {
      if (!p_explicit) cfg.p_list.clear();
      p_explicit = true;
      const double p = to_double(value, line);
      if (!(p > 1.0))
        throw config_parse_error(line, "p must lie in (1, infinity)");
      cfg.p_list.push_back(p);
    } else if (key == "corpus") {
      if (!corpus_explicit) cfg.corpus.clear();
      corpus_explicit = true;
      if (!known_generator(value))
        throw config_parse_error(line, "unknown corpus generator '" + value + "'");
      cfg.corpus.push_back(value);
    } else if (key == "corpus_count") {
      cfg.corpus_count = static_cast<int>(to_int(value, line));
      // zero is legal: it resolves to an empty corpus, which subcommands
      // report as "no inputs" rather than rejecting at parse time
      if (cfg.corpus_count < 0) throw config_parse_error(line, "corpus_count must be >= 0");
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(to_int(value, line));
      if (cfg.trials < 1) throw config_parse_error(line, "trials must be >= 1");
    } else if (key == "seed") {
      cfg.seed = to_u64(value, line);
    } else if (key == "alpha") {
      const double a = to_double(value, line);
      if (!(a > 0.0)) throw config_parse_error(line, "alpha must be positive");
      cfg.alphas.push_back(a);
    } else if (key == "free_signs") {
      const long long v = to_int(value, line);
      if (v != 0 && v != 1) throw config_parse_error(line, "free_signs must be 0 or 1");
      cfg.free_signs = v == 1;
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      throw config_parse_error(line, "unknown key '" + key + "'");
    }
  }

  const auto line_of = [&key_line](const std::string& key) {
    const auto it = key_line.find(key);
    return it == key_line.end() ? 0 : it->second;
  };

  if (cfg.J < 0) throw config_parse_error(0, "missing required key: J");
  if (!have_box_lo || !have_box_hi)
    throw config_parse_error(0, "missing required keys: box_lo, box_hi");
  if (!(cfg.box_hi > cfg.box_lo))
    throw config_parse_error(line_of("box_hi"), "box_hi must exceed box_lo");
  const double scale = std::ldexp(1.0, cfg.J);
  if (cfg.box_lo * scale != std::floor(cfg.box_lo * scale))
    throw config_parse_error(line_of("box_lo"), "box_lo is not on the 2^-J lattice");
  if (cfg.box_hi * scale != std::floor(cfg.box_hi * scale))
    throw config_parse_error(line_of("box_hi"), "box_hi is not on the 2^-J lattice");

  const int cap = cfg.J - kAccuracyMargin;
  if (!have_k_cap) {
    if (cap < 0)
      throw config_parse_error(line_of("J"),
                               "J leaves no admissible scale (need J >= " +
                                   std::to_string(kAccuracyMargin) + ")");
    cfg.k_cap.assign(static_cast<std::size_t>(cfg.dim), cap);
  }
  if (static_cast<int>(cfg.k_cap.size()) != cfg.dim)
    throw config_parse_error(line_of("k_cap"), "k_cap needs one entry per axis");
  for (int k : cfg.k_cap)
    if (k < 0 || k > cap)
      throw config_parse_error(line_of("k_cap"),
                               "k_cap entries must lie in 0..J-" +
                                   std::to_string(kAccuracyMargin));

  if (cfg.systems.size() == 1 && cfg.dim > 1)
    cfg.systems.assign(static_cast<std::size_t>(cfg.dim), cfg.systems.front());
  if (static_cast<int>(cfg.systems.size()) != cfg.dim)
    throw config_parse_error(line_of("system"),
                             "system needs one entry (broadcast) or one per axis");
  if (cfg.out_dir.empty())
    throw config_parse_error(line_of("out_dir"), "out_dir must not be empty");
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_parse_error(0, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mrproj
