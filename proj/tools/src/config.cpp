#include "ppprelay/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ppprelay/analytic.hpp"
#include "ppprelay/cli/csv.hpp"
#include "ppprelay/cli/presets.hpp"

namespace ppprelay::cli {

namespace {

constexpr std::array<const char*, 22> kValueKeys = {
    "mode",  "scheme", "region",  "sigma",   "rmax",    "lambda",  "snr",
    "snr-db", "K",     "alpha",   "s",       "rsd",     "trials",  "seed",
    "workers", "psi",  "epsilon", "output",  "abs-tol", "rel-tol", "max-subdivisions",
    "preset"};
constexpr std::array<const char*, 2> kFlagKeys = {"connection", "verify"};

const char* help_for(std::string_view key) {
  static const std::map<std::string_view, const char*> help = {
      {"mode", "simulate | analytic | asymptotic | ratio | diversity | optimize-k | figure"},
      {"scheme", "bulk | ps | both (default bulk)"},
      {"region", "disc | plane (default disc)"},
      {"sigma", "disc radius around the source (default 5)"},
      {"rmax", "sampling radius for Monte Carlo on the plane"},
      {"lambda", "relay density sweep (default 1)"},
      {"snr", "P_t/N0 sweep, linear (default 100)"},
      {"snr-db", "P_t/N0 sweep in dB"},
      {"K", "subcarrier counts (default 4)"},
      {"alpha", "path-loss exponents (default 2)"},
      {"s", "SNR threshold (default 1)"},
      {"rsd", "source-destination distance (default 5)"},
      {"trials", "Monte Carlo trials per point (default 1e5)"},
      {"seed", "random seed (default 1)"},
      {"workers", "worker threads (default 1)"},
      {"psi", "outage ceilings for optimize-k"},
      {"epsilon", "target outage ratios for the ratio mode"},
      {"output", "CSV path; a .meta sidecar is written next to it"},
      {"abs-tol", "quadrature absolute tolerance"},
      {"rel-tol", "quadrature relative tolerance"},
      {"max-subdivisions", "quadrature subdivision limit"},
      {"preset", "figure preset for --mode figure (fig2..fig8)"},
      {"connection", "add a p_connection = 1 - p_outage column"},
      {"verify", "check simulated rows against quadrature (simulate only)"},
  };
  const auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

using RawConfig = std::map<std::string, std::string>;

bool known_key(const std::string& key) {
  auto eq = [&](const char* k) { return key == k; };
  return std::any_of(kValueKeys.begin(), kValueKeys.end(), eq) ||
         std::any_of(kFlagKeys.begin(), kFlagKeys.end(), eq);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

void read_config_file(const std::string& path, RawConfig& raw, std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot read config file '" + path + "'");
    return;
  }
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string where = path + ":" + std::to_string(number) + ": ";
    if (eq == std::string::npos) {
      errors.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key == "config") {
      errors.push_back(where + "nested config files are not supported");
    } else if (!known_key(key)) {
      errors.push_back(where + "unknown key '" + key + "'");
    } else {
      raw[key] = value;
    }
  }
}

std::optional<double> to_double(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_uint(std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    // Accept integral scientific notation such as 1e5.
    const auto d = to_double(t);
    if (d && *d >= 0.0 && *d <= 1e18 && std::floor(*d) == *d) return static_cast<std::uint64_t>(*d);
    return std::nullopt;
  }
  return v;
}

class Builder {
 public:
  Builder(const RawConfig& raw, std::vector<std::string>& errors) : raw_(raw), errors_(errors) {}

  const std::string* get(const std::string& key) const {
    const auto it = raw_.find(key);
    return it == raw_.end() ? nullptr : &it->second;
  }

  void error(const std::string& key, const std::string& what) {
    errors_.push_back("--" + key + ": " + what);
  }

  void number(const std::string& key, double& out) {
    if (const auto* v = get(key)) {
      if (auto d = to_double(*v)) {
        out = *d;
      } else {
        error(key, "'" + *v + "' is not a number");
      }
    }
  }

  void unsigned_number(const std::string& key, std::uint64_t& out) {
    if (const auto* v = get(key)) {
      if (auto d = to_uint(*v)) {
        out = *d;
      } else {
        error(key, "'" + *v + "' is not a nonnegative integer");
      }
    }
  }

  void sweep(const std::string& key, std::vector<double>& out) {
    if (const auto* v = get(key)) {
      try {
        out = parse_sweep(*v);
      } catch (const ConfigurationError& e) {
        error(key, e.what());
      }
    }
  }

  void flag(const std::string& key, bool& out) {
    if (const auto* v = get(key)) {
      std::string s = *v;
      std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
      if (s == "true" || s == "1" || s == "yes" || s == "on" || s.empty()) {
        out = true;
      } else if (s == "false" || s == "0" || s == "no" || s == "off") {
        out = false;
      } else {
        error(key, "'" + *v + "' is not a boolean");
      }
    }
  }

 private:
  const RawConfig& raw_;
  std::vector<std::string>& errors_;
};

std::optional<Mode> parse_mode(const std::string& s) {
  for (Mode m : {Mode::simulate, Mode::analytic, Mode::asymptotic, Mode::ratio, Mode::diversity,
                 Mode::optimize_k, Mode::figure}) {
    if (s == mode_name(m)) return m;
  }
  return std::nullopt;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

void validate(const ExperimentConfig& c, std::vector<std::string>& errs) {
  auto err = [&](const std::string& key, const std::string& what) {
    errs.push_back("--" + key + ": " + what);
  };
  auto all = [](const std::vector<double>& v, auto pred) {
    return std::all_of(v.begin(), v.end(), pred);
  };
  if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) err("sigma", "disc radius must be > 0");
  if (c.rmax && !(*c.rmax > 0.0)) err("rmax", "truncation radius must be > 0");
  if (c.lambda.empty() || !all(c.lambda, [](double l) { return l >= 0.0 && std::isfinite(l); })) {
    err("lambda", "densities must be finite and >= 0");
  }
  if (c.snr.empty() || !all(c.snr, [](double x) { return x > 0.0 && std::isfinite(x); })) {
    err("snr", "P_t/N_0 must be finite and > 0");
  }
  if (c.alpha.empty() || !all(c.alpha, [](double a) { return a >= 2.0 && std::isfinite(a); })) {
    err("alpha", "path-loss exponent must be >= 2");
  }
  if (c.subcarriers.empty() ||
      !std::all_of(c.subcarriers.begin(), c.subcarriers.end(), [](int k) { return k >= 1; })) {
    err("K", "subcarrier counts must be integers >= 1");
  }
  if (c.scheme != SchemeChoice::bulk && c.run_mode != Mode::optimize_k &&
      std::any_of(c.subcarriers.begin(), c.subcarriers.end(),
                  [](int k) { return k > kMaxPerSubcarrierK; })) {
    err("K", "per-subcarrier evaluation supports K <= " + std::to_string(kMaxPerSubcarrierK));
  }
  if (!(c.threshold > 0.0) || !std::isfinite(c.threshold)) err("s", "threshold must be > 0");
  if (!(c.r_sd > 0.0) || !std::isfinite(c.r_sd)) err("rsd", "distance must be > 0");
  if (c.trials < 1) err("trials", "need at least one trial");
  if (c.workers < 1) err("workers", "need at least one worker");
  if (!all(c.psi, [](double p) { return p > 0.0 && p <= 1.0; })) {
    err("psi", "outage ceilings must lie in (0, 1]");
  }
  if (!all(c.epsilon, [](double e) { return e > 0.0 && e <= 1.0; })) {
    err("epsilon", "ratio targets must lie in (0, 1]");
  }
  if (!(c.quadrature.abs_tol > 0.0)) err("abs-tol", "must be > 0");
  if (!(c.quadrature.rel_tol > 0.0)) err("rel-tol", "must be > 0");
  if (c.quadrature.max_subdivisions < 1) err("max-subdivisions", "must be >= 1");

  switch (c.run_mode) {
    case Mode::asymptotic:
      if (c.region != RegionKind::disc) err("region", "asymptotic mode needs the disc region");
      if (!all(c.alpha, [](double a) { return a == 2.0 || a == 4.0 || a == 6.0; })) {
        err("alpha", "asymptotic mode supports alpha in {2, 4, 6}");
      }
      break;
    case Mode::optimize_k:
      if (c.scheme != SchemeChoice::bulk) err("scheme", "optimize-k supports bulk selection only");
      if (!all(c.lambda, [](double l) { return l > 0.0; })) {
        err("lambda", "optimize-k needs densities > 0");
      }
      break;
    case Mode::diversity:
      if (c.snr.size() < 2 || !std::is_sorted(c.snr.begin(), c.snr.end()) ||
          std::adjacent_find(c.snr.begin(), c.snr.end()) != c.snr.end()) {
        err("snr", "diversity mode needs at least two increasing P_t/N_0 values");
      }
      break;
    default:
      break;
  }
  if (c.verify && c.run_mode != Mode::simulate) err("verify", "only applies to simulate mode");
}

}  // namespace

std::string_view mode_name(Mode mode) noexcept {
  switch (mode) {
    case Mode::simulate: return "simulate";
    case Mode::analytic: return "analytic";
    case Mode::asymptotic: return "asymptotic";
    case Mode::ratio: return "ratio";
    case Mode::diversity: return "diversity";
    case Mode::optimize_k: return "optimize-k";
    case Mode::figure: return "figure";
  }
  return "?";
}

std::string_view scheme_choice_name(SchemeChoice scheme) noexcept {
  switch (scheme) {
    case SchemeChoice::bulk: return "bulk";
    case SchemeChoice::per_subcarrier: return "ps";
    case SchemeChoice::both: return "both";
  }
  return "?";
}

ConfigErrors::ConfigErrors(std::vector<std::string> messages)
    : ConfigurationError([&] {
        std::string all = "invalid configuration:";
        for (const auto& m : messages) all += "\n  " + m;
        return all;
      }()),
      messages_(std::move(messages)) {}

std::vector<double> parse_sweep(std::string_view text) {
  const std::string t = trim(text);
  if (t.rfind("lin:", 0) == 0 || t.rfind("log:", 0) == 0) {
    const bool log = t[1] == 'o';
    std::vector<std::string> parts;
    std::stringstream ss(t.substr(4));
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    const auto lo = parts.size() == 3 ? to_double(parts[0]) : std::nullopt;
    const auto hi = parts.size() == 3 ? to_double(parts[1]) : std::nullopt;
    const auto n = parts.size() == 3 ? to_uint(parts[2]) : std::nullopt;
    if (!lo || !hi || !n || *n < 1) {
      throw ConfigurationError("range '" + t + "' must look like " + t.substr(0, 3) + ":lo:hi:n");
    }
    if (log && !(*lo > 0.0 && *hi > 0.0)) {
      throw ConfigurationError("log range '" + t + "' needs positive ends");
    }
    std::vector<double> out;
    out.reserve(*n);
    for (std::uint64_t i = 0; i < *n; ++i) {
      const double f = *n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(*n - 1);
      out.push_back(log ? std::pow(10.0, std::log10(*lo) + f * (std::log10(*hi) - std::log10(*lo)))
                        : *lo + f * (*hi - *lo));
    }
    // Pin the end points exactly.
    out.front() = *lo;
    if (*n > 1) out.back() = *hi;
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) {
    const auto v = to_double(p);
    if (!v) throw ConfigurationError("'" + trim(p) + "' is not a number");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigurationError("empty value list");
  return out;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Outage, throughput and relay-selection analysis for PPP two-hop OFDM relays",
               "ppprelay"};
  std::map<std::string, std::string> cli_values;
  std::map<std::string, CLI::Option*> options;
  for (const char* key : kValueKeys) {
    options[key] = app.add_option(std::string("--") + key, cli_values[key], help_for(key));
  }
  for (const char* key : kFlagKeys) options[key] = app.add_flag(std::string("--") + key)->description(help_for(key));
  std::string config_path;
  app.add_option("--config", config_path,
                 "key = value file; command-line flags take precedence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigErrors({e.what()});
  }

  std::vector<std::string> errors;
  RawConfig raw;
  if (!config_path.empty()) read_config_file(config_path, raw, errors);
  for (const char* key : kValueKeys) {
    if (options[key]->count() > 0) raw[key] = cli_values[key];
  }
  for (const char* key : kFlagKeys) {
    if (options[key]->count() > 0) raw[key] = "true";
  }

  ExperimentConfig c;
  Builder b(raw, errors);
  if (const auto* m = b.get("mode")) {
    if (auto mode = parse_mode(*m)) {
      c.mode = c.run_mode = *mode;
    } else {
      b.error("mode", "unknown mode '" + *m + "'");
    }
  } else {
    errors.push_back("missing required --mode");
  }
  if (const auto* p = b.get("preset")) c.preset = *p;
  if (c.mode == Mode::figure) {
    if (c.preset.empty()) {
      b.error("preset", "figure mode needs --preset");
    } else {
      try {
        apply_preset(c.preset, c);
      } catch (const ConfigurationError& e) {
        b.error("preset", e.what());
      }
    }
  } else if (!c.preset.empty() && b.get("mode")) {
    b.error("preset", "only used with --mode figure");
  }

  if (const auto* s = b.get("scheme")) {
    if (*s == "bulk") {
      c.scheme = SchemeChoice::bulk;
    } else if (*s == "ps" || *s == "per_subcarrier") {
      c.scheme = SchemeChoice::per_subcarrier;
    } else if (*s == "both") {
      c.scheme = SchemeChoice::both;
    } else {
      b.error("scheme", "expected bulk, ps or both, got '" + *s + "'");
    }
  }
  if (const auto* r = b.get("region")) {
    if (*r == "disc") {
      c.region = RegionKind::disc;
    } else if (*r == "plane") {
      c.region = RegionKind::plane;
    } else {
      b.error("region", "expected disc or plane, got '" + *r + "'");
    }
  }
  b.number("sigma", c.sigma);
  if (b.get("rmax")) {
    double r = 0.0;
    b.number("rmax", r);
    c.rmax = r;
  }
  b.sweep("lambda", c.lambda);
  if (b.get("snr") && b.get("snr-db")) {
    errors.push_back("--snr and --snr-db are mutually exclusive");
  } else if (b.get("snr-db")) {
    std::vector<double> db;
    b.sweep("snr-db", db);
    c.snr.clear();
    for (double x : db) c.snr.push_back(std::pow(10.0, x / 10.0));
  } else {
    b.sweep("snr", c.snr);
  }
  if (b.get("K")) {
    std::vector<double> ks;
    b.sweep("K", ks);
    std::vector<int> counts;
    for (double k : ks) {
      if (std::floor(k) != k || k < 1.0 || k > 1e6) {
        b.error("K", "'" + format_double(k) + "' is not a positive integer");
        counts.clear();
        break;
      }
      counts.push_back(static_cast<int>(k));
    }
    if (!counts.empty()) c.subcarriers = std::move(counts);
  }
  b.sweep("alpha", c.alpha);
  b.number("s", c.threshold);
  b.number("rsd", c.r_sd);
  b.unsigned_number("trials", c.trials);
  b.unsigned_number("seed", c.seed);
  std::uint64_t workers = c.workers;
  b.unsigned_number("workers", workers);
  if (workers > 1024) b.error("workers", "at most 1024 workers");
  c.workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, 1024));
  if (b.get("psi")) b.sweep("psi", c.psi);
  if (b.get("epsilon")) b.sweep("epsilon", c.epsilon);
  if (const auto* o = b.get("output")) c.output = *o;
  b.number("abs-tol", c.quadrature.abs_tol);
  b.number("rel-tol", c.quadrature.rel_tol);
  std::uint64_t subdiv = static_cast<std::uint64_t>(c.quadrature.max_subdivisions);
  b.unsigned_number("max-subdivisions", subdiv);
  c.quadrature.max_subdivisions = static_cast<int>(std::min<std::uint64_t>(subdiv, 1000000));
  b.flag("connection", c.connection);
  b.flag("verify", c.verify);

  validate(c, errors);
  if (!errors.empty()) throw ConfigErrors(std::move(errors));
  return c;
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  std::vector<double> ks(c.subcarriers.begin(), c.subcarriers.end());
  out << "mode = " << mode_name(c.mode) << '\n';
  if (!c.preset.empty()) out << "preset = " << c.preset << '\n';
  out << "scheme = " << scheme_choice_name(c.scheme) << '\n'
      << "region = " << (c.region == RegionKind::disc ? "disc" : "plane") << '\n'
      << "sigma = " << format_double(c.sigma) << '\n';
  if (c.rmax) out << "rmax = " << format_double(*c.rmax) << '\n';
  out << "lambda = " << join(c.lambda) << '\n'
      << "snr = " << join(c.snr) << '\n'
      << "K = " << join(ks) << '\n'
      << "alpha = " << join(c.alpha) << '\n'
      << "s = " << format_double(c.threshold) << '\n'
      << "rsd = " << format_double(c.r_sd) << '\n'
      << "trials = " << c.trials << '\n'
      << "seed = " << c.seed << '\n'
      << "workers = " << c.workers << '\n';
  if (!c.psi.empty()) out << "psi = " << join(c.psi) << '\n';
  if (!c.epsilon.empty()) out << "epsilon = " << join(c.epsilon) << '\n';
  if (!c.output.empty()) out << "output = " << c.output << '\n';
  out << "abs-tol = " << format_double(c.quadrature.abs_tol) << '\n'
      << "rel-tol = " << format_double(c.quadrature.rel_tol) << '\n'
      << "max-subdivisions = " << c.quadrature.max_subdivisions << '\n'
      << "connection = " << (c.connection ? "true" : "false") << '\n'
      << "verify = " << (c.verify ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace ppprelay::cli
