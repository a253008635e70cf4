#include "mhd2d/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mhd2d/error.hpp"

namespace mhd2d {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Entry {
  int line;
  std::string key;
  std::string value;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line, key, what); }

  double real() const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) fail("expected a number, got '" + value + "'");
    return v;
  }

  long long integer() const {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) fail("expected an integer, got '" + value + "'");
    return v;
  }

  bool boolean() const {
    const std::string v = lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail("expected true or false, got '" + value + "'");
  }
};

using Setter = std::function<void(RunConfig&, const Entry&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n1", [](RunConfig& c, const Entry& e) { c.n1 = static_cast<int>(e.integer()); }},
      {"grid.n2", [](RunConfig& c, const Entry& e) { c.n2 = static_cast<int>(e.integer()); }},
      {"phys.mu", [](RunConfig& c, const Entry& e) { c.phys.mu = e.real(); }},
      {"phys.lambda", [](RunConfig& c, const Entry& e) { c.phys.lambda = e.real(); }},
      {"phys.gamma",
       [](RunConfig& c, const Entry& e) {
         const double g = e.real();
         if (!(g > 0.0)) e.fail("gamma must be positive");
         c.phys.pressure = PressureLaw(g);
       }},
      {"phys.linear_pressure",
       [](RunConfig& c, const Entry& e) {
         if (e.boolean()) c.phys.pressure = PressureLaw::linear();
       }},
      {"init.seed",
       [](RunConfig& c, const Entry& e) {
         const long long v = e.integer();
         if (v < 0) e.fail("seed must be nonnegative");
         c.init.seed = static_cast<std::uint64_t>(v);
       }},
      {"init.epsilon", [](RunConfig& c, const Entry& e) { c.init.epsilon = e.real(); }},
      {"init.decay_rate", [](RunConfig& c, const Entry& e) { c.init.decay_rate = e.real(); }},
      {"init.enable_rho", [](RunConfig& c, const Entry& e) { c.init.enable_rho = e.boolean(); }},
      {"init.enable_u", [](RunConfig& c, const Entry& e) { c.init.enable_u = e.boolean(); }},
      {"init.enable_b", [](RunConfig& c, const Entry& e) { c.init.enable_b = e.boolean(); }},
      {"stepping.dt", [](RunConfig& c, const Entry& e) { c.stepping.dt = e.real(); }},
      {"stepping.auto_cfl", [](RunConfig& c, const Entry& e) { c.auto_cfl = e.boolean(); }},
      {"stepping.scheme",
       [](RunConfig& c, const Entry& e) {
         try {
           c.stepping.scheme = parse_scheme(e.value);
         } catch (const Error& err) {
           e.fail(err.what());
         }
       }},
      {"stepping.filter", [](RunConfig& c, const Entry& e) { c.stepping.filter_enabled = e.boolean(); }},
      {"stepping.filter_strength", [](RunConfig& c, const Entry& e) { c.stepping.filter_strength = e.real(); }},
      {"stepping.cfl_safety", [](RunConfig& c, const Entry& e) { c.stepping.cfl_safety = e.real(); }},
      {"diag.s", [](RunConfig& c, const Entry& e) { c.diag.s = e.real(); }},
      {"diag.sigma", [](RunConfig& c, const Entry& e) { c.diag.sigma = e.real(); }},
      {"diag.sample_interval", [](RunConfig& c, const Entry& e) { c.diag.sample_interval = e.real(); }},
      {"run.t_end", [](RunConfig& c, const Entry& e) { c.t_end = e.real(); }},
      {"run.out_dir", [](RunConfig& c, const Entry& e) { c.out_dir = e.value; }},
      {"run.checkpoint_every", [](RunConfig& c, const Entry& e) { c.checkpoint_every = e.real(); }},
  };
  return table;
}

void validate(const RunConfig& c, const std::map<std::string, Entry>& seen) {
  auto check = [&](const std::string& key, bool ok, const std::string& what) {
    if (ok) return;
    const auto it = seen.find(key);
    const auto dot = key.find('.');
    throw ConfigError(it == seen.end() ? 0 : it->second.line, key.substr(dot + 1), what);
  };
  check("grid.n1", c.n1 >= 8 && c.n1 % 2 == 0, "n1 must be even and >= 8");
  check("grid.n2", c.n2 >= 8 && c.n2 % 2 == 0, "n2 must be even and >= 8");
  check("phys.mu", c.phys.mu > 0.0, "mu must be positive");
  check(seen.count("phys.lambda") ? "phys.lambda" : "phys.mu", c.phys.mu + c.phys.lambda > 0.0,
        "mu + lambda must be positive");
  check("init.epsilon", c.init.epsilon >= 0.0, "epsilon must be nonnegative");
  check("init.decay_rate", c.init.decay_rate > 0.0, "decay_rate must be positive");
  check("stepping.dt", c.stepping.dt > 0.0, "dt must be positive");
  check("stepping.cfl_safety", c.stepping.cfl_safety > 0.0 && c.stepping.cfl_safety <= 1.0,
        "cfl_safety must lie in (0, 1]");
  check("stepping.filter_strength", c.stepping.filter_strength >= 0.0, "filter_strength must be nonnegative");
  check("diag.sigma", c.diag.sigma > 0.0 && c.diag.sigma < 0.5, "sigma must satisfy 0 < sigma < 1/2");
  check("diag.sample_interval", c.diag.sample_interval > 0.0, "sample_interval must be positive");
  check("run.t_end", c.t_end > 0.0, "t_end must be positive");
  check("run.checkpoint_every", c.checkpoint_every >= 0.0, "checkpoint_every must be nonnegative");
  check("run.out_dir", !c.out_dir.empty(), "out_dir must not be empty");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::map<std::string, Entry> seen;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ConfigError(line, content, "malformed section header");
      section = lower(trim(content.substr(1, content.size() - 2)));
      static const char* known[] = {"grid", "phys", "init", "stepping", "diag", "run"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ConfigError(line, section, "unknown section");
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, content, "expected key = value");
    Entry entry{line, lower(trim(content.substr(0, eq))), trim(content.substr(eq + 1))};
    if (section.empty()) entry.fail("key outside of any section");
    const std::string full = section + "." + entry.key;
    const auto it = setters().find(full);
    if (it == setters().end()) entry.fail("unknown key in section [" + section + "]");
    if (seen.count(full)) entry.fail("duplicate key");
    it->second(config, entry);
    seen.emplace(full, entry);
  }
  const auto lin = seen.find("phys.linear_pressure");
  if (lin != seen.end() && lin->second.boolean()) {
    const auto gamma = seen.find("phys.gamma");
    if (gamma != seen.end() && gamma->second.real() != 1.0) {
      gamma->second.fail("conflicts with linear_pressure = true");
    }
    config.phys.pressure = PressureLaw::linear();
  }
  validate(config, seen);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << "[grid]\nn1 = " << c.n1 << "\nn2 = " << c.n2 << "\n\n";
  os << "[phys]\nmu = " << c.phys.mu << "\nlambda = " << c.phys.lambda << "\ngamma = " << c.phys.pressure.gamma()
     << "\nlinear_pressure = " << flag(c.phys.pressure.is_linear()) << "\n\n";
  os << "[init]\nseed = " << c.init.seed << "\nepsilon = " << c.init.epsilon << "\ndecay_rate = " << c.init.decay_rate
     << "\nenable_rho = " << flag(c.init.enable_rho) << "\nenable_u = " << flag(c.init.enable_u)
     << "\nenable_b = " << flag(c.init.enable_b) << "\n\n";
  os << "[stepping]\ndt = " << c.stepping.dt << "\nauto_cfl = " << flag(c.auto_cfl)
     << "\nscheme = " << scheme_name(c.stepping.scheme) << "\nfilter = " << flag(c.stepping.filter_enabled)
     << "\nfilter_strength = " << c.stepping.filter_strength << "\ncfl_safety = " << c.stepping.cfl_safety << "\n\n";
  os << "[diag]\ns = " << c.diag.s << "\nsigma = " << c.diag.sigma << "\nsample_interval = " << c.diag.sample_interval
     << "\n\n";
  os << "[run]\nt_end = " << c.t_end << "\nout_dir = " << c.out_dir << "\ncheckpoint_every = " << c.checkpoint_every
     << '\n';
  return os.str();
}

}  // namespace mhd2d
