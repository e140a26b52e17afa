#include "latfol/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace latfol {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& tok, int line_no) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("config line " + std::to_string(line_no) +
                     ": bad number '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError("config line " + std::to_string(line_no) +
                     ": trailing characters in number '" + tok + "'");
  return v;
}

ConfigValue parse_value(const std::string& raw, int line_no) {
  std::string v = trim(raw);
  if (v.empty())
    throw ParseError("config line " + std::to_string(line_no) + ": empty value");
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw ParseError("config line " + std::to_string(line_no) +
                       ": unterminated string");
    return v.substr(1, v.size() - 2);
  }
  if (v.front() == '[') {
    if (v.back() != ']')
      throw ParseError("config line " + std::to_string(line_no) +
                       ": unterminated array");
    std::vector<double> out;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty())
        throw ParseError("config line " + std::to_string(line_no) +
                         ": empty array element");
      out.push_back(parse_number(item, line_no));
    }
    return out;
  }
  return parse_number(v, line_no);
}

}  // namespace

ConfigTable parse_config(const std::string& text) {
  ConfigTable table;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("config line " + std::to_string(line_no) +
                         ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ParseError("config line " + std::to_string(line_no) +
                         ": empty section name");
      table[section];  // sections may be empty
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty() || section.empty())
      throw ParseError("config line " + std::to_string(line_no) +
                       ": key outside a [section] or empty key");
    auto& sec = table[section];
    if (sec.count(key))
      throw ParseError("config line " + std::to_string(line_no) +
                       ": duplicate key '" + key + "'");
    sec[key] = parse_value(line.substr(eq + 1), line_no);
  }
  return table;
}

ConfigTable load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

namespace {

struct SectionReader {
  const std::string name;
  const std::map<std::string, ConfigValue>& values;
  std::set<std::string> seen;

  template <class T>
  void get(const char* key, T& out) {
    auto it = values.find(key);
    if (it == values.end()) return;
    seen.insert(key);
    if constexpr (std::is_same_v<T, int> || std::is_same_v<T, unsigned>) {
      const double* d = std::get_if<double>(&it->second);
      if (!d || *d != std::floor(*d))
        throw ParseError("[" + name + "] " + key + ": expected an integer");
      out = static_cast<T>(*d);
    } else if constexpr (std::is_same_v<T, double>) {
      const double* d = std::get_if<double>(&it->second);
      if (!d) throw ParseError("[" + name + "] " + key + ": expected a number");
      out = *d;
    } else {
      const T* v = std::get_if<T>(&it->second);
      if (!v) throw ParseError("[" + name + "] " + key + ": wrong value type");
      out = *v;
    }
  }

  void finish() const {
    for (const auto& [key, value] : values)
      if (!seen.count(key))
        throw ParseError("[" + name + "] unknown key '" + key + "'");
  }
};

}  // namespace

InteractionSpec ModelConfig::build() const {
  if (kind == "fk-periodic" || kind == "fk-quasiperiodic" || kind == "fk-free")
    return fk_model(medium());
  if (kind == "long-range-pair") return long_range_pair_model(cutoff);
  if (kind == "three-body-demo") return three_body_demo_model();
  if (kind == "antiferromagnetic-demo") return antiferromagnetic_demo_model();
  if (kind == "decoupled-demo") return decoupled_demo_model();
  throw ParseError("unknown model kind '" + kind + "'");
}

std::optional<TorusPotential> ModelConfig::medium() const {
  if (kind == "fk-periodic") {
    TorusPotential V = cosine_potential(epsilon);
    if (!alpha.empty()) V.alpha = alpha;
    return V;
  }
  if (kind == "fk-quasiperiodic") {
    TorusPotential V = demo_quasiperiodic_potential(epsilon);
    if (!alpha.empty()) {
      if (alpha.size() != 2)
        throw ParseError("fk-quasiperiodic expects a 2-component alpha");
      V.alpha = alpha;
    }
    return V;
  }
  return std::nullopt;
}

std::vector<double> RunConfig::beta_grid() const {
  std::vector<double> grid;
  for (int j = 0; j < verify.beta_count; ++j)
    grid.push_back(verify.beta_count == 1
                       ? verify.beta_min
                       : verify.beta_min + j * (verify.beta_max - verify.beta_min) /
                                               (verify.beta_count - 1));
  return grid;
}

RunConfig make_run_config(const ConfigTable& table) {
  RunConfig cfg;
  for (const auto& [section, values] : table) {
    if (section == "model") {
      SectionReader r{section, values, {}};
      r.get("kind", cfg.model.kind);
      r.get("epsilon", cfg.model.epsilon);
      r.get("alpha", cfg.model.alpha);
      r.get("cutoff", cfg.model.cutoff);
      r.finish();
    } else if (section == "hull") {
      SectionReader r{section, values, {}};
      r.get("n_trunc", cfg.hull.n_trunc);
      r.get("tol", cfg.hull.tol);
      r.get("divisor_floor", cfg.hull.divisor_floor);
      r.get("max_newton", cfg.hull.max_newton);
      r.get("eps_schedule", cfg.hull.eps_schedule);
      r.finish();
    } else if (section == "verify") {
      SectionReader r{section, values, {}};
      r.get("beta_min", cfg.verify.beta_min);
      r.get("beta_max", cfg.verify.beta_max);
      r.get("beta_count", cfg.verify.beta_count);
      r.get("w_max", cfg.verify.w_max);
      r.get("omega", cfg.verify.omega);
      r.get("gamma_tol", cfg.verify.gamma_tol);
      r.get("stationarity_tol", cfg.verify.stationarity_tol);
      r.get("equilibrium_tol", cfg.verify.equilibrium_tol);
      r.get("edge_threshold", cfg.verify.edge_threshold);
      r.get("seed", cfg.verify.seed);
      r.get("threads", cfg.verify.threads);
      r.get("window_halfwidth", cfg.verify.window_halfwidth);
      r.finish();
    } else if (section == "output") {
      SectionReader r{section, values, {}};
      r.get("dir", cfg.output_dir);
      r.finish();
    } else {
      throw ParseError("unknown config section [" + section + "]");
    }
  }
  if (cfg.model.kind.empty()) throw ParseError("[model] kind is required");
  static const char* kKnownKinds[] = {
      "fk-periodic",     "fk-quasiperiodic",       "fk-free",
      "long-range-pair", "three-body-demo",        "antiferromagnetic-demo",
      "decoupled-demo"};
  bool known = false;
  for (const char* k : kKnownKinds) known = known || cfg.model.kind == k;
  if (!known) throw ParseError("unknown model kind '" + cfg.model.kind + "'");
  if (cfg.hull.tol <= 0.0 || cfg.verify.gamma_tol <= 0.0 ||
      cfg.verify.stationarity_tol <= 0.0 || cfg.verify.equilibrium_tol < 0.0)
    throw ParseError("tolerances must be positive");
  if (cfg.verify.w_max < 1) throw ParseError("[verify] w_max must be >= 1");
  if (cfg.verify.beta_count < 1)
    throw ParseError("[verify] beta_count must be >= 1");
  if (cfg.verify.beta_count > 1 && !(cfg.verify.beta_min < cfg.verify.beta_max))
    throw ParseError("[verify] beta range must be increasing");
  if (cfg.hull.n_trunc < 1) throw ParseError("[hull] n_trunc must be >= 1");
  if (cfg.verify.threads < 1) throw ParseError("[verify] threads must be >= 1");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return make_run_config(load_config(path));
}

}  // namespace latfol
