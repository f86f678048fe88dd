#include "chfif/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace chfif {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ConfigError::ConfigError(std::string message, std::string path, std::size_t line,
                         std::size_t column)
    : std::runtime_error([&] {
        std::string where;
        if (line > 0) where = "line " + std::to_string(line) + ", column " + std::to_string(column);
        if (!path.empty()) where += (where.empty() ? "" : ", ") + std::string("field ") + path;
        return where.empty() ? message : where + ": " + message;
      }()),
      path_(std::move(path)),
      line_(line),
      column_(column) {}

namespace {

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key", path + "/" + key);
    }
  }
}

const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError("expected an object", path);
  return v;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("expected a number", path);
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError("expected an integer", path);
  return v.get<std::int64_t>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("expected a string", path);
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError("expected an array of numbers", path);
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(get_number(v[k], path + "/" + std::to_string(k)));
  }
  return out;
}

MapTemplate parse_template(const json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown(v, path, {"kind", "coeff", "exponent"});
  if (!v.contains("kind")) throw ConfigError("missing key", path + "/kind");
  const auto kind = get_string(v["kind"], path + "/kind");
  if (kind == "affine") {
    if (v.contains("coeff") || v.contains("exponent")) {
      throw ConfigError("affine template takes no coeff/exponent", path);
    }
    return MapTemplate::affine();
  }
  if (kind == "affine_plus_power") {
    for (const char* key : {"coeff", "exponent"}) {
      if (!v.contains(key)) throw ConfigError("missing key", path + "/" + key);
    }
    return MapTemplate::power(get_number(v["coeff"], path + "/coeff"),
                              get_number(v["exponent"], path + "/exponent"));
  }
  throw ConfigError("kind must be \"affine\" or \"affine_plus_power\"", path + "/kind");
}

int get_int_in(const json& v, const std::string& path, std::int64_t lo, std::int64_t hi) {
  const auto x = get_integer(v, path);
  if (x < lo || x > hi) {
    throw ConfigError("must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", path);
  }
  return static_cast<int>(x);
}

RunOptions parse_options(const json& v) {
  const std::string path = "/options";
  require_object(v, path);
  reject_unknown(v, path,
                 {"depth", "tol", "max_iters", "grid_size", "eps_min_exp", "eps_max_exp", "seed",
                  "precision", "moment_depth", "m_max", "probe_depth", "chaos_points", "method"});
  RunOptions o;
  auto at = [&](const char* key) { return path + "/" + key; };
  constexpr std::int64_t big = std::numeric_limits<int>::max();
  if (v.contains("depth")) o.depth = get_int_in(v["depth"], at("depth"), 0, 40);
  if (v.contains("tol")) {
    o.tol = get_number(v["tol"], at("tol"));
    if (!(o.tol > 0.0)) throw ConfigError("must be positive", at("tol"));
  }
  if (v.contains("max_iters")) o.max_iters = get_int_in(v["max_iters"], at("max_iters"), 1, big);
  if (v.contains("grid_size")) {
    o.grid_size = static_cast<std::size_t>(get_int_in(v["grid_size"], at("grid_size"), 2, big));
  }
  if (v.contains("eps_min_exp")) o.eps_min_exp = get_int_in(v["eps_min_exp"], at("eps_min_exp"), 0, 60);
  if (v.contains("eps_max_exp")) o.eps_max_exp = get_int_in(v["eps_max_exp"], at("eps_max_exp"), 0, 60);
  if (v.contains("seed")) {
    if (!v["seed"].is_number_unsigned()) throw ConfigError("expected a non-negative integer", at("seed"));
    o.seed = v["seed"].get<std::uint64_t>();
  }
  if (v.contains("precision")) o.precision = get_int_in(v["precision"], at("precision"), 1, 17);
  if (v.contains("moment_depth")) o.moment_depth = get_int_in(v["moment_depth"], at("moment_depth"), 0, 20);
  if (v.contains("m_max")) o.m_max = get_int_in(v["m_max"], at("m_max"), 1, 30);
  if (v.contains("probe_depth")) o.probe_depth = get_int_in(v["probe_depth"], at("probe_depth"), 1, 40);
  if (v.contains("chaos_points")) {
    o.chaos_points = static_cast<std::size_t>(get_int_in(v["chaos_points"], at("chaos_points"), 1, big));
  }
  if (v.contains("method")) {
    o.method = get_string(v["method"], at("method"));
    if (o.method != "exact" && o.method != "iterate" && o.method != "chaos") {
      throw ConfigError("method must be exact, iterate or chaos", at("method"));
    }
  }
  return o;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < std::min(byte > 0 ? byte - 1 : 0, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
    throw ConfigError("empty document; required sections: nodes, intervals", "");
  }
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    if (auto pos = msg.find("; last read"); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ConfigError("syntax error: " + msg, "", line, col);
  }
  if (!doc.is_object()) throw ConfigError("top level must be an object", "");
  reject_unknown(doc, "", {"name", "description", "nodes", "intervals", "options"});

  std::vector<std::string> missing;
  for (const char* key : {"nodes", "intervals"}) {
    if (!doc.contains(key)) missing.emplace_back(key);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("missing required sections: " + list, "");
  }

  RunConfig cfg;
  if (doc.contains("name")) cfg.name = get_string(doc["name"], "/name");
  if (doc.contains("description")) cfg.description = get_string(doc["description"], "/description");

  const auto& nodes = require_object(doc["nodes"], "/nodes");
  reject_unknown(nodes, "/nodes", {"x", "y", "z"});
  for (const char* key : {"x", "y", "z"}) {
    if (!nodes.contains(key)) throw ConfigError("missing key", std::string("/nodes/") + key);
  }
  cfg.problem.xs = get_numbers(nodes["x"], "/nodes/x");
  cfg.problem.ys = get_numbers(nodes["y"], "/nodes/y");
  cfg.problem.zs = get_numbers(nodes["z"], "/nodes/z");

  const auto& intervals = doc["intervals"];
  if (!intervals.is_array()) throw ConfigError("expected an array", "/intervals");
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const std::string path = "/intervals/" + std::to_string(k);
    const auto& iv = require_object(intervals[k], path);
    reject_unknown(iv, path, {"alpha", "beta", "gamma", "p", "q"});
    IntervalParams pr;
    for (const char* key : {"alpha", "beta", "gamma"}) {
      if (!iv.contains(key)) throw ConfigError("missing key", path + "/" + key);
    }
    pr.alpha = get_number(iv["alpha"], path + "/alpha");
    pr.beta = get_number(iv["beta"], path + "/beta");
    pr.gamma = get_number(iv["gamma"], path + "/gamma");
    if (iv.contains("p")) pr.p = parse_template(iv["p"], path + "/p");
    if (iv.contains("q")) pr.q = parse_template(iv["q"], path + "/q");
    cfg.problem.params.push_back(pr);
  }
  if (doc.contains("options")) cfg.options = parse_options(doc["options"]);
  return cfg;
}

namespace {

ordered_json template_json(const MapTemplate& t) {
  ordered_json j;
  if (t.kind == MapTemplate::Kind::Affine) {
    j["kind"] = "affine";
  } else {
    j["kind"] = "affine_plus_power";
    j["coeff"] = t.coeff;
    j["exponent"] = t.exponent;
  }
  return j;
}

}  // namespace

std::string serialize_config(const RunConfig& config) {
  ordered_json doc;
  doc["name"] = config.name;
  doc["description"] = config.description;
  doc["nodes"]["x"] = config.problem.xs;
  doc["nodes"]["y"] = config.problem.ys;
  doc["nodes"]["z"] = config.problem.zs;
  doc["intervals"] = ordered_json::array();
  for (const auto& pr : config.problem.params) {
    ordered_json iv;
    iv["alpha"] = pr.alpha;
    iv["beta"] = pr.beta;
    iv["gamma"] = pr.gamma;
    iv["p"] = template_json(pr.p);
    iv["q"] = template_json(pr.q);
    doc["intervals"].push_back(iv);
  }
  const auto& o = config.options;
  auto& opt = doc["options"];
  opt["depth"] = o.depth;
  opt["tol"] = o.tol;
  opt["max_iters"] = o.max_iters;
  opt["grid_size"] = o.grid_size;
  opt["eps_min_exp"] = o.eps_min_exp;
  opt["eps_max_exp"] = o.eps_max_exp;
  opt["seed"] = o.seed;
  opt["precision"] = o.precision;
  opt["moment_depth"] = o.moment_depth;
  opt["m_max"] = o.m_max;
  opt["probe_depth"] = o.probe_depth;
  opt["chaos_points"] = o.chaos_points;
  opt["method"] = o.method;
  return doc.dump(2) + "\n";
}

bool equivalent(const RunConfig& a, const RunConfig& b) {
  const auto& pa = a.problem;
  const auto& pb = b.problem;
  if (a.name != b.name || a.description != b.description || !(a.options == b.options)) return false;
  if (pa.xs != pb.xs || pa.ys != pb.ys || pa.zs != pb.zs) return false;
  if (pa.params.size() != pb.params.size()) return false;
  for (std::size_t k = 0; k < pa.params.size(); ++k) {
    const auto& x = pa.params[k];
    const auto& y = pb.params[k];
    if (x.alpha != y.alpha || x.beta != y.beta || x.gamma != y.gamma || !(x.p == y.p) ||
        !(x.q == y.q)) {
      return false;
    }
  }
  return true;
}

namespace {

// alpha1..3, beta1..3, gamma1..3 for fig1..fig16.
constexpr std::array<std::array<double, 9>, 16> kTableRows{{
    {0.8, 0.7, 0.3, -0.3, -0.4, -0.2, 0.5, 0.3, 0.6},
    {0.99, 0.99, 0.99, 0.99, 0.99, 0.99, 0.005, 0.005, 0.005},
    {-0.999, -0.999, -0.999, -0.99, -0.99, -0.005, -0.005, -0.005, -0.005},
    {0.2, 0.38, 0.2, 0.4, 0.35, 0.5, 0.3, 0.3, 0.24},
    {0.2, 0.4, 0.22, 0.4, 0.35, 0.5, 0.35, 0.3, 0.2},
    {0.4, 0.3, 0.5, 0.4, 0.35, 0.5, 0.3, 0.5, 0.4},
    {0.2, 0.38, 0.2, 0.4, 0.35, 0.5, 0.3, 0.5, 0.4},
    {0.4, 0.3, 0.5, 0.4, 0.35, 0.5, 0.3, 0.3, 0.24},
    {0.2, 0.4, 0.22, 0.4, 0.35, 0.5, 0.3, 0.3, 0.24},
    {0.2, 0.38, 0.2, 0.4, 0.35, 0.5, 0.35, 0.3, 0.2},
    {0.2, 0.4, 0.22, 0.4, 0.35, 0.5, 0.3, 0.5, 0.4},
    {0.4, 0.3, 0.5, 0.4, 0.35, 0.5, 0.35, 0.3, 0.2},
    {0.2, 0.38, 0.2, -0.6, -0.45, -0.4, 0.3, 0.3, 0.24},
    {0.4, 0.3, 0.5, -0.6, -0.45, -0.4, 0.3, 0.5, 0.4},
    {0.4, 0.3, 0.5, -0.6, -0.45, -0.4, 0.3, 0.3, 0.24},
    {0.4, 0.3, 0.5, -0.6, -0.45, -0.4, 0.3, 0.5, 0.4},
}};

constexpr std::array<const char*, 16> kCaptions{{
    "self-affine CHFIF (verbatim row; alpha3 + beta3 != gamma3)",
    "CHFIF with scaling factor near -2",
    "CHFIF with scaling factor near 2",
    "Theta = Omega < 1, Gamma < 1",
    "Theta = Omega = 1, Gamma = 1",
    "Theta = Omega > 1, Gamma > 1",
    "Theta = Omega < 1, Gamma > 1",
    "Theta = Omega > 1, Gamma < 1",
    "Theta = Omega = 1, Gamma < 1",
    "Theta = Omega < 1, Gamma = 1",
    "Theta = Omega = 1, Gamma > 1",
    "Theta = Omega > 1, Gamma = 1",
    "Theta = Omega < 1, Gamma < 1 with a different set of beta",
    "Theta = Omega > 1, Gamma > 1 with a different set of beta",
    "Theta = Omega > 1, Gamma < 1 with a different set of beta",
    "Theta = Omega > 1, Gamma > 1 with a different set of z",
}};

RunConfig table_config(int figure, bool corrected) {
  const auto& row = kTableRows[static_cast<std::size_t>(figure - 1)];
  RunConfig cfg;
  cfg.name = "fig" + std::to_string(figure) + (corrected ? "_corrected" : "");
  cfg.description = corrected ? "self-affine CHFIF (gamma3 corrected to 0.1 so alpha_i + beta_i = gamma_i)"
                              : kCaptions[static_cast<std::size_t>(figure - 1)];
  auto& pb = cfg.problem;
  pb.xs = {0.0, 0.35, 0.75, 1.0};
  pb.ys = {2.0, 7.0, 4.0, 9.0};
  if (figure <= 3) pb.zs = pb.ys;
  else if (figure == 16) pb.zs = {7.0, 9.0, 10.0, 8.0};
  else pb.zs = {3.0, 1.0, 8.0, 5.0};
  for (std::size_t i = 0; i < 3; ++i) {
    IntervalParams pr;
    pr.alpha = row[i];
    pr.beta = row[3 + i];
    pr.gamma = row[6 + i];
    pb.params.push_back(pr);
  }
  if (corrected) pb.params[2].gamma = 0.1;
  return cfg;
}

}  // namespace

std::vector<std::string> bundled_names() {
  std::vector<std::string> names;
  for (int f = 1; f <= 16; ++f) names.push_back("fig" + std::to_string(f));
  names.emplace_back("fig1_corrected");
  return names;
}

std::optional<RunConfig> bundled_config(std::string_view name) {
  if (name == "fig1_corrected") return table_config(1, true);
  for (int f = 1; f <= 16; ++f) {
    if (name == "fig" + std::to_string(f)) return table_config(f, false);
  }
  return std::nullopt;
}

RunConfig load_config(const std::string& path_or_name) {
  std::ifstream in(path_or_name, std::ios::binary);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("cannot read " + path_or_name);
    return parse_config(buf.str());
  }
  if (auto cfg = bundled_config(path_or_name)) return *cfg;
  throw std::ios_base::failure("no config file or bundled config named '" + path_or_name + "'");
}

}  // namespace chfif
