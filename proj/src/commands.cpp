#include "chfif/commands.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "chfif/attractor.hpp"
#include "chfif/dimension.hpp"
#include "chfif/format.hpp"
#include "chfif/geometry.hpp"
#include "chfif/moments.hpp"

namespace chfif {

namespace {

class Report {
 public:
  explicit Report(int precision) : precision_(precision) {}

  void section(std::string_view name) {
    if (!out_.str().empty()) out_ << '\n';
    out_ << '[' << name << "]\n";
  }
  void put(std::string_view key, std::string_view value) { out_ << key << " = " << value << '\n'; }
  void put(std::string_view key, const char* value) { put(key, std::string_view(value)); }
  void put(std::string_view key, const std::string& value) { put(key, std::string_view(value)); }
  void put(std::string_view key, double value) { put(key, num(value)); }
  void put(std::string_view key, bool value) { put(key, value ? "true" : "false"); }
  void put(std::string_view key, int value) { put(key, std::to_string(value)); }
  void put(std::string_view key, std::size_t value) { put(key, std::to_string(value)); }
  void put(std::string_view key, const std::vector<double>& values) {
    std::string s;
    for (double v : values) s += (s.empty() ? "" : ", ") + num(v);
    put(key, s);
  }

  std::string num(double v) const { return format_number(v, precision_); }
  std::string str() const { return out_.str(); }

 private:
  int precision_;
  std::ostringstream out_;
};

const char* relation(Regime r) {
  switch (r) {
    case Regime::LT1: return "<1";
    case Regime::EQ1: return "=1";
    case Regime::GT1: return ">1";
  }
  return "?";
}

void put_warnings(Report& rep, const std::vector<std::string>& warnings) {
  rep.section("warnings");
  rep.put("count", warnings.size());
  for (std::size_t k = 0; k < warnings.size(); ++k) {
    rep.put("warning_" + std::to_string(k + 1), warnings[k]);
  }
}

void put_config(Report& rep, const RunConfig& config, const ChfifModel& model) {
  rep.section("config");
  rep.put("name", config.name);
  rep.put("intervals", model.intervals());
  rep.put("equidistant", model.equidistant());
  rep.put("interval_lengths", model.interval_lengths());
}

void put_smoothness(Report& rep, const SmoothnessReport& s) {
  rep.section("smoothness");
  rep.put("case", std::string(1, s.kase));
  rep.put("subcase", s.subcase);
  rep.put("modulus_order", to_string(s.order));
  rep.put("delta", s.delta);
  rep.put("delta_tag", to_string(s.tag));
  rep.put("degenerate", s.degenerate);
  rep.put("tau1", s.tau.tau1);
  rep.put("tau2", s.tau.tau2);
  rep.put("tau3", s.tau.tau3);
  rep.put("tau4", s.tau.tau4);
}

CommandResult failure(int code, std::string message) {
  CommandResult r;
  r.exit_code = code;
  r.diagnostics.push_back(std::move(message));
  return r;
}

// Solves the model or fills `result` with the validation failure.
std::optional<ChfifModel> solve_or_fail(const RunConfig& config, CommandResult& result) {
  try {
    return solve_model(config.problem);
  } catch (const ValidationError& e) {
    result.exit_code = kExitValidation;
    for (const auto& v : e.result().violations) result.diagnostics.push_back(v.message);
    return std::nullopt;
  }
}

std::vector<std::string> self_affine_warnings(const ChfifModel& model) {
  const auto& pb = model.problem();
  std::vector<std::string> out;
  for (std::size_t k = 0; k < pb.ys.size(); ++k) {
    if (std::abs(pb.ys[k] - pb.zs[k]) > kSelfAffineTolerance) return out;
  }
  for (std::size_t i : self_affine_mismatches(model)) {
    const auto& pr = pb.params[i - 1];
    out.push_back("interval " + std::to_string(i) + ": alpha + beta = " +
                  format_number(pr.alpha + pr.beta, 12) + " != gamma = " +
                  format_number(pr.gamma, 12) + " with z = y, so f1 and f2 do not coincide");
  }
  return out;
}

std::string word_key(const Address& w) {
  if (w.empty()) return "root";
  std::string s;
  for (int r : w) s += (s.empty() ? "" : "-") + std::to_string(r);
  return s;
}

}  // namespace

std::string regime_label(const SmoothnessReport& report) {
  std::string label;
  if (report.theta == report.omega) {
    label = std::string("Theta=Omega") + relation(report.theta);
  } else {
    label = std::string("Theta") + relation(report.theta) + ", Omega" + relation(report.omega);
  }
  return label + ", Gamma" + relation(report.gamma);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"generate", "classify", "dimension", "moments",
                                              "validate"};
  return names;
}

CommandResult cmd_validate(const RunConfig& config) {
  const auto v = validate(config.problem);
  Report rep(config.options.precision);
  rep.section("validation");
  rep.put("name", config.name);
  rep.put("valid", v.ok());
  rep.put("violations", v.violations.size());
  for (std::size_t k = 0; k < v.violations.size(); ++k) {
    rep.put("violation_" + std::to_string(k + 1), v.violations[k].message);
  }
  CommandResult r;
  r.output = rep.str();
  if (!v.ok()) {
    r.exit_code = kExitValidation;
    for (const auto& viol : v.violations) r.diagnostics.push_back(viol.message);
  }
  return r;
}

CommandResult cmd_generate(const RunConfig& config) {
  CommandResult result;
  auto model = solve_or_fail(config, result);
  if (!model) return result;
  const auto& o = config.options;

  std::ostringstream out;
  out << "x,f1,f2\n";
  auto row = [&](double x, double f1, double f2) {
    out << format_number(model->to_domain(x), o.precision) << ','
        << format_number(f1, o.precision) << ',' << format_number(f2, o.precision) << '\n';
  };
  try {
    if (o.method == "exact") {
      const auto g = sample_exact(*model, o.depth);
      for (std::size_t k = 0; k < g.size(); ++k) row(g.xs[k], g.f1[k], g.f2[k]);
    } else if (o.method == "iterate") {
      const auto it = fixed_point_iterate(*model, o.grid_size, o.max_iters, o.tol);
      const auto& g = it.graph;
      for (std::size_t k = 0; k < g.size(); ++k) row(g.xs[k], g.f1[k], g.f2[k]);
    } else if (o.method == "chaos") {
      for (const auto& p : chaos_game(*model, o.chaos_points, o.seed)) row(p.x, p.f1, p.f2);
    } else {
      return failure(kExitValidation, "unknown method '" + o.method + "'");
    }
  } catch (const SamplingError& e) {
    return failure(kExitValidation, e.what());
  } catch (const ConvergenceError& e) {
    return failure(kExitDegenerate, e.what());
  }
  result.output = out.str();
  return result;
}

CommandResult cmd_classify(const RunConfig& config) {
  CommandResult result;
  auto model = solve_or_fail(config, result);
  if (!model) return result;

  std::vector<std::string> warnings;
  SmoothnessReport s;
  try {
    s = classify(*model);
  } catch (const DegenerateExponent& e) {
    s = e.report();
    warnings.push_back(s.note);
    result.exit_code = kExitDegenerate;
    result.diagnostics.push_back(s.note);
  }

  Report rep(config.options.precision);
  put_config(rep, config, *model);

  const auto& ratios = model->ratios();
  rep.section("ratios");
  rep.put("lambda", model->lambda());
  rep.put("mu", model->mu());
  rep.put("omega", ratios.omega);
  rep.put("gamma", ratios.gamma);
  rep.put("theta", ratios.theta);
  rep.put("omega_i", ratios.omega_i);
  rep.put("gamma_i", ratios.gamma_i);
  rep.put("theta_i", ratios.theta_i);
  rep.put("critical_tolerance", kCriticalTolerance);

  rep.section("regime");
  rep.put("theta", to_string(s.theta));
  rep.put("omega", to_string(s.omega));
  rep.put("gamma", to_string(s.gamma));
  rep.put("label", regime_label(s));

  put_smoothness(rep, s);

  rep.section("special_case");
  const bool reduced = std::abs(model->lambda() - model->mu()) <= kSelfAffineTolerance;
  rep.put("applicable", reduced);
  if (reduced) {
    const auto sc = equal_exponent_case(*model);
    rep.put("modulus_order", to_string(sc.order));
    rep.put("delta", sc.delta);
    rep.put("delta_tag", to_string(sc.tag));
    rep.put("degenerate", sc.degenerate);
  }

  rep.section("self_affine");
  rep.put("self_affine", is_self_affine_config(*model));
  for (auto& w : self_affine_warnings(*model)) warnings.push_back(std::move(w));

  put_warnings(rep, warnings);
  result.output = rep.str();
  return result;
}

CommandResult cmd_dimension(const RunConfig& config) {
  CommandResult result;
  auto model = solve_or_fail(config, result);
  if (!model) return result;
  const auto& o = config.options;

  DimensionReport d;
  try {
    d = dimension_report(*model, o.eps_min_exp, o.eps_max_exp);
  } catch (const EstimationError& e) {
    return failure(kExitValidation, e.what());
  } catch (const SamplingError& e) {
    return failure(kExitValidation, e.what());
  }

  Report rep(o.precision);
  put_config(rep, config, *model);

  rep.section("dimension");
  rep.put("critical_condition", to_string(d.condition));
  rep.put("sample_depth", d.sample_depth);
  rep.put("eps_min_exp", o.eps_min_exp);
  rep.put("eps_max_exp", o.eps_max_exp);
  rep.put("eps_max", d.empirical.eps_max);
  rep.put("eps_min", d.empirical.eps_min);
  rep.put("estimate", d.empirical.estimate);
  rep.put("r_squared", d.empirical.r_squared);
  std::vector<double> counts(d.empirical.counts.begin(), d.empirical.counts.end());
  rep.put("counts", counts);

  rep.section("bounds");
  rep.put("applicable", d.bounds.has_value());
  if (d.bounds) {
    const auto& b = *d.bounds;
    rep.put("lower", b.lower);
    rep.put("upper", b.upper);
    rep.put("lower_raw", b.lower_raw);
    rep.put("upper_raw", b.upper_raw);
    rep.put("equidistant", b.equidistant);
    rep.put("delta", b.delta);
    rep.put("delta_tag", to_string(b.delta_tag));
    rep.put("clamped", b.lower != b.lower_raw || b.upper != b.upper_raw);
    if (d.smoothness.degenerate) {
      result.exit_code = kExitDegenerate;
      result.diagnostics.push_back(d.smoothness.note);
    }
  }

  rep.section("dimension_one");
  rep.put("value", d.dimension_one.value);
  rep.put("note", d.dimension_one.note);

  put_smoothness(rep, d.smoothness);
  put_warnings(rep, d.warnings);
  result.output = rep.str();
  return result;
}

CommandResult cmd_moments(const RunConfig& config) {
  CommandResult result;
  auto model = solve_or_fail(config, result);
  if (!model) return result;
  const auto& o = config.options;

  std::vector<ConvergencePoint> profile;
  std::optional<MomentTable> table;
  try {
    table.emplace(*model, o.moment_depth);
    profile = convergence_profile(*model, o.m_max, o.probe_depth);
  } catch (const SamplingError& e) {
    return failure(kExitValidation, e.what());
  } catch (const std::length_error& e) {
    return failure(kExitValidation, e.what());
  }

  Report rep(o.precision);
  put_config(rep, config, *model);

  const auto whole = whole_interval_integrals(*model);
  rep.section("integrals");
  rep.put("domain_length", model->domain_length());
  rep.put("a", whole.a);
  rep.put("b", whole.b);

  // Unit-domain cells; integrals over the original domain scale by domain_length.
  rep.section("moments");
  rep.put("depth", o.moment_depth);
  rep.put("columns", "start, length, b, a");
  for (int level = 0; level <= table->depth(); ++level) {
    for (std::size_t idx = 0; idx < table->count(level); ++idx) {
      const auto& cell = table->interval(level, idx);
      rep.put(word_key(table->word_at(level, idx)),
              std::vector<double>{cell.start, cell.length, table->b(level, idx),
                                  table->a(level, idx)});
    }
  }

  rep.section("convergence");
  rep.put("probe_depth", o.probe_depth);
  rep.put("m_max", o.m_max);
  for (const auto& p : profile) rep.put("sup_error_m" + std::to_string(p.m), p.sup_error);

  result.output = rep.str();
  return result;
}

CommandResult run_command(std::string_view name, const RunConfig& config) {
  if (name == "generate") return cmd_generate(config);
  if (name == "classify") return cmd_classify(config);
  if (name == "dimension") return cmd_dimension(config);
  if (name == "moments") return cmd_moments(config);
  if (name == "validate") return cmd_validate(config);
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

}  // namespace chfif
