#include "chfif/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chfif/format.hpp"

namespace chfif {

bool near_critical(double value, double target) {
  return std::abs(value - target) <= kCriticalTolerance * std::max(1.0, std::abs(target));
}

std::string ValidationResult::summary() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) out << "; ";
    out << violations[k].message;
  }
  return out.str();
}

ValidationError::ValidationError(ValidationResult result)
    : std::runtime_error("invalid interpolation problem: " + result.summary()),
      result_(std::move(result)) {}

namespace {

void check_template(const MapTemplate& t, std::size_t i, const char* name,
                    std::vector<Violation>& out) {
  if (t.kind == MapTemplate::Kind::Affine) return;
  if (!(t.exponent > 0.0 && t.exponent <= 1.0)) {
    out.push_back({i, std::string(name) + "_" + std::to_string(i) + " exponent = " +
                          format_shortest(t.exponent) + " outside (0,1]"});
  }
  if (!std::isfinite(t.coeff)) {
    out.push_back({i, std::string(name) + "_" + std::to_string(i) + " coefficient is not finite"});
  }
}

}  // namespace

ValidationResult validate(const InterpolationProblem& problem) {
  ValidationResult result;
  auto& out = result.violations;
  const std::size_t n_nodes = problem.xs.size();

  if (n_nodes < 3) {
    out.push_back({0, "need at least 3 nodes (N >= 2 intervals), got " + std::to_string(n_nodes)});
  }
  if (problem.ys.size() != n_nodes) {
    out.push_back({0, "y has " + std::to_string(problem.ys.size()) + " values, expected " +
                          std::to_string(n_nodes)});
  }
  if (problem.zs.size() != n_nodes) {
    out.push_back({0, "hidden z has " + std::to_string(problem.zs.size()) +
                          " values, expected " + std::to_string(n_nodes)});
  }
  const std::size_t n_int = n_nodes > 0 ? n_nodes - 1 : 0;
  if (problem.params.size() != n_int) {
    out.push_back({0, "params has " + std::to_string(problem.params.size()) +
                          " intervals, expected " + std::to_string(n_int)});
  }

  auto finite_all = [&](const std::vector<double>& v, const char* name) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!std::isfinite(v[k])) {
        out.push_back({k, std::string(name) + "_" + std::to_string(k) + " is not finite"});
      }
    }
  };
  finite_all(problem.xs, "x");
  finite_all(problem.ys, "y");
  finite_all(problem.zs, "z");

  for (std::size_t k = 1; k < n_nodes; ++k) {
    if (!(problem.xs[k] > problem.xs[k - 1])) {
      out.push_back({k, "x_" + std::to_string(k - 1) + " = " + format_shortest(problem.xs[k - 1]) +
                            " >= x_" + std::to_string(k) + " = " + format_shortest(problem.xs[k])});
    }
  }

  for (std::size_t k = 0; k < problem.params.size(); ++k) {
    const auto& pr = problem.params[k];
    const std::size_t i = k + 1;
    const std::string idx = std::to_string(i);
    if (!(std::abs(pr.alpha) < 1.0)) {
      out.push_back({i, "|alpha_" + idx + "| = " + format_shortest(std::abs(pr.alpha)) + " >= 1"});
    }
    const double bg = std::abs(pr.beta) + std::abs(pr.gamma);
    if (!(bg < 1.0)) {
      out.push_back({i, "|beta_" + idx + "|+|gamma_" + idx + "| = " + format_number(bg, 12) +
                            " >= 1"});
    }
    check_template(pr.p, i, "p", out);
    check_template(pr.q, i, "q", out);
  }
  return result;
}

double MapFunction::operator()(double x) const {
  double v = linear * x + constant;
  if (power_coeff != 0.0) v += power_coeff * std::pow(x, exponent);
  return v;
}

double MapFunction::integral(double lo, double hi) const {
  double v = 0.5 * linear * (hi * hi - lo * lo) + constant * (hi - lo);
  if (power_coeff != 0.0) {
    const double e1 = exponent + 1.0;
    v += power_coeff * (std::pow(hi, e1) - std::pow(lo, e1)) / e1;
  }
  return v;
}

double ChfifModel::abs_alpha_sum() const {
  double s = 0.0;
  for (const auto& pr : problem_.params) s += std::abs(pr.alpha);
  return s;
}

double ChfifModel::abs_gamma_sum() const {
  double s = 0.0;
  for (const auto& pr : problem_.params) s += std::abs(pr.gamma);
  return s;
}

bool ChfifModel::equidistant() const {
  const double target = 1.0 / static_cast<double>(lengths_.size());
  return std::all_of(lengths_.begin(), lengths_.end(),
                     [&](double len) { return near_critical(len, target); });
}

std::pair<double, double> ChfifModel::apply(std::size_t i, double x, double y, double z) const {
  const auto& pr = problem_.params[i];
  return {pr.alpha * y + pr.beta * z + p_[i](x), pr.gamma * z + q_[i](x)};
}

namespace {

// Endpoint conditions on [0,1]: g(0) = left - s*v0 - t*w0, g(1) = right - s*vN - t*wN.
// With g(x) = c*x + d + h*x^e this is solved directly (0^e = 0 for e > 0).
MapFunction solve_map_function(const MapTemplate& tmpl, double at_zero, double at_one) {
  MapFunction g;
  if (tmpl.kind == MapTemplate::Kind::AffinePlusPower) {
    g.power_coeff = tmpl.coeff;
    g.exponent = tmpl.exponent;
  }
  g.constant = at_zero;
  g.linear = at_one - at_zero - g.power_coeff;
  return g;
}

}  // namespace

ChfifModel solve_model(const InterpolationProblem& problem) {
  if (auto v = validate(problem); !v.ok()) throw ValidationError(std::move(v));

  ChfifModel m;
  m.problem_ = problem;
  const std::size_t n = problem.intervals();
  const double x0 = problem.xs.front();
  const double xn = problem.xs.back();
  m.origin_ = x0;
  m.length_ = xn - x0;

  m.unit_x_.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    m.unit_x_[k] = (problem.xs[k] - x0) / m.length_;
  }
  m.unit_x_.front() = 0.0;
  m.unit_x_.back() = 1.0;

  const auto& ys = problem.ys;
  const auto& zs = problem.zs;
  m.maps_.resize(n);
  m.p_.resize(n);
  m.q_.resize(n);
  m.lengths_.resize(n);
  m.lambda_ = 1.0;
  m.mu_ = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& pr = problem.params[k];
    const double lo = m.unit_x_[k];
    const double hi = m.unit_x_[k + 1];
    m.lengths_[k] = hi - lo;
    m.maps_[k] = AffineMap{hi - lo, lo};

    m.p_[k] = solve_map_function(pr.p, ys[k] - pr.alpha * ys.front() - pr.beta * zs.front(),
                                 ys[k + 1] - pr.alpha * ys.back() - pr.beta * zs.back());
    m.q_[k] = solve_map_function(pr.q, zs[k] - pr.gamma * zs.front(),
                                 zs[k + 1] - pr.gamma * zs.back());

    m.lambda_ = std::min(m.lambda_, pr.p.lip_exponent());
    m.mu_ = std::min(m.mu_, pr.q.lip_exponent());
    m.alpha_max_ = std::max(m.alpha_max_, std::abs(pr.alpha));
    m.gamma_max_ = std::max(m.gamma_max_, std::abs(pr.gamma));
  }
  m.min_length_ = *std::min_element(m.lengths_.begin(), m.lengths_.end());
  m.max_length_ = *std::max_element(m.lengths_.begin(), m.lengths_.end());
  m.ratios_ = classification_ratios(m);
  return m;
}

RatioSet classification_ratios(const ChfifModel& model) {
  RatioSet r;
  const std::size_t n = model.intervals();
  r.omega_i.resize(n);
  r.gamma_i.resize(n);
  r.theta_i.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double len = model.interval_lengths()[k];
    const double a = std::abs(model.alpha(k));
    const double g = std::abs(model.gamma(k));
    const double len_lambda = std::pow(len, model.lambda());
    const double len_mu = std::pow(len, model.mu());
    r.omega_i[k] = a / len_lambda;
    r.gamma_i[k] = g / len_mu;
    r.theta_i[k] = a / len_mu;
  }
  r.omega = *std::max_element(r.omega_i.begin(), r.omega_i.end());
  r.gamma = *std::max_element(r.gamma_i.begin(), r.gamma_i.end());
  r.theta = *std::max_element(r.theta_i.begin(), r.theta_i.end());
  return r;
}

std::vector<std::size_t> self_affine_mismatches(const ChfifModel& model) {
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < model.intervals(); ++k) {
    const double lhs = model.alpha(k) + model.beta(k);
    if (std::abs(lhs - model.gamma(k)) > kSelfAffineTolerance) bad.push_back(k + 1);
  }
  return bad;
}

bool is_self_affine_config(const ChfifModel& model) {
  const auto& pb = model.problem();
  for (std::size_t k = 0; k < pb.ys.size(); ++k) {
    if (std::abs(pb.ys[k] - pb.zs[k]) > kSelfAffineTolerance) return false;
  }
  if (!self_affine_mismatches(model).empty()) return false;
  for (std::size_t k = 0; k < model.intervals(); ++k) {
    if (!(pb.params[k].p == pb.params[k].q)) return false;
    const auto& p = model.p(k);
    const auto& q = model.q(k);
    if (std::abs(p.linear - q.linear) > kSelfAffineTolerance ||
        std::abs(p.constant - q.constant) > kSelfAffineTolerance ||
        std::abs(p.power_coeff - q.power_coeff) > kSelfAffineTolerance ||
        p.exponent != q.exponent) {
      return false;
    }
  }
  return true;
}

}  // namespace chfif
