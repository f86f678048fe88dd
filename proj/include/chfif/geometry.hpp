#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chfif {

/// Relative tolerance used to decide that a ratio sits exactly on a critical value.
inline constexpr double kCriticalTolerance = 1e-9;

/// Tolerance for the structural equalities of the self-affine collapse test.
inline constexpr double kSelfAffineTolerance = 1e-12;

/// True when |value - target| <= kCriticalTolerance * max(1, |target|).
bool near_critical(double value, double target = 1.0);

/// Shape of a per-interval map function p_i or q_i.
///
/// AFFINE is `c*x + d`. AFFINE_PLUS_POWER is `c*x + d + h*x^e` with h and e
/// fixed by the caller; c and d are always solved from the endpoint conditions.
struct MapTemplate {
  enum class Kind { Affine, AffinePlusPower };

  Kind kind = Kind::Affine;
  double coeff = 0.0;
  double exponent = 1.0;

  static MapTemplate affine() { return {}; }
  static MapTemplate power(double coeff, double exponent) {
    return {Kind::AffinePlusPower, coeff, exponent};
  }

  /// Lipschitz exponent this template contributes (1 for affine).
  double lip_exponent() const { return kind == Kind::Affine ? 1.0 : exponent; }

  bool operator==(const MapTemplate&) const = default;
};

struct IntervalParams {
  double alpha = 0.0;  // free variable, |alpha| < 1
  double beta = 0.0;   // constrained by |beta| + |gamma| < 1
  double gamma = 0.0;
  MapTemplate p;
  MapTemplate q;
};

/// Interpolation data (x_i, y_i), hidden ordinates z_i and one parameter set
/// per interval [x_{i-1}, x_i].
struct InterpolationProblem {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> zs;
  std::vector<IntervalParams> params;

  std::size_t intervals() const { return xs.empty() ? 0 : xs.size() - 1; }
};

struct Violation {
  std::size_t index = 0;  // 1-based interval index, or node index for node checks
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationResult validate(const InterpolationProblem& problem);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationResult result);
  const ValidationResult& result() const { return result_; }

 private:
  ValidationResult result_;
};

/// x -> slope*x + offset
struct AffineMap {
  double slope = 1.0;
  double offset = 0.0;

  double operator()(double x) const { return slope * x + offset; }
  double inverse(double x) const { return (x - offset) / slope; }
};

/// Solved map function `linear*x + constant + power_coeff*x^exponent` on [0,1].
struct MapFunction {
  double linear = 0.0;
  double constant = 0.0;
  double power_coeff = 0.0;
  double exponent = 1.0;

  double operator()(double x) const;
  /// Exact integral over [lo, hi], 0 <= lo <= hi <= 1.
  double integral(double lo, double hi) const;

  bool operator==(const MapFunction&) const = default;
};

struct RatioSet {
  std::vector<double> omega_i;  // |alpha_i| / |I_i|^lambda
  std::vector<double> gamma_i;  // |gamma_i| / |I_i|^mu
  std::vector<double> theta_i;  // |alpha_i| / |I_i|^mu
  double omega = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
};

/// A validated problem together with every solved coefficient and derived
/// quantity. All geometry is on the unit domain [0,1]; the original domain is
/// kept for mapping outputs back.
class ChfifModel {
 public:
  const InterpolationProblem& problem() const { return problem_; }
  std::size_t intervals() const { return maps_.size(); }

  /// Node abscissas after the affine pre-map onto [0,1].
  const std::vector<double>& unit_nodes() const { return unit_x_; }
  double domain_origin() const { return origin_; }
  double domain_length() const { return length_; }
  double to_domain(double unit_x) const { return origin_ + length_ * unit_x; }

  /// L_i, 0-based.
  const AffineMap& map(std::size_t i) const { return maps_[i]; }
  const MapFunction& p(std::size_t i) const { return p_[i]; }
  const MapFunction& q(std::size_t i) const { return q_[i]; }
  double alpha(std::size_t i) const { return problem_.params[i].alpha; }
  double beta(std::size_t i) const { return problem_.params[i].beta; }
  double gamma(std::size_t i) const { return problem_.params[i].gamma; }

  const std::vector<double>& interval_lengths() const { return lengths_; }
  double min_length() const { return min_length_; }
  double max_length() const { return max_length_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double alpha_max() const { return alpha_max_; }
  double gamma_max() const { return gamma_max_; }
  double abs_alpha_sum() const;
  double abs_gamma_sum() const;
  bool equidistant() const;
  const RatioSet& ratios() const { return ratios_; }

  /// F_i(x, y, z) evaluated on the unit domain; returns (y', z').
  std::pair<double, double> apply(std::size_t i, double x, double y, double z) const;

 private:
  friend ChfifModel solve_model(const InterpolationProblem& problem);
  ChfifModel() = default;

  InterpolationProblem problem_;
  std::vector<double> unit_x_;
  double origin_ = 0.0;
  double length_ = 1.0;
  std::vector<AffineMap> maps_;
  std::vector<MapFunction> p_;
  std::vector<MapFunction> q_;
  std::vector<double> lengths_;
  double min_length_ = 0.0;
  double max_length_ = 0.0;
  double lambda_ = 1.0;
  double mu_ = 1.0;
  double alpha_max_ = 0.0;
  double gamma_max_ = 0.0;
  RatioSet ratios_;
};

/// Solves L_i, p_i, q_i from the endpoint conditions. Throws ValidationError
/// when validate(problem) reports violations.
ChfifModel solve_model(const InterpolationProblem& problem);

RatioSet classification_ratios(const ChfifModel& model);

bool is_self_affine_config(const ChfifModel& model);

/// Intervals where alpha_i + beta_i != gamma_i (1-based), for diagnostics.
std::vector<std::size_t> self_affine_mismatches(const ChfifModel& model);

}  // namespace chfif
