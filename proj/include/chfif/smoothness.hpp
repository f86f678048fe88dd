#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "chfif/attractor.hpp"
#include "chfif/geometry.hpp"

namespace chfif {

enum class Regime { LT1, EQ1, GT1 };

/// Order of the modulus of continuity: |t|^d, |t|^d |log t|, |t|^d (log t)^2.
enum class ModulusOrder { LipDelta, DeltaLog, DeltaLog2 };

/// Which exponent formula produced the reported delta.
enum class DeltaTag { Delta1, Delta2, Delta3, Delta4, Delta5, Delta6, Delta7, Delta8, Tau1, Tau2 };

Regime regime_of(double ratio);
const char* to_string(Regime r);
const char* to_string(ModulusOrder o);
const char* to_string(DeltaTag t);

/// Largest admissible values of the tau exponents.
struct TauBounds {
  double tau1 = 0.0;  // log(alpha_max) / log(I_min)
  double tau2 = 0.0;  // log(gamma_max) / log(I_min)
  double tau3 = 0.0;  // min(tau1, tau2)
  double tau4 = 0.0;  // = tau1
};

TauBounds tau_bounds(const ChfifModel& model);

struct SmoothnessReport {
  Regime theta = Regime::LT1;
  Regime omega = Regime::LT1;
  Regime gamma = Regime::LT1;
  ModulusOrder order = ModulusOrder::LipDelta;
  double delta = 1.0;
  DeltaTag tag = DeltaTag::Delta1;
  TauBounds tau;
  /// 'a' when Omega != 1 and Gamma != 1, 'b' otherwise.
  char kase = 'a';
  /// Roman-numeral subcase within the case, 1-based.
  int subcase = 1;
  bool degenerate = false;
  std::string note;
};

class DegenerateExponent : public std::runtime_error {
 public:
  explicit DegenerateExponent(SmoothnessReport report);
  const SmoothnessReport& report() const { return report_; }

 private:
  SmoothnessReport report_;
};

/// Regime states and case/subcase only; never throws.
SmoothnessReport classify_regime(const ChfifModel& model);

/// Full case table over (Theta, Omega, Gamma). Throws DegenerateExponent,
/// carrying the report, when the applicable exponent formula gives delta <= 0.
SmoothnessReport classify(const ChfifModel& model);

/// Reduced three-way table keyed on Theta = Omega and Gamma, valid only when
/// lambda = mu (throws std::invalid_argument otherwise).
SmoothnessReport equal_exponent_case(const ChfifModel& model);

struct HolderEstimate {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> scales;        // t values used
  std::vector<double> oscillations;  // osc(t)
  std::vector<double> residuals;     // in log space
};

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// max |f(x) - f(x')| over sample pairs with |x - x'| <= t.
double max_oscillation(const std::vector<double>& xs, const std::vector<double>& values, double t);

/// Slope of log osc(t) against log t over t = 2^-j, j in [scale_min_exp, scale_max_exp].
/// Scales finer than twice the largest grid spacing, or with zero
/// oscillation, are skipped; fewer than 3 usable scales throws EstimationError.
HolderEstimate empirical_holder(const SampledGraph& sampled, int scale_min_exp, int scale_max_exp);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace chfif
