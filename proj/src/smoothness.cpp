#include "chfif/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "chfif/format.hpp"

namespace chfif {

Regime regime_of(double ratio) {
  if (near_critical(ratio, 1.0)) return Regime::EQ1;
  return ratio < 1.0 ? Regime::LT1 : Regime::GT1;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::LT1: return "LT1";
    case Regime::EQ1: return "EQ1";
    case Regime::GT1: return "GT1";
  }
  return "?";
}

const char* to_string(ModulusOrder o) {
  switch (o) {
    case ModulusOrder::LipDelta: return "LIP_DELTA";
    case ModulusOrder::DeltaLog: return "DELTA_LOG";
    case ModulusOrder::DeltaLog2: return "DELTA_LOG2";
  }
  return "?";
}

const char* to_string(DeltaTag t) {
  static constexpr const char* names[] = {"delta1", "delta2", "delta3", "delta4", "delta5",
                                          "delta6", "delta7", "delta8", "tau1",   "tau2"};
  return names[static_cast<int>(t)];
}

DegenerateExponent::DegenerateExponent(SmoothnessReport report)
    : std::runtime_error(report.note), report_(std::move(report)) {}

TauBounds tau_bounds(const ChfifModel& model) {
  const double log_imin = std::log(model.min_length());
  TauBounds t;
  t.tau1 = std::log(model.alpha_max()) / log_imin;
  t.tau2 = std::log(model.gamma_max()) / log_imin;
  t.tau3 = std::min(t.tau1, t.tau2);
  t.tau4 = t.tau1;
  return t;
}

namespace {

using R = Regime;

// Case and roman-numeral subcase from the Omega/Gamma states.
void assign_case(SmoothnessReport& r) {
  const R om = r.omega;
  const R ga = r.gamma;
  if (om != R::EQ1 && ga != R::EQ1) {
    r.kase = 'a';
    if (om == R::LT1 && ga == R::LT1) r.subcase = 1;
    else if (om == R::GT1 && ga == R::GT1) r.subcase = 2;
    else if (om == R::GT1 && ga == R::LT1) r.subcase = 3;
    else r.subcase = 4;
    return;
  }
  r.kase = 'b';
  if ((om == R::EQ1 && ga != R::GT1) || (om == R::LT1 && ga == R::EQ1)) r.subcase = 1;
  else if (om == R::GT1 && ga == R::EQ1) r.subcase = 2;
  else r.subcase = 3;  // Omega = 1, Gamma > 1
}

double delta6_value(const ChfifModel& model) {
  return std::log(model.alpha_max() * model.gamma_max()) / std::log(model.min_length()) -
         model.mu();
}

void set_delta(SmoothnessReport& r, DeltaTag tag, double value) {
  r.tag = tag;
  r.delta = value;
}

std::string degenerate_note(const SmoothnessReport& r) {
  return std::string("degenerate exponent: ") + to_string(r.tag) + " = " +
         format_number(r.delta, 12) + " <= 0";
}

}  // namespace

SmoothnessReport classify_regime(const ChfifModel& model) {
  const auto& ratios = model.ratios();
  SmoothnessReport r;
  r.theta = regime_of(ratios.theta);
  r.omega = regime_of(ratios.omega);
  r.gamma = regime_of(ratios.gamma);
  r.tau = tau_bounds(model);
  assign_case(r);
  if (r.theta == R::EQ1) {
    r.order = r.kase == 'a' ? ModulusOrder::DeltaLog : ModulusOrder::DeltaLog2;
  } else {
    r.order = r.kase == 'a' ? ModulusOrder::LipDelta : ModulusOrder::DeltaLog;
  }
  return r;
}

SmoothnessReport classify(const ChfifModel& model) {
  SmoothnessReport r = classify_regime(model);
  const double lambda = model.lambda();
  const double mu = model.mu();
  const auto& tau = r.tau;

  if (r.theta != R::GT1) {
    if (r.kase == 'a') {
      switch (r.subcase) {
        case 1: set_delta(r, DeltaTag::Delta1, std::min(lambda, mu)); break;
        case 2: set_delta(r, DeltaTag::Delta2, tau.tau3); break;
        case 3: set_delta(r, DeltaTag::Delta3, std::min(tau.tau1, mu)); break;
        default: set_delta(r, DeltaTag::Delta4, std::min(lambda, tau.tau2)); break;
      }
    } else {
      switch (r.subcase) {
        case 1: set_delta(r, DeltaTag::Delta1, std::min(lambda, mu)); break;
        case 2: set_delta(r, DeltaTag::Delta3, std::min(tau.tau1, mu)); break;
        default: set_delta(r, DeltaTag::Delta4, std::min(lambda, tau.tau2)); break;
      }
    }
  } else {
    const double d6 = delta6_value(model);
    if (r.kase == 'a') {
      switch (r.subcase) {
        case 1: set_delta(r, DeltaTag::Delta5, std::min(lambda, tau.tau1)); break;
        case 2: set_delta(r, DeltaTag::Delta6, d6); break;
        case 3: set_delta(r, DeltaTag::Delta7, tau.tau1); break;
        default: set_delta(r, DeltaTag::Delta8, std::min(lambda, d6)); break;
      }
    } else {
      switch (r.subcase) {
        case 1: set_delta(r, DeltaTag::Delta5, std::min(lambda, tau.tau1)); break;
        case 2: set_delta(r, DeltaTag::Delta7, tau.tau1); break;
        default: set_delta(r, DeltaTag::Delta8, std::min(lambda, d6)); break;
      }
    }
  }

  if (!(r.delta > 0.0)) {
    r.degenerate = true;
    r.note = degenerate_note(r);
    throw DegenerateExponent(std::move(r));
  }
  return r;
}

SmoothnessReport equal_exponent_case(const ChfifModel& model) {
  if (std::abs(model.lambda() - model.mu()) > kSelfAffineTolerance) {
    throw std::invalid_argument("reduced smoothness table needs lambda = mu");
  }
  SmoothnessReport r = classify_regime(model);
  const double mu = model.mu();
  const auto& tau = r.tau;
  // With lambda = mu the Omega and Theta states coincide; key on Theta and Gamma.
  r.omega = r.theta;
  r.kase = 'r';
  r.subcase = r.gamma == R::LT1 ? 1 : (r.gamma == R::EQ1 ? 2 : 3);

  switch (r.theta) {
    case R::LT1:
      if (r.gamma == R::GT1) {
        r.order = ModulusOrder::LipDelta;
        set_delta(r, DeltaTag::Delta4, std::min(model.lambda(), tau.tau2));
      } else {
        r.order = r.gamma == R::LT1 ? ModulusOrder::LipDelta : ModulusOrder::DeltaLog;
        set_delta(r, DeltaTag::Delta1, mu);
      }
      break;
    case R::EQ1:
      r.order = ModulusOrder::DeltaLog2;
      if (r.gamma == R::GT1) set_delta(r, DeltaTag::Delta4, std::min(model.lambda(), tau.tau2));
      else set_delta(r, DeltaTag::Delta1, mu);
      break;
    case R::GT1:
      if (r.gamma == R::GT1) {
        r.order = ModulusOrder::LipDelta;
        set_delta(r, DeltaTag::Delta6, delta6_value(model));
      } else {
        r.order = r.gamma == R::LT1 ? ModulusOrder::LipDelta : ModulusOrder::DeltaLog;
        set_delta(r, DeltaTag::Tau1, tau.tau1);
      }
      break;
  }
  if (!(r.delta > 0.0)) {
    r.degenerate = true;
    r.note = degenerate_note(r);
  }
  return r;
}

double max_oscillation(const std::vector<double>& xs, const std::vector<double>& values,
                       double t) {
  const double reach = t * (1.0 + 1e-12);
  std::deque<std::size_t> hi_q;  // indices with decreasing values
  std::deque<std::size_t> lo_q;  // indices with increasing values
  std::size_t left = 0;
  double best = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    while (xs[k] - xs[left] > reach) ++left;
    while (!hi_q.empty() && hi_q.front() < left) hi_q.pop_front();
    while (!lo_q.empty() && lo_q.front() < left) lo_q.pop_front();
    while (!hi_q.empty() && values[hi_q.back()] <= values[k]) hi_q.pop_back();
    while (!lo_q.empty() && values[lo_q.back()] >= values[k]) lo_q.pop_back();
    hi_q.push_back(k);
    lo_q.push_back(k);
    best = std::max(best, values[hi_q.front()] - values[lo_q.front()]);
  }
  return best;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  fit.residuals.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    fit.residuals[k] = y[k] - (fit.intercept + fit.slope * x[k]);
    ss_res += fit.residuals[k] * fit.residuals[k];
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

HolderEstimate empirical_holder(const SampledGraph& sampled, int scale_min_exp,
                                int scale_max_exp) {
  if (scale_min_exp > scale_max_exp) {
    throw EstimationError("scale exponent range is empty");
  }
  double spacing = 0.0;
  for (std::size_t k = 1; k < sampled.size(); ++k) {
    spacing = std::max(spacing, sampled.xs[k] - sampled.xs[k - 1]);
  }
  HolderEstimate est;
  std::vector<double> log_t;
  std::vector<double> log_osc;
  for (int j = scale_min_exp; j <= scale_max_exp; ++j) {
    const double t = std::ldexp(1.0, -j);
    if (t < 2.0 * spacing) continue;
    const double osc = max_oscillation(sampled.xs, sampled.f1, t);
    if (!(osc > 0.0)) continue;
    est.scales.push_back(t);
    est.oscillations.push_back(osc);
    log_t.push_back(std::log(t));
    log_osc.push_back(std::log(osc));
  }
  if (log_t.size() < 3) {
    throw EstimationError("only " + std::to_string(log_t.size()) +
                          " usable scales for the Holder estimate (need 3)");
  }
  auto fit = least_squares(log_t, log_osc);
  est.exponent = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.residuals = std::move(fit.residuals);
  return est;
}

}  // namespace chfif
