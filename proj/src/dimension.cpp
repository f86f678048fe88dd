#include "chfif/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chfif {

const char* to_string(CriticalCondition c) {
  switch (c) {
    case CriticalCondition::None: return "none";
    case CriticalCondition::Omega: return "omega";
    case CriticalCondition::Gamma: return "gamma";
    case CriticalCondition::Theta: return "theta";
  }
  return "?";
}

CriticalCondition critical_condition(const ChfifModel& model) {
  const auto& r = model.ratios();
  if (near_critical(r.omega)) return CriticalCondition::Omega;
  if (near_critical(r.theta)) return CriticalCondition::Theta;
  if (near_critical(r.gamma)) return CriticalCondition::Gamma;
  return CriticalCondition::None;
}

std::optional<DimensionBounds> theoretical_bounds(const ChfifModel& model,
                                                  const SmoothnessReport& report) {
  const auto cond = critical_condition(model);
  if (cond == CriticalCondition::None) return std::nullopt;

  DimensionBounds b;
  b.condition = cond;
  b.delta = report.delta;
  b.delta_tag = report.tag;
  b.equidistant = model.equidistant();
  const double sum = cond == CriticalCondition::Gamma ? model.abs_gamma_sum()
                                                      : model.abs_alpha_sum();
  const double n = static_cast<double>(model.intervals());
  if (b.equidistant) {
    b.lower_raw = 1.0 + std::log(sum) / std::log(n);
    b.upper_raw = 2.0 - report.delta;
  } else {
    const double log_imax = std::log(model.max_length());
    b.lower_raw = 1.0 - std::log(sum) / log_imax;
    b.upper_raw = 1.0 - report.delta - std::log(n) / log_imax;
  }
  b.lower = std::clamp(b.lower_raw, 1.0, 2.0);
  b.upper = std::clamp(b.upper_raw, 1.0, 2.0);
  if (b.lower_raw != b.lower || b.upper_raw != b.upper) b.note = "bounds clamped to [1,2]";
  if (b.lower > b.upper) {
    b.note += b.note.empty() ? "" : "; ";
    b.note += "lower bound exceeds upper bound (delta inconsistent with critical condition)";
  }
  return b;
}

namespace {

struct ColumnSpan {
  double lo;
  double hi;
};

std::size_t rows_spanned(ColumnSpan s, double eps) {
  const double first = std::floor(s.lo / eps);
  const double last = std::floor(s.hi / eps);
  return static_cast<std::size_t>(last - first) + 1;
}

double max_spacing(const SampledGraph& g) {
  double h = 0.0;
  for (std::size_t k = 1; k < g.size(); ++k) h = std::max(h, g.xs[k] - g.xs[k - 1]);
  return h;
}

}  // namespace

std::size_t box_count(const SampledGraph& sampled, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (sampled.size() < 2) throw SamplingError("need at least two samples");
  if (max_spacing(sampled) > eps / 4.0 * (1.0 + 1e-12)) {
    throw SamplingError("sampling too coarse for eps: spacing exceeds eps/4");
  }
  const auto& xs = sampled.xs;
  const auto& ys = sampled.f1;

  // The polyline over one column is connected, so its image is an interval of rows.
  std::size_t total = 0;
  double column = std::floor(xs[0] / eps);
  ColumnSpan span{ys[0], ys[0]};
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double next_column = std::floor(xs[k] / eps);
    while (column < next_column) {
      const double boundary = (column + 1.0) * eps;
      const double w = (boundary - xs[k - 1]) / (xs[k] - xs[k - 1]);
      const double y = ys[k - 1] + w * (ys[k] - ys[k - 1]);
      span.lo = std::min(span.lo, y);
      span.hi = std::max(span.hi, y);
      total += rows_spanned(span, eps);
      span = {y, y};
      column += 1.0;
    }
    span.lo = std::min(span.lo, ys[k]);
    span.hi = std::max(span.hi, ys[k]);
  }
  total += rows_spanned(span, eps);
  return total;
}

DimensionEstimate estimate_dimension(const SampledGraph& sampled, int eps_min_exp,
                                     int eps_max_exp) {
  if (eps_max_exp - eps_min_exp + 1 < 4) {
    throw EstimationError("box-counting regression needs at least 4 scales");
  }
  DimensionEstimate est;
  est.eps_max = std::ldexp(1.0, -eps_min_exp);
  est.eps_min = std::ldexp(1.0, -eps_max_exp);
  if (max_spacing(sampled) > est.eps_min / 4.0 * (1.0 + 1e-12)) {
    throw SamplingError("sampling too coarse for eps_min = 2^-" + std::to_string(eps_max_exp));
  }
  std::vector<double> x;
  std::vector<double> y;
  for (int j = eps_min_exp; j <= eps_max_exp; ++j) {
    const double eps = std::ldexp(1.0, -j);
    const auto count = box_count(sampled, eps);
    est.eps.push_back(eps);
    est.counts.push_back(count);
    x.push_back(-std::log(eps));
    y.push_back(std::log(static_cast<double>(count)));
  }
  const auto fit = least_squares(x, y);
  est.estimate = fit.slope;
  est.r_squared = fit.r_squared;
  return est;
}

int required_depth(const ChfifModel& model, int eps_max_exp) {
  const double target = std::ldexp(1.0, -eps_max_exp) / 4.0;
  const double imax = model.max_length();
  int depth = 0;
  double cell = 1.0;
  while (cell > target * (1.0 + 1e-12)) {
    cell *= imax;
    ++depth;
  }
  return depth;
}

DimensionOneResult dimension_one_predicate(const ChfifModel& model,
                                           const SmoothnessReport& report) {
  if (!model.equidistant()) return {false, "equidistant hypothesis fails"};
  const bool alpha_ok = model.abs_alpha_sum() <= 1.0 + kCriticalTolerance;
  const bool gamma_ok = model.abs_gamma_sum() <= 1.0 + kCriticalTolerance;
  const bool unit = near_critical(report.delta, 1.0);
  if (!unit) return {false, "delta != 1"};
  const auto tag = report.tag;
  const auto theta = report.theta;

  if (theta != Regime::GT1) {
    if ((tag == DeltaTag::Delta1 || tag == DeltaTag::Delta3) && (alpha_ok || gamma_ok)) {
      return {true, "theta <= 1, delta1 or delta3 = 1, sum condition holds"};
    }
    if (tag == DeltaTag::Delta4 && alpha_ok) return {true, "theta <= 1, delta4 = 1, sum|alpha| <= 1"};
    if (theta == Regime::EQ1 && tag == DeltaTag::Delta2 && alpha_ok) {
      return {true, "theta = 1, delta2 = tau3 = 1, sum|alpha| <= 1"};
    }
  } else {
    if ((tag == DeltaTag::Delta5 || tag == DeltaTag::Delta8) && alpha_ok) {
      return {true, "theta > 1, delta5 or delta8 = 1, sum|alpha| <= 1"};
    }
    if (tag == DeltaTag::Delta4 && gamma_ok) return {true, "theta > 1, delta4 = 1, sum|gamma| <= 1"};
  }
  return {false, "no dimension-one case applies"};
}

DimensionReport dimension_report(const ChfifModel& model, int eps_min_exp, int eps_max_exp,
                                 SampleLimits limits) {
  DimensionReport rep;
  try {
    rep.smoothness = classify(model);
  } catch (const DegenerateExponent& e) {
    rep.smoothness = e.report();
    rep.warnings.push_back(e.report().note);
  }
  rep.condition = critical_condition(model);
  rep.bounds = theoretical_bounds(model, rep.smoothness);
  if (rep.bounds && !rep.bounds->note.empty()) rep.warnings.push_back(rep.bounds->note);
  rep.dimension_one = dimension_one_predicate(model, rep.smoothness);
  rep.sample_depth = required_depth(model, eps_max_exp);
  const auto graph = sample_exact(model, rep.sample_depth, limits);
  rep.empirical = estimate_dimension(graph, eps_min_exp, eps_max_exp);
  return rep;
}

}  // namespace chfif
