#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chfif/attractor.hpp"
#include "chfif/geometry.hpp"
#include "chfif/smoothness.hpp"

namespace chfif {

enum class CriticalCondition { None, Omega, Gamma, Theta };

const char* to_string(CriticalCondition c);

/// Omega = 1 takes precedence over Theta = 1, which takes precedence over Gamma = 1.
CriticalCondition critical_condition(const ChfifModel& model);

struct DimensionBounds {
  double lower = 1.0;  // clamped to [1, 2]
  double upper = 2.0;
  double lower_raw = 1.0;
  double upper_raw = 2.0;
  bool equidistant = false;
  CriticalCondition condition = CriticalCondition::None;
  DeltaTag delta_tag = DeltaTag::Delta1;
  double delta = 1.0;
  std::string note;
};

/// Box-dimension bounds for critical configurations, using the report's delta.
/// Empty when no critical condition holds.
std::optional<DimensionBounds> theoretical_bounds(const ChfifModel& model,
                                                  const SmoothnessReport& report);

/// Number of eps x eps cells anchored at the origin met by the polyline
/// through (x, f1). Rows are half-open [r eps, (r+1) eps); a column
/// [c eps, (c+1) eps] includes both of its boundary lines. Throws SamplingError when some grid spacing
/// exceeds eps/4.
std::size_t box_count(const SampledGraph& sampled, double eps);

struct DimensionEstimate {
  double estimate = 0.0;
  double r_squared = 0.0;
  double eps_max = 0.0;  // coarsest scale
  double eps_min = 0.0;  // finest scale
  std::vector<double> eps;
  std::vector<std::size_t> counts;
};

/// Least-squares slope of log N(eps) against -log eps over eps = 2^-j,
/// j = eps_min_exp..eps_max_exp (at least 4 scales).
DimensionEstimate estimate_dimension(const SampledGraph& sampled, int eps_min_exp,
                                     int eps_max_exp);

/// Smallest address depth whose coarsest cell is <= 2^-eps_max_exp / 4.
int required_depth(const ChfifModel& model, int eps_max_exp);

struct DimensionOneResult {
  bool value = false;
  std::string note;
};

/// Equidistant dimension-one test over the listed (Theta, delta tag, sum) cases.
DimensionOneResult dimension_one_predicate(const ChfifModel& model,
                                           const SmoothnessReport& report);

struct DimensionReport {
  CriticalCondition condition = CriticalCondition::None;
  std::optional<DimensionBounds> bounds;
  DimensionEstimate empirical;
  int sample_depth = 0;
  DimensionOneResult dimension_one;
  SmoothnessReport smoothness;
  std::vector<std::string> warnings;
};

/// Classifies, samples at the required depth and assembles every field.
DimensionReport dimension_report(const ChfifModel& model, int eps_min_exp, int eps_max_exp,
                                 SampleLimits limits = {});

}  // namespace chfif
