#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "chfif/geometry.hpp"

namespace chfif {

/// A word r_1 ... r_m over {1..N}; r_m is the outermost map.
using Address = std::vector<int>;

struct Interval {
  double start = 0.0;
  double length = 1.0;
};

/// I_{r_1...r_m} = L_{r_m} o ... o L_{r_1}([0,1]). Throws std::out_of_range
/// for symbols outside 1..N.
Interval interval_of(const ChfifModel& model, std::span<const int> word);

/// Values of (f1, f2) on a sorted set of unit-domain abscissas.
struct SampledGraph {
  std::vector<double> xs;
  std::vector<double> f1;
  std::vector<double> f2;
  int depth = -1;  // address refinement level, -1 for non-address grids

  std::size_t size() const { return xs.size(); }
};

struct SampleLimits {
  std::size_t max_points = std::size_t{1} << 23;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of points on the level-`depth` address grid, N^depth + 1.
/// Throws SamplingError if it exceeds `limits.max_points`.
std::size_t address_grid_size(std::size_t intervals, int depth, SampleLimits limits = {});

/// Exact values of f on the level-`depth` address grid, obtained by pushing
/// the node values through the functional equations. Point k of the level-m
/// grid maps under L_i to point (i-1)*N^m + k of the level-(m+1) grid.
SampledGraph sample_exact(const ChfifModel& model, int depth, SampleLimits limits = {});

struct IterationResult {
  SampledGraph graph;
  std::vector<double> distances;     // sup |T^k f - T^{k-1} f| over both components
  std::vector<double> f1_distances;
  std::vector<double> f2_distances;
  int iterations = 0;
  bool converged = false;
};

class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(IterationResult result);
  const IterationResult& result() const { return result_; }

 private:
  IterationResult result_;
};

/// Read-Bajraktarevic iteration on a uniform grid of `grid_size` points,
/// starting from the piecewise-linear interpolant. f(L_i^{-1}(x)) is read off
/// the current grid by linear interpolation. Throws ConvergenceError when the
/// successive sup-distance is still >= tol after max_iters sweeps.
IterationResult fixed_point_iterate(const ChfifModel& model, std::size_t grid_size, int max_iters,
                                    double tol);

struct CloudPoint {
  double x = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

inline constexpr int kChaosBurnIn = 100;

/// Random iteration of the maps w_i with uniform choice. Deterministic in
/// (seed, n_points); the first kChaosBurnIn points are discarded.
std::vector<CloudPoint> chaos_game(const ChfifModel& model, std::size_t n_points,
                                   std::uint64_t seed);

/// Piecewise-linear interpolation of sorted samples; clamps outside the range.
double interpolate_linear(std::span<const double> xs, std::span<const double> ys, double x);

}  // namespace chfif
