#include "chfif/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace chfif {

Interval interval_of(const ChfifModel& model, std::span<const int> word) {
  const int n = static_cast<int>(model.intervals());
  Interval iv{0.0, 1.0};
  for (int r : word) {
    if (r < 1 || r > n) {
      throw std::out_of_range("address symbol " + std::to_string(r) + " outside 1.." +
                              std::to_string(n));
    }
    const auto& L = model.map(static_cast<std::size_t>(r - 1));
    iv.start = L(iv.start);
    iv.length *= L.slope;
  }
  return iv;
}

std::size_t address_grid_size(std::size_t intervals, int depth, SampleLimits limits) {
  if (depth < 0) throw SamplingError("depth must be non-negative");
  std::size_t cells = 1;
  for (int k = 0; k < depth; ++k) {
    if (cells > (limits.max_points - 1) / intervals) {
      throw SamplingError("depth " + std::to_string(depth) + " needs more than " +
                          std::to_string(limits.max_points) + " grid points");
    }
    cells *= intervals;
  }
  return cells + 1;
}

SampledGraph sample_exact(const ChfifModel& model, int depth, SampleLimits limits) {
  const std::size_t n = model.intervals();
  const std::size_t total = address_grid_size(n, depth, limits);
  const auto& pb = model.problem();
  const auto& ux = model.unit_nodes();

  SampledGraph g;
  g.xs.reserve(total);
  g.f1.reserve(total);
  g.f2.reserve(total);
  g.xs = {0.0, 1.0};
  g.f1 = {pb.ys.front(), pb.ys.back()};
  g.f2 = {pb.zs.front(), pb.zs.back()};

  SampledGraph next;
  for (int level = 1; level <= depth; ++level) {
    const std::size_t prev = g.size();
    const std::size_t size = (prev - 1) * n + 1;
    next.xs.assign(size, 0.0);
    next.f1.assign(size, 0.0);
    next.f2.assign(size, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& L = model.map(i);
      const std::size_t base = i * (prev - 1);
      for (std::size_t k = 0; k < prev; ++k) {
        const auto [y, z] = model.apply(i, g.xs[k], g.f1[k], g.f2[k]);
        next.xs[base + k] = L(g.xs[k]);
        next.f1[base + k] = y;
        next.f2[base + k] = z;
      }
      // Interval endpoints carry the node data exactly.
      next.xs[base] = ux[i];
      next.f1[base] = pb.ys[i];
      next.f2[base] = pb.zs[i];
      next.xs[base + prev - 1] = ux[i + 1];
      next.f1[base + prev - 1] = pb.ys[i + 1];
      next.f2[base + prev - 1] = pb.zs[i + 1];
    }
    std::swap(g, next);
  }
  g.depth = depth;
  return g;
}

double interpolate_linear(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

ConvergenceError::ConvergenceError(IterationResult result)
    : std::runtime_error("fixed-point iteration did not reach tolerance in " +
                         std::to_string(result.iterations) + " sweeps"),
      result_(std::move(result)) {}

namespace {

// Uniform grid: locate the cell of u and interpolate without a search.
double uniform_lookup(const std::vector<double>& values, double h, double u) {
  const std::size_t last = values.size() - 1;
  double pos = u / h;
  // Preimages that land on a grid point up to rounding read that sample directly.
  if (const double r = std::round(pos); std::abs(pos - r) < 1e-9) pos = r;
  if (pos <= 0.0) return values.front();
  if (pos >= static_cast<double>(last)) return values.back();
  const double fl = std::floor(pos);
  auto k = static_cast<std::size_t>(fl);
  if (k >= last) k = last - 1;
  const double w = pos - static_cast<double>(k);
  if (w == 0.0) return values[k];
  return values[k] + w * (values[k + 1] - values[k]);
}

}  // namespace

IterationResult fixed_point_iterate(const ChfifModel& model, std::size_t grid_size, int max_iters,
                                    double tol) {
  const std::size_t n = model.intervals();
  if (grid_size < n + 1) {
    throw std::invalid_argument("grid_size must be at least N+1");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const auto& ux = model.unit_nodes();
  const auto& pb = model.problem();
  const double h = 1.0 / static_cast<double>(grid_size - 1);

  IterationResult res;
  auto& g = res.graph;
  g.xs.resize(grid_size);
  g.f1.resize(grid_size);
  g.f2.resize(grid_size);
  // Interval index and preimage for each grid point never change between sweeps.
  std::vector<std::size_t> branch(grid_size);
  std::vector<double> preimage(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double x = (k + 1 == grid_size) ? 1.0 : static_cast<double>(k) * h;
    g.xs[k] = x;
    g.f1[k] = interpolate_linear(ux, pb.ys, x);
    g.f2[k] = interpolate_linear(ux, pb.zs, x);
    auto it = std::upper_bound(ux.begin() + 1, ux.end() - 1, x);
    std::size_t i = static_cast<std::size_t>(it - ux.begin()) - 1;
    branch[k] = i;
    preimage[k] = std::clamp(model.map(i).inverse(x), 0.0, 1.0);
  }

  std::vector<double> f1_next(grid_size);
  std::vector<double> f2_next(grid_size);
  for (int it = 0; it < max_iters; ++it) {
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t k = 0; k < grid_size; ++k) {
      const double u = preimage[k];
      const double y = uniform_lookup(g.f1, h, u);
      const double z = uniform_lookup(g.f2, h, u);
      const auto [ny, nz] = model.apply(branch[k], u, y, z);
      f1_next[k] = ny;
      f2_next[k] = nz;
      d1 = std::max(d1, std::abs(ny - g.f1[k]));
      d2 = std::max(d2, std::abs(nz - g.f2[k]));
    }
    std::swap(g.f1, f1_next);
    std::swap(g.f2, f2_next);
    res.f1_distances.push_back(d1);
    res.f2_distances.push_back(d2);
    res.distances.push_back(std::max(d1, d2));
    res.iterations = it + 1;
    if (std::max(d1, d2) < tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) throw ConvergenceError(std::move(res));
  return res;
}

std::vector<CloudPoint> chaos_game(const ChfifModel& model, std::size_t n_points,
                                   std::uint64_t seed) {
  if (n_points < 1) throw std::invalid_argument("n_points must be at least 1");
  std::mt19937_64 rng(seed);
  const auto n = model.intervals();
  // Drawn from raw engine output so the stream does not depend on the
  // standard library's distribution implementation.
  auto pick = [&]() { return static_cast<std::size_t>(rng() % n); };

  const auto& pb = model.problem();
  CloudPoint pt{0.0, pb.ys.front(), pb.zs.front()};
  std::vector<CloudPoint> cloud;
  cloud.reserve(n_points);
  for (std::size_t k = 0; k < n_points + kChaosBurnIn; ++k) {
    const std::size_t i = pick();
    const auto [y, z] = model.apply(i, pt.x, pt.f1, pt.f2);
    pt = {model.map(i)(pt.x), y, z};
    if (k >= static_cast<std::size_t>(kChaosBurnIn)) cloud.push_back(pt);
  }
  return cloud;
}

}  // namespace chfif
