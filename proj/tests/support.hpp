// Independent oracles and fixtures shared by the unit and acceptance tests.
// Nothing here calls into the solved model; coefficients are recomputed from
// the raw problem data.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "chfif/geometry.hpp"

namespace oracle {

// Section-5 data with one Table 1 row, written out independently of the
// bundled configs.
struct TableRow {
  std::array<double, 3> alpha;
  std::array<double, 3> beta;
  std::array<double, 3> gamma;
};

inline const std::array<TableRow, 16>& table_rows() {
  static const std::array<TableRow, 16> rows{{
      {{0.8, 0.7, 0.3}, {-0.3, -0.4, -0.2}, {0.5, 0.3, 0.6}},
      {{0.99, 0.99, 0.99}, {0.99, 0.99, 0.99}, {0.005, 0.005, 0.005}},
      {{-0.999, -0.999, -0.999}, {-0.99, -0.99, -0.005}, {-0.005, -0.005, -0.005}},
      {{0.2, 0.38, 0.2}, {0.4, 0.35, 0.5}, {0.3, 0.3, 0.24}},
      {{0.2, 0.4, 0.22}, {0.4, 0.35, 0.5}, {0.35, 0.3, 0.2}},
      {{0.4, 0.3, 0.5}, {0.4, 0.35, 0.5}, {0.3, 0.5, 0.4}},
      {{0.2, 0.38, 0.2}, {0.4, 0.35, 0.5}, {0.3, 0.5, 0.4}},
      {{0.4, 0.3, 0.5}, {0.4, 0.35, 0.5}, {0.3, 0.3, 0.24}},
      {{0.2, 0.4, 0.22}, {0.4, 0.35, 0.5}, {0.3, 0.3, 0.24}},
      {{0.2, 0.38, 0.2}, {0.4, 0.35, 0.5}, {0.35, 0.3, 0.2}},
      {{0.2, 0.4, 0.22}, {0.4, 0.35, 0.5}, {0.3, 0.5, 0.4}},
      {{0.4, 0.3, 0.5}, {0.4, 0.35, 0.5}, {0.35, 0.3, 0.2}},
      {{0.2, 0.38, 0.2}, {-0.6, -0.45, -0.4}, {0.3, 0.3, 0.24}},
      {{0.4, 0.3, 0.5}, {-0.6, -0.45, -0.4}, {0.3, 0.5, 0.4}},
      {{0.4, 0.3, 0.5}, {-0.6, -0.45, -0.4}, {0.3, 0.3, 0.24}},
      {{0.4, 0.3, 0.5}, {-0.6, -0.45, -0.4}, {0.3, 0.5, 0.4}},
  }};
  return rows;
}

inline chfif::InterpolationProblem bundled_row(int figure) {
  const auto& row = table_rows()[static_cast<std::size_t>(figure - 1)];
  chfif::InterpolationProblem pb;
  pb.xs = {0.0, 0.35, 0.75, 1.0};
  pb.ys = {2.0, 7.0, 4.0, 9.0};
  if (figure <= 3) pb.zs = pb.ys;
  else if (figure == 16) pb.zs = {7.0, 9.0, 10.0, 8.0};
  else pb.zs = {3.0, 1.0, 8.0, 5.0};
  for (int i = 0; i < 3; ++i) {
    chfif::IntervalParams pr;
    pr.alpha = row.alpha[i];
    pr.beta = row.beta[i];
    pr.gamma = row.gamma[i];
    pb.params.push_back(pr);
  }
  return pb;
}

inline chfif::InterpolationProblem equidistant(std::vector<double> ys, std::vector<double> zs,
                                               double alpha, double beta, double gamma) {
  chfif::InterpolationProblem pb;
  const std::size_t n = ys.size() - 1;
  for (std::size_t k = 0; k <= n; ++k) pb.xs.push_back(static_cast<double>(k) / n);
  pb.ys = std::move(ys);
  pb.zs = std::move(zs);
  for (std::size_t i = 0; i < n; ++i) pb.params.push_back({alpha, beta, gamma, {}, {}});
  return pb;
}

// p(u) = c u + d + h u^e on [0,1], solved from the endpoint conditions.
struct Poly {
  double c = 0.0;
  double d = 0.0;
  double h = 0.0;
  double e = 1.0;

  double operator()(double u) const { return c * u + d + h * std::pow(u, e); }
  double integral(double lo, double hi) const {
    auto prim = [&](double u) {
      return 0.5 * c * u * u + d * u + h * std::pow(u, e + 1.0) / (e + 1.0);
    };
    return prim(hi) - prim(lo);
  }
};

struct Maps {
  std::vector<double> start;   // unit-domain x_{i-1}
  std::vector<double> length;  // unit-domain |I_i|
  std::vector<Poly> p;
  std::vector<Poly> q;
  std::vector<double> alpha, beta, gamma;
};

inline Maps maps_of(const chfif::InterpolationProblem& pb) {
  Maps m;
  const std::size_t n = pb.xs.size() - 1;
  const double x0 = pb.xs.front();
  const double span = pb.xs.back() - x0;
  const double y0 = pb.ys.front(), yn = pb.ys.back();
  const double z0 = pb.zs.front(), zn = pb.zs.back();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pr = pb.params[i];
    m.start.push_back((pb.xs[i] - x0) / span);
    m.length.push_back((pb.xs[i + 1] - pb.xs[i]) / span);
    m.alpha.push_back(pr.alpha);
    m.beta.push_back(pr.beta);
    m.gamma.push_back(pr.gamma);
    Poly p;
    if (pr.p.kind == chfif::MapTemplate::Kind::AffinePlusPower) {
      p.h = pr.p.coeff;
      p.e = pr.p.exponent;
    }
    p.d = pb.ys[i] - pr.alpha * y0 - pr.beta * z0;
    p.c = pb.ys[i + 1] - pr.alpha * yn - pr.beta * zn - p.d - p.h;
    Poly q;
    if (pr.q.kind == chfif::MapTemplate::Kind::AffinePlusPower) {
      q.h = pr.q.coeff;
      q.e = pr.q.exponent;
    }
    q.d = pb.zs[i] - pr.gamma * z0;
    q.c = pb.zs[i + 1] - pr.gamma * zn - q.d - q.h;
    m.p.push_back(p);
    m.q.push_back(q);
  }
  return m;
}

// Composite trapezoid rule over the samples with lo <= x <= hi (both are
// expected to be sample abscissas).
inline double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys, double lo,
                        double hi) {
  const double slack = 1e-13;
  auto first = std::lower_bound(xs.begin(), xs.end(), lo - slack);
  auto last = std::upper_bound(xs.begin(), xs.end(), hi + slack);
  double sum = 0.0;
  for (auto it = first; it + 1 < last; ++it) {
    const auto k = static_cast<std::size_t>(it - xs.begin());
    sum += 0.5 * (xs[k + 1] - xs[k]) * (ys[k] + ys[k + 1]);
  }
  return sum;
}

// Per-segment cell enumeration with a set: rows half-open, columns closed.
inline std::size_t box_count(const std::vector<double>& xs, const std::vector<double>& ys,
                             double eps) {
  std::set<std::pair<std::int64_t, std::int64_t>> cells;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double xa = xs[k], xb = xs[k + 1];
    const double ya = ys[k], yb = ys[k + 1];
    const auto c0 = static_cast<std::int64_t>(std::floor(xa / eps));
    const auto c1 = static_cast<std::int64_t>(std::floor(xb / eps));
    for (std::int64_t c = c0; c <= c1; ++c) {
      const double lo = std::max(xa, static_cast<double>(c) * eps);
      const double hi = std::min(xb, static_cast<double>(c + 1) * eps);
      if (lo > hi) continue;
      auto y_at = [&](double x) { return ya + (yb - ya) * (x - xa) / (xb - xa); };
      const double u = y_at(lo), v = y_at(hi);
      const auto r0 = static_cast<std::int64_t>(std::floor(std::min(u, v) / eps));
      const auto r1 = static_cast<std::int64_t>(std::floor(std::max(u, v) / eps));
      for (std::int64_t r = r0; r <= r1; ++r) cells.insert({c, r});
    }
  }
  return cells.size();
}

// Least-squares slope, computed with the normal equations.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Random valid problems for property tests.
struct Generator {
  std::mt19937_64 rng;
  explicit Generator(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  chfif::InterpolationProblem problem(int n, bool equal_spacing = false) {
    chfif::InterpolationProblem pb;
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& v : w) v = equal_spacing ? 1.0 : uniform(0.5, 2.0);
    double total = 0.0;
    for (double v : w) total += v;
    double x = uniform(-2.0, 2.0);
    const double span = uniform(0.5, 4.0);
    pb.xs.push_back(x);
    for (double v : w) {
      x += span * v / total;
      pb.xs.push_back(x);
    }
    for (int k = 0; k <= n; ++k) {
      pb.ys.push_back(uniform(-5.0, 5.0));
      pb.zs.push_back(uniform(-5.0, 5.0));
    }
    for (int i = 0; i < n; ++i) {
      chfif::IntervalParams pr;
      pr.alpha = uniform(-0.9, 0.9);
      pr.gamma = uniform(-0.9, 0.9);
      const double room = 1.0 - std::abs(pr.gamma);
      pr.beta = uniform(-0.95, 0.95) * room;
      pb.params.push_back(pr);
    }
    return pb;
  }
};

}  // namespace oracle
