#include "chfif/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chfif {

WholeIntegrals whole_interval_integrals(const ChfifModel& model) {
  const std::size_t n = model.intervals();
  const auto& len = model.interval_lengths();
  double q_sum = 0.0;
  double gamma_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q_sum += len[i] * model.q(i).integral(0.0, 1.0);
    gamma_sum += len[i] * model.gamma(i);
  }
  WholeIntegrals w;
  w.a = q_sum / (1.0 - gamma_sum);

  double p_sum = 0.0;
  double alpha_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p_sum += len[i] * (model.p(i).integral(0.0, 1.0) + model.beta(i) * w.a);
    alpha_sum += len[i] * model.alpha(i);
  }
  w.b = p_sum / (1.0 - alpha_sum);
  return w;
}

namespace {

void check_symbols(const ChfifModel& model, std::span<const int> word) {
  const int n = static_cast<int>(model.intervals());
  for (int r : word) {
    if (r < 1 || r > n) {
      throw std::out_of_range("address symbol " + std::to_string(r) + " outside 1.." +
                              std::to_string(n));
    }
  }
}

struct Moments {
  double a;
  double b;
};

// One step of both recursions: extend the prefix cell `cell` by outer symbol i (0-based).
Moments extend(const ChfifModel& model, std::size_t i, const Interval& cell, Moments prefix) {
  const double len = model.interval_lengths()[i];
  const double hi = cell.start + cell.length;
  Moments out;
  out.a = len * (model.q(i).integral(cell.start, hi) + model.gamma(i) * prefix.a);
  out.b = len * (model.p(i).integral(cell.start, hi) + model.beta(i) * prefix.a +
                 model.alpha(i) * prefix.b);
  return out;
}

Moments word_moments(const ChfifModel& model, std::span<const int> word) {
  check_symbols(model, word);
  const auto whole = whole_interval_integrals(model);
  Moments m{whole.a, whole.b};
  Interval cell{0.0, 1.0};
  for (int r : word) {
    const auto i = static_cast<std::size_t>(r - 1);
    m = extend(model, i, cell, m);
    const auto& L = model.map(i);
    cell = {L(cell.start), L.slope * cell.length};
  }
  return m;
}

}  // namespace

double moment_a(const ChfifModel& model, std::span<const int> word) {
  return word_moments(model, word).a;
}

double moment_b(const ChfifModel& model, std::span<const int> word) {
  return word_moments(model, word).b;
}

MomentTable::MomentTable(const ChfifModel& model, int depth)
    : n_(model.intervals()), depth_(depth) {
  if (depth < 0) throw std::invalid_argument("moment depth must be non-negative");
  // Same budget as the address grid.
  address_grid_size(n_, depth);
  const auto whole = whole_interval_integrals(model);
  a_.resize(depth + 1);
  b_.resize(depth + 1);
  cells_.resize(depth + 1);
  a_[0] = {whole.a};
  b_[0] = {whole.b};
  cells_[0] = {Interval{0.0, 1.0}};
  for (int level = 1; level <= depth; ++level) {
    const std::size_t prev = b_[level - 1].size();
    a_[level].resize(prev * n_);
    b_[level].resize(prev * n_);
    cells_[level].resize(prev * n_);
    for (std::size_t p = 0; p < prev; ++p) {
      const Interval& cell = cells_[level - 1][p];
      const Moments pm{a_[level - 1][p], b_[level - 1][p]};
      for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t idx = p * n_ + i;
        const auto m = extend(model, i, cell, pm);
        a_[level][idx] = m.a;
        b_[level][idx] = m.b;
        const auto& L = model.map(i);
        cells_[level][idx] = {L(cell.start), L.slope * cell.length};
      }
    }
  }
}

std::size_t MomentTable::index_of(std::span<const int> word) const {
  if (static_cast<int>(word.size()) > depth_) {
    throw std::out_of_range("word longer than table depth");
  }
  std::size_t idx = 0;
  for (int r : word) {
    if (r < 1 || r > static_cast<int>(n_)) throw std::out_of_range("address symbol out of range");
    idx = idx * n_ + static_cast<std::size_t>(r - 1);
  }
  return idx;
}

Address MomentTable::word_at(int level, std::size_t index) const {
  Address w(static_cast<std::size_t>(level));
  for (int k = level - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = static_cast<int>(index % n_) + 1;
    index /= n_;
  }
  return w;
}

namespace {
constexpr double kSnap = 1e-12;
}  // namespace

Address locate(const ChfifModel& model, int m, double x) {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("x outside [0,1]");
  const auto& ux = model.unit_nodes();
  const std::size_t n = model.intervals();
  Address word(static_cast<std::size_t>(m));
  // Peel the outermost map first: it is the last symbol of the word.
  for (int k = m - 1; k >= 0; --k) {
    // Points within kSnap below a node are treated as the node itself, so
    // rounding in the inverse maps cannot move a cell boundary to the left cell.
    auto it = std::upper_bound(ux.begin() + 1, ux.end(), x + kSnap);
    const std::size_t i = std::min(static_cast<std::size_t>(it - ux.begin()) - 1, n - 1);
    word[static_cast<std::size_t>(k)] = static_cast<int>(i) + 1;
    x = std::clamp(model.map(i).inverse(x), 0.0, 1.0);
    if (x < kSnap) x = 0.0;
  }
  return word;
}

double q_m_operator(const ChfifModel& model, int m, double x) {
  if (m < 1) throw std::invalid_argument("Q_m needs m >= 1");
  const auto word = locate(model, m, x);
  return moment_b(model, word) / interval_of(model, word).length;
}

std::vector<ConvergencePoint> convergence_profile(const ChfifModel& model, int m_max,
                                                  int probe_depth, SampleLimits limits) {
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  if (probe_depth < m_max) throw std::invalid_argument("probe_depth must be >= m_max");
  const auto grid = sample_exact(model, probe_depth, limits);
  const MomentTable table(model, m_max);
  const std::size_t n = model.intervals();

  // Grid point j < N^D has base-N digits d_1..d_D (d_1 most significant) and
  // lies in the left-closed level-m cell with table index sum_t d_t N^(t-1).
  std::size_t top = 1;
  for (int k = 1; k < probe_depth; ++k) top *= n;

  std::vector<double> sup(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::size_t rem = j;
    std::size_t div = top;
    std::size_t idx = 0;
    std::size_t weight = 1;
    for (int m = 1; m <= m_max; ++m) {
      std::size_t digit = n - 1;
      if (j + 1 < grid.size()) {
        digit = rem / div;
        rem %= div;
        div = div > 1 ? div / n : 1;
      }
      idx += digit * weight;
      weight *= n;
      const double q = table.b(m, idx) / table.interval(m, idx).length;
      sup[m] = std::max(sup[m], std::abs(q - grid.f1[j]));
    }
  }

  std::vector<ConvergencePoint> out;
  for (int m = 1; m <= m_max; ++m) out.push_back({m, sup[static_cast<std::size_t>(m)]});
  return out;
}

}  // namespace chfif
