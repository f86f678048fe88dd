#pragma once

#include <span>
#include <vector>

#include "chfif/attractor.hpp"
#include "chfif/geometry.hpp"

namespace chfif {

/// Whole-interval integrals of the two components: a = int_0^1 f2, b = int_0^1 f1.
struct WholeIntegrals {
  double a = 0.0;
  double b = 0.0;
};

/// Closed form obtained by integrating both functional equations over [0,1].
WholeIntegrals whole_interval_integrals(const ChfifModel& model);

/// int of f2 over I_word, by the gamma/q recursion on prefixes.
double moment_a(const ChfifModel& model, std::span<const int> word);

/// int of f1 over I_word:
///   b_{r1..rm} = |I_rm| (int_{I_{r1..r(m-1)}} p_rm + beta_rm a_{r1..r(m-1)} + alpha_rm b_{r1..r(m-1)})
double moment_b(const ChfifModel& model, std::span<const int> word);

/// All a/b moments for words of length 0..depth. Words of length k are stored
/// at index sum_j (r_j - 1) N^(k-j), so r_1 is the most significant digit.
class MomentTable {
 public:
  MomentTable(const ChfifModel& model, int depth);

  int depth() const { return depth_; }
  std::size_t symbols() const { return n_; }

  std::size_t index_of(std::span<const int> word) const;
  Address word_at(int level, std::size_t index) const;

  double a(int level, std::size_t index) const { return a_[level][index]; }
  double b(int level, std::size_t index) const { return b_[level][index]; }
  const Interval& interval(int level, std::size_t index) const { return cells_[level][index]; }
  std::size_t count(int level) const { return b_[level].size(); }

  double a(std::span<const int> word) const { return a_[word.size()][index_of(word)]; }
  double b(std::span<const int> word) const { return b_[word.size()][index_of(word)]; }

 private:
  std::size_t n_ = 0;
  int depth_ = 0;
  std::vector<std::vector<double>> a_;
  std::vector<std::vector<double>> b_;
  std::vector<std::vector<Interval>> cells_;
};

/// Length-m word whose cell contains x, with left-closed cells and the last
/// cell closed on the right.
Address locate(const ChfifModel& model, int m, double x);

/// Q_m(f1, x) = b_w / |I_w| for the level-m cell w containing x.
double q_m_operator(const ChfifModel& model, int m, double x);

struct ConvergencePoint {
  int m = 0;
  double sup_error = 0.0;
};

/// sup over the level-probe_depth address grid of |Q_m(f1, x) - f1(x)| for
/// m = 1..m_max.
std::vector<ConvergencePoint> convergence_profile(const ChfifModel& model, int m_max,
                                                  int probe_depth, SampleLimits limits = {});

}  // namespace chfif
