#ifndef WTRACE_SAMPLED_FUNCTION_HPP
#define WTRACE_SAMPLED_FUNCTION_HPP

#include <Eigen/Core>

#include <initializer_list>
#include <limits>
#include <vector>

namespace wtrace {

/// Coordinates closer than this are rejected as duplicates.
inline constexpr double kMinSeparation = 1e-12;

/// A function f on a finite set E = {x_0 < ... < x_n} of the real line.
///
/// The ordering is validated at construction and never repaired: unsorted or
/// (near-)duplicate coordinates raise InvalidInput.
class SampledFunction {
 public:
  SampledFunction(Eigen::VectorXd points, Eigen::VectorXd values);
  SampledFunction(const std::vector<double>& points, const std::vector<double>& values);
  SampledFunction(std::initializer_list<double> points, std::initializer_list<double> values)
      : SampledFunction(std::vector<double>(points), std::vector<double>(values)) {}

  Eigen::Index size() const { return points_.size(); }
  const Eigen::VectorXd& points() const { return points_; }
  const Eigen::VectorXd& values() const { return values_; }

  double diameter() const { return points_(size() - 1) - points_(0); }
  /// Smallest consecutive gap; +inf for a single point.
  double min_gap() const;
  double max_abs_value() const { return values_.cwiseAbs().maxCoeff(); }

  /// Restriction of f to the listed (strictly increasing) indices.
  SampledFunction restrict_to(const std::vector<Eigen::Index>& indices) const;

  SampledFunction scaled(double alpha) const;

 private:
  Eigen::VectorXd points_;
  Eigen::VectorXd values_;
};

/// A nonnegative gap length that may be +inf. Differences x_j - x_i with j
/// past the end of the sequence (or i before its start) are +inf.
struct ExtendedGap {
  double value = 0.0;

  static ExtendedGap infinite() { return {std::numeric_limits<double>::infinity()}; }
  bool is_infinite() const { return value == std::numeric_limits<double>::infinity(); }

  /// min{1, gap}; exactly 1 for the +inf sentinel.
  double capped() const { return value < 1.0 ? value : 1.0; }

  /// x_hi - x_lo over the index range of `points`, with out-of-range indices
  /// mapped to the +inf sentinel.
  template <typename Derived>
  static ExtendedGap between(const Eigen::MatrixBase<Derived>& points, Eigen::Index lo, Eigen::Index hi) {
    if (lo < 0 || hi >= points.size()) return infinite();
    return {points(hi) - points(lo)};
  }
};

}  // namespace wtrace

#endif  // WTRACE_SAMPLED_FUNCTION_HPP
