#ifndef WTRACE_PIECEWISE_POLYNOMIAL_HPP
#define WTRACE_PIECEWISE_POLYNOMIAL_HPP

#include <Eigen/Core>

namespace wtrace {

/// Horner evaluation of sum_k c_k t^k.
template <typename Derived>
typename Derived::Scalar horner(const Eigen::MatrixBase<Derived>& c, typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  Scalar acc(0);
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * t + c(k);
  return acc;
}

/// Coefficients of the r-th derivative of sum_k c_k t^k (same length, zero padded).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> derivative_coefficients(const Eigen::MatrixBase<Derived>& c,
                                                                                  int r) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = c.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  for (Eigen::Index k = r; k < n; ++k) {
    Scalar factor(1);
    for (Eigen::Index j = k - r + 1; j <= k; ++j) factor *= Scalar(j);
    d(k - r) = factor * c(k);
  }
  return d;
}

/// Coefficients of q(t) = p(t + delta), i.e. p re-centered at a new origin.
Eigen::VectorXd shift_origin(const Eigen::VectorXd& c, double delta);

/// A function on the whole line that is polynomial on each interval
/// [b_j, b_{j+1}) and on the two tails (-inf, b_0) and [b_last, +inf).
///
/// Piece j is stored in the local coordinate t = x - b_j, the left tail in
/// t = x - b_0 and the right tail in t = x - b_last. Every part shares the
/// same coefficient count D + 1; evaluation is right-continuous.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(Eigen::VectorXd breakpoints, Eigen::MatrixXd coeffs, Eigen::VectorXd left_tail,
                      Eigen::VectorXd right_tail);

  /// Piecewise polynomial with identically zero tails.
  static PiecewisePolynomial with_zero_tails(Eigen::VectorXd breakpoints, Eigen::MatrixXd coeffs);

  /// The single polynomial sum_k c_k (x - origin)^k, represented on
  /// [origin, origin + span] with matching tails.
  static PiecewisePolynomial global(const Eigen::VectorXd& coeffs, double origin, double span = 1.0);

  static PiecewisePolynomial zero(double lo, double hi);

  double operator()(double x) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& xs) const;

  /// Coefficient bound D (the stored degree, not the exact degree).
  int degree() const { return static_cast<int>(coeffs_.cols()) - 1; }
  Eigen::Index pieces() const { return coeffs_.rows(); }

  const Eigen::VectorXd& breakpoints() const { return breakpoints_; }
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }
  const Eigen::VectorXd& left_tail() const { return left_tail_; }
  const Eigen::VectorXd& right_tail() const { return right_tail_; }

  bool tails_vanish() const { return left_tail_.isZero(0.0) && right_tail_.isZero(0.0); }

  /// Index of the piece containing x: -1 for the left tail, pieces() for the right.
  Eigen::Index locate(double x) const;

 private:
  Eigen::VectorXd breakpoints_;
  Eigen::MatrixXd coeffs_;
  Eigen::VectorXd left_tail_;
  Eigen::VectorXd right_tail_;
};

inline double evaluate(const PiecewisePolynomial& F, double x) { return F(x); }

/// F^(order); breakpoints are preserved, the coefficient bound drops by `order` (never below 0).
PiecewisePolynomial differentiate(const PiecewisePolynomial& F, int order = 1);

/// Largest r such that the one-sided derivatives of orders 0..r agree at every
/// breakpoint (tail joins included) within tol * (1 + local magnitude).
/// Returns degree() when every stored order agrees and -1 when F jumps.
int smoothness_order(const PiecewisePolynomial& F, double tol);

}  // namespace wtrace

#endif  // WTRACE_PIECEWISE_POLYNOMIAL_HPP
