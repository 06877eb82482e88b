#ifndef WTRACE_QUADRATURE_HPP
#define WTRACE_QUADRATURE_HPP

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace wtrace {

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Cached; nodes from the Golub-Welsch eigenproblem, polished by Newton
/// iteration on the Legendre recurrence.
const GaussRule& gauss_legendre(int n);

/// Integral of g over [a, b] with the n-point rule.
double gauss_integrate(const std::function<double(double)>& g, double a, double b, int n);

/// Adaptive bisection comparing a rule on [a, b] against its two halves
/// until the absolute discrepancy is below abs_tol.
double adaptive_integrate(const std::function<double(double)>& g, double a, double b, double abs_tol,
                          int max_depth = 40);

/// Real roots of sum_k c_k t^k inside [a, b], sorted ascending.
std::vector<double> real_roots_in(const Eigen::VectorXd& c, double a, double b);

}  // namespace wtrace

#endif  // WTRACE_QUADRATURE_HPP
