#ifndef WTRACE_SPLINE_ENGINE_HPP
#define WTRACE_SPLINE_ENGINE_HPP

#include "wtrace/piecewise_polynomial.hpp"
#include "wtrace/sampled_function.hpp"

#include <Eigen/Core>

namespace wtrace {

inline constexpr double kDefaultQuadTol = 1e-10;

/// ||F||_{L^p(R)} for p in [1, inf]. Even integer p uses an exact Gauss rule
/// per piece; other finite p integrates |F|^p adaptively between the real
/// roots of each piece; p = inf scans endpoints and critical points.
/// Throws PreconditionError when a tail makes the norm infinite.
double lp_norm(const PiecewisePolynomial& F, double p, double quad_tol = kDefaultQuadTol);

struct NormReport {
  Eigen::VectorXd lp_norms;  // ||F^(k)||_p, k = 0..m
  double w_norm = 0.0;       // sum_k ||F^(k)||_p
  double l_homog = 0.0;      // ||F^(m)||_p
};

NormReport sobolev_norm(const PiecewisePolynomial& F, int m, double p, double quad_tol = kDefaultQuadTol);

/// End treatment for the interpolating spline of degree 2m - 1.
enum class SplineEnd {
  natural,         // F^(k) = 0 for k = m..2m-2; tail continues as a degree <= m-1 polynomial
  clamped_to_zero  // F^(k) = 0 for k = 1..m-1 (with a zero data value); tail identically zero
};

/// The degree 2m - 1 spline that interpolates (knots, values), is C^{2m-2}
/// at interior knots and satisfies the requested end conditions. Among all
/// such interpolants it minimizes the integral of |F^(m)|^2.
/// Requires at least two knots.
PiecewisePolynomial interpolating_spline(const SampledFunction& s, int m, SplineEnd left, SplineEnd right);

struct MinimalEnergySpline {
  PiecewisePolynomial spline;
  double energy = 0.0;  // integral over R of |F^(m)|^2
};

/// Minimizer of the integral of |F^(m)|^2 over R among interpolants of s.
/// For #E <= m the minimizer is the Lagrange polynomial with energy 0.
MinimalEnergySpline natural_spline_min_energy(const SampledFunction& s, int m);

}  // namespace wtrace

#endif  // WTRACE_SPLINE_ENGINE_HPP
