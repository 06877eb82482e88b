#include "wtrace/quadrature.hpp"

#include "wtrace/errors.hpp"
#include "wtrace/piecewise_polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace wtrace {

namespace {

GaussRule compute_rule(int n) {
  // Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  GaussRule rule{eig.eigenvalues(), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes(i);
    double dp = 1.0;
    for (int iter = 0; iter < 3; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      x -= pn / dp;
    }
    rule.nodes(i) = x;
    rule.weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidInput("Gauss rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double gauss_integrate(const std::function<double(double)>& g, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) sum += rule.weights(i) * g(mid + half * rule.nodes(i));
  return half * sum;
}

namespace {

constexpr int kAdaptiveNodes = 10;

double adaptive_step(const std::function<double(double)>& g, double a, double b, double whole, double abs_tol,
                     int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_integrate(g, a, mid, kAdaptiveNodes);
  const double right = gauss_integrate(g, mid, b, kAdaptiveNodes);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= abs_tol) return refined;
  return adaptive_step(g, a, mid, left, 0.5 * abs_tol, depth - 1) +
         adaptive_step(g, mid, b, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& g, double a, double b, double abs_tol,
                          int max_depth) {
  if (!(b > a)) return 0.0;
  const double whole = gauss_integrate(g, a, b, kAdaptiveNodes);
  return adaptive_step(g, a, b, whole, abs_tol, max_depth);
}

std::vector<double> real_roots_in(const Eigen::VectorXd& c, double a, double b) {
  std::vector<double> roots;
  if (!(b > a)) return roots;
  // Work in u in [0, 1] with t = a + (b - a) u so coefficients are comparable.
  const double len = b - a;
  Eigen::VectorXd q = shift_origin(c, a);
  double scale = 1.0;
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    q(k) *= scale;
    scale *= len;
  }
  const double mag = q.cwiseAbs().maxCoeff();
  if (mag == 0.0) return roots;
  Eigen::Index deg = q.size() - 1;
  while (deg > 0 && std::abs(q(deg)) <= 1e-14 * mag) --deg;
  if (deg == 0) return roots;

  std::vector<double> candidates;
  if (deg == 1) {
    candidates.push_back(-q(0) / q(1));
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -q(i) / q(deg);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(companion, false);
    if (eig.info() != Eigen::Success) throw NumericalFailure("companion eigenvalue solve failed");
    for (Eigen::Index i = 0; i < deg; ++i) {
      const auto z = eig.eigenvalues()(i);
      if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real()))) candidates.push_back(z.real());
    }
  }
  const Eigen::VectorXd head = q.head(deg + 1);
  const Eigen::VectorXd dq = derivative_coefficients(head, 1);
  for (double u : candidates) {
    if (u < -1e-9 || u > 1.0 + 1e-9) continue;
    for (int iter = 0; iter < 4; ++iter) {
      const double d = horner(dq, u);
      if (d == 0.0) break;
      u -= horner(head, u) / d;
    }
    u = std::clamp(u, 0.0, 1.0);
    roots.push_back(a + len * u);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace wtrace
