#include "wtrace/sampled_function.hpp"

#include "wtrace/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace wtrace {

SampledFunction::SampledFunction(Eigen::VectorXd points, Eigen::VectorXd values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (points_.size() == 0) throw InvalidInput("sampled function needs at least one point");
  if (points_.size() != values_.size())
    throw InvalidInput("points and values differ in length (" + std::to_string(points_.size()) + " vs " +
                       std::to_string(values_.size()) + ")");
  for (Eigen::Index i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_(i)) || !std::isfinite(values_(i)))
      throw InvalidInput("non-finite coordinate or value at index " + std::to_string(i));
  }
  for (Eigen::Index i = 0; i + 1 < points_.size(); ++i) {
    if (!(points_(i + 1) - points_(i) >= kMinSeparation))
      throw InvalidInput("points must be strictly increasing with separation >= 1e-12 (index " +
                         std::to_string(i) + ")");
  }
}

SampledFunction::SampledFunction(const std::vector<double>& points, const std::vector<double>& values)
    : SampledFunction(Eigen::Map<const Eigen::VectorXd>(points.data(), static_cast<Eigen::Index>(points.size())),
                      Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()))) {}

double SampledFunction::min_gap() const {
  if (size() < 2) return std::numeric_limits<double>::infinity();
  const Eigen::Index n = size() - 1;
  return (points_.tail(n) - points_.head(n)).minCoeff();
}

SampledFunction SampledFunction::restrict_to(const std::vector<Eigen::Index>& indices) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(indices.size()));
  Eigen::VectorXd y(x.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const Eigen::Index i = indices[j];
    if (i < 0 || i >= size()) throw InvalidInput("subset index out of range");
    x(static_cast<Eigen::Index>(j)) = points_(i);
    y(static_cast<Eigen::Index>(j)) = values_(i);
  }
  return {std::move(x), std::move(y)};
}

SampledFunction SampledFunction::scaled(double alpha) const { return {points_, alpha * values_}; }

}  // namespace wtrace
