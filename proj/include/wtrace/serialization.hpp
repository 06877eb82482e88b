#ifndef WTRACE_SERIALIZATION_HPP
#define WTRACE_SERIALIZATION_HPP

#include "wtrace/piecewise_polynomial.hpp"
#include "wtrace/sampled_function.hpp"
#include "wtrace/spline_engine.hpp"
#include "wtrace/trace_functionals.hpp"

#include <json.hpp>

#include <string>

namespace wtrace {

using Json = nlohmann::ordered_json;

/// {"breakpoints": [...], "coeffs": [[...], ...], "left_tail": [...], "right_tail": [...]}.
/// Doubles are written in shortest round-trip form, so reading back is bit-exact.
Json to_json(const PiecewisePolynomial& F);
PiecewisePolynomial piecewise_from_json(const Json& j);

Json to_json(const FunctionalReport& report);
Json to_json(const NormReport& report);

/// p as a JSON value: a number, or the string "inf".
Json exponent_to_json(double p);
/// Parses "inf" / "infinity" or a decimal number.
double parse_exponent(const std::string& text);

/// {"points": [...], "values": [...]}.
SampledFunction sampled_from_json_text(const std::string& text);
/// Two comma-separated columns (point, value), optional header row.
SampledFunction sampled_from_csv_text(const std::string& text);
/// Dispatches on the first non-blank character ('{' means JSON).
SampledFunction read_sampled_function(const std::string& path);

/// Decimal with 17 significant digits ("inf"/"-inf"/"nan" for non-finite values).
std::string format_number(double v);

}  // namespace wtrace

#endif  // WTRACE_SERIALIZATION_HPP
