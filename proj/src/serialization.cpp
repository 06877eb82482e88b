#include "wtrace/serialization.hpp"

#include "wtrace/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace wtrace {

namespace {

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw InvalidInput(std::string("field '") + field + "' must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidInput(std::string("field '") + field + "' must contain only numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

const Json& require_field(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) throw InvalidInput(std::string("missing field '") + field + "'");
  return j.at(field);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(t, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == t.size();
}

}  // namespace

Json to_json(const PiecewisePolynomial& F) {
  Json j;
  j["breakpoints"] = vector_to_json(F.breakpoints());
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < F.pieces(); ++r) rows.push_back(vector_to_json(F.coeffs().row(r).transpose()));
  j["coeffs"] = rows;
  j["left_tail"] = vector_to_json(F.left_tail());
  j["right_tail"] = vector_to_json(F.right_tail());
  return j;
}

PiecewisePolynomial piecewise_from_json(const Json& j) {
  Eigen::VectorXd bp = vector_from_json(require_field(j, "breakpoints"), "breakpoints");
  const Json& rows = require_field(j, "coeffs");
  if (!rows.is_array() || rows.empty()) throw InvalidInput("field 'coeffs' must be a nonempty array of rows");
  const Eigen::Index width = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Eigen::VectorXd row = vector_from_json(rows[r], "coeffs");
    if (row.size() != width) throw InvalidInput("coefficient rows must have equal length");
    coeffs.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return {std::move(bp), std::move(coeffs), vector_from_json(require_field(j, "left_tail"), "left_tail"),
          vector_from_json(require_field(j, "right_tail"), "right_tail")};
}

Json exponent_to_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

double parse_exponent(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "Inf" || t == "infinity") return kInfinity;
  double p = 0.0;
  if (!parse_double(t, p) || !std::isfinite(p)) throw InvalidInput("cannot parse exponent p from '" + text + "'");
  return p;
}

Json to_json(const FunctionalReport& report) {
  Json j;
  j["kind"] = to_string(report.kind);
  j["m"] = report.m;
  j["p"] = exponent_to_json(report.p);
  j["value"] = report.value;
  j["effective_order"] = report.effective_order;
  return j;
}

Json to_json(const NormReport& report) {
  Json j;
  j["lp_norms"] = vector_to_json(report.lp_norms);
  j["w_norm"] = report.w_norm;
  j["l_homog"] = report.l_homog;
  return j;
}

SampledFunction sampled_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON input: ") + e.what());
  }
  return {vector_from_json(require_field(j, "points"), "points"), vector_from_json(require_field(j, "values"), "values")};
}

SampledFunction sampled_from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> points;
  std::vector<double> values;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    double x = 0.0;
    double y = 0.0;
    const bool ok = comma != std::string::npos && line.find(',', comma + 1) == std::string::npos &&
                    parse_double(line.substr(0, comma), x) && parse_double(line.substr(comma + 1), y);
    if (!ok) {
      if (first) {
        first = false;
        continue;  // header row
      }
      throw InvalidInput("malformed CSV row " + std::to_string(line_no) + ": expected 'point,value'");
    }
    first = false;
    points.push_back(x);
    values.push_back(y);
  }
  return {points, values};
}

SampledFunction read_sampled_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::string t = trim(text);
  if (t.empty()) throw InvalidInput("input file '" + path + "' is empty");
  return t.front() == '{' ? sampled_from_json_text(text) : sampled_from_csv_text(text);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace wtrace
