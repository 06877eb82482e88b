#include "wtrace/cli.hpp"

#include "wtrace/corpus.hpp"
#include "wtrace/errors.hpp"
#include "wtrace/sharp_maximal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

namespace wtrace::cli {

Command parse_command(const std::string& name) {
  if (name == "check") return Command::check;
  if (name == "extend") return Command::extend;
  if (name == "maximal") return Command::maximal;
  if (name == "compare") return Command::compare;
  throw InvalidInput("unknown command '" + name + "' (expected check, extend, maximal or compare)");
}

ExtensionConfig JobSpec::extension_config() const {
  ExtensionConfig cfg = ExtensionConfig::for_order(m, p, backend);
  if (window_pad) cfg.window_pad = *window_pad;
  cfg.quad_tol = tol;
  return cfg;
}

void JobSpec::validate() const {
  if (m < 1) throw InvalidInput("--m must be a positive integer");
  require_exponent(p);
  if (!(grid_h > 0.0)) throw InvalidInput("--grid-h must be positive");
  if (!(tol > 0.0)) throw InvalidInput("--tol must be positive");
  if (count < 1) throw InvalidInput("--count must be positive");
  if (command != Command::compare && input.empty()) throw InvalidInput("--input is required");
  if (command != Command::check && out.empty()) throw InvalidInput("--out is required for this command");
  extension_config().validate();
}

namespace {

Json skipped(const std::string& reason) {
  Json j;
  j["skipped"] = reason;
  return j;
}

std::string csv_row(const std::vector<double>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += format_number(cells[i]);
  }
  return row + '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write output file '" + path + "'");
  f << content;
}

}  // namespace

Json cmd_check(const JobSpec& job, const SampledFunction& s) {
  const int m = job.m;
  const double p = job.p;
  const bool small = s.size() <= m;
  const bool enumerable = s.size() <= kEnumerationCap;

  Json report;
  report["command"] = "check";
  report["m"] = m;
  report["p"] = exponent_to_json(p);
  report["n_points"] = s.size();
  report["effective_order"] = effective_order(s, m);
  report["route"] = small ? "small_set" : "general";
  Json conventions;
  conventions["index_past_end"] = "x_i = +inf for i > n, so min{1, x_{i+m} - x_i} = 1";
  conventions["p_infinity"] = "sup over windows (sequence) or all subsets (variational); no weights";
  conventions["enumeration_cap"] = kEnumerationCap;
  if (small) conventions["small_set"] = "#E <= m: trace space equals that of W^n_inf with n = #E - 1";
  report["conventions"] = conventions;

  Json f;
  f["sequence"] = to_json(sequence_functional(s, m, p));
  if (!enumerable)
    f["variational"] = skipped("#E exceeds the enumeration cap of 20");
  else if (small && !std::isinf(p))
    f["variational"] = skipped("#E <= m: the variational functional needs #E >= m + 1");
  else
    f["variational"] = to_json(variational_functional(s, m, p));
  if (small) {
    f["homogeneous_sequence"] = skipped("#E <= m");
    f["homogeneous_variational"] = skipped("#E <= m");
    f["small_set"] = to_json(small_set_functional(s, m, p));
  } else {
    f["homogeneous_sequence"] = to_json(homogeneous_sequence_functional(s, m, p));
    f["homogeneous_variational"] = enumerable ? to_json(homogeneous_variational_functional(s, m, p))
                                              : skipped("#E exceeds the enumeration cap of 20");
  }
  if (std::isinf(p))
    f["sharp_maximal"] = skipped("defined for finite p only");
  else if (!enumerable)
    f["sharp_maximal"] = skipped("#E exceeds the enumeration cap of 20");
  else
    f["sharp_maximal"] = to_json(wmf_functional(s, m, p, GridSpec{job.grid_h, 0.0}));
  report["functionals"] = f;
  return report;
}

ExtendOutput cmd_extend(const JobSpec& job, const SampledFunction& s) {
  const ExtensionConfig cfg = job.extension_config();
  const PiecewisePolynomial F = extend(s, cfg);
  const NormReport norms = sobolev_norm(F, cfg.m, cfg.p, cfg.quad_tol);

  ExtendOutput out;
  Json& j = out.spline;
  j["command"] = "extend";
  j["m"] = cfg.m;
  j["p"] = exponent_to_json(cfg.p);
  j["backend"] = to_string(cfg.backend);
  j["window_pad"] = cfg.window_pad;
  j["spline"] = to_json(F);
  j["norms"] = to_json(norms);
  j["interpolation_residual"] = interpolation_residual(s, F);
  j["smoothness_order"] = smoothness_order(F, cfg.smoothness_tol);

  std::vector<PiecewisePolynomial> derivs{F};
  for (int k = 1; k <= cfg.m; ++k) derivs.push_back(differentiate(derivs.back()));
  std::string csv = "x,F";
  for (int k = 1; k <= cfg.m; ++k) csv += ",F" + std::to_string(k);
  csv += '\n';
  const double lo = s.points()(0) - cfg.window_pad;
  const double hi = s.points()(s.size() - 1) + cfg.window_pad;
  const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / job.grid_h - 1e-9)));
  std::vector<double> row(static_cast<std::size_t>(cfg.m) + 2);
  for (int i = 0; i <= steps; ++i) {
    const double x = lo + (hi - lo) * i / steps;
    row[0] = x;
    for (int k = 0; k <= cfg.m; ++k) row[static_cast<std::size_t>(k) + 1] = derivs[static_cast<std::size_t>(k)](x);
    csv += csv_row(row);
  }
  out.samples = std::move(csv);
  return out;
}

MaximalOutput cmd_maximal(const JobSpec& job, const SampledFunction& s) {
  if (std::isinf(job.p)) throw Unsupported("the maximal command needs a finite p");
  const GridSpec grid{job.grid_h, 0.0};
  std::vector<MaximalProfile> profiles;
  for (int k = 0; k <= job.m; ++k) profiles.push_back(sharp_profile(s, job.m, k, grid));
  MaximalOutput out;
  std::string csv = "x";
  for (int k = 0; k <= job.m; ++k) csv += ",f_sharp_" + std::to_string(k);
  csv += '\n';
  std::vector<double> row(static_cast<std::size_t>(job.m) + 2);
  for (Eigen::Index c = 0; c < profiles.front().grid.size(); ++c) {
    row[0] = profiles.front().grid(c);
    for (int k = 0; k <= job.m; ++k) row[static_cast<std::size_t>(k) + 1] = profiles[static_cast<std::size_t>(k)].values(c);
    csv += csv_row(row);
  }
  out.profiles = std::move(csv);
  for (const auto& profile : profiles) out.wmf += root_p(profile.integral_of_power(job.p), job.p);
  return out;
}

std::string cmd_compare(const JobSpec& job) {
  CorpusSpec spec;
  spec.seed = job.seed;
  spec.count = job.count;
  spec.orders = {job.m};
  spec.exponents = {job.p};
  const std::vector<CorpusInstance> corpus = random_corpus(spec);
  const bool finite = !std::isinf(job.p);
  const auto nan = std::numeric_limits<double>::quiet_NaN();

  const std::vector<std::string> ratio_names{"seq_over_var", "hermite_over_seq", "natural2_over_seq",
                                             "wmf_over_seq"};
  std::vector<double> lo(ratio_names.size(), kInfinity);
  std::vector<double> hi(ratio_names.size(), -kInfinity);

  std::ostringstream csv;
  csv << "id,m,p,length,n_points,sequence,variational,hermite_w,natural2_w,wmf";
  for (const auto& name : ratio_names) csv << ',' << name;
  csv << ",necessity_hermite,necessity_natural2\n";
  for (const CorpusInstance& inst : corpus) {
    const SampledFunction& s = inst.data;
    const double seq = sequence_functional(s, inst.m, inst.p).value;
    const bool var_defined = !finite || s.size() >= inst.m + 1;
    const double var = var_defined ? variational_functional(s, inst.m, inst.p).value : nan;
    ExtensionConfig cfg = job.extension_config();
    cfg.backend = Backend::hermite;
    const PiecewisePolynomial Fh = extend(s, cfg);
    cfg.backend = Backend::natural2;
    const PiecewisePolynomial Fn = extend(s, cfg);
    const NecessityReport nh = verify_necessity(s, Fh, inst.m, inst.p, cfg.quad_tol);
    const NecessityReport nn = verify_necessity(s, Fn, inst.m, inst.p, cfg.quad_tol);
    const double wmf = finite ? wmf_functional(s, inst.m, inst.p, GridSpec{job.grid_h, 0.0}).value : nan;
    const std::vector<double> ratios{seq / var, nh.sobolev / seq, nn.sobolev / seq, finite ? wmf / seq : nan};
    csv << inst.id << ',' << inst.m << ',' << format_number(inst.p) << ',' << format_number(inst.length) << ','
        << s.size() << ',' << format_number(seq) << ',' << format_number(var) << ',' << format_number(nh.sobolev)
        << ',' << format_number(nn.sobolev) << ',' << format_number(wmf);
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      csv << ',' << format_number(ratios[r]);
      if (!std::isnan(ratios[r])) {
        lo[r] = std::min(lo[r], ratios[r]);
        hi[r] = std::max(hi[r], ratios[r]);
      }
    }
    csv << ',' << (nh.pass ? "pass" : "fail") << ',' << (nn.pass ? "pass" : "fail") << '\n';
  }
  for (const auto& [label, bound] : {std::pair{"min", &lo}, std::pair{"max", &hi}}) {
    csv << label << ",,,,,,,,,";
    for (double v : *bound) csv << ',' << format_number(v);
    csv << ",,\n";
  }
  return csv.str();
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    job.validate();
    switch (job.command) {
      case Command::check: {
        const std::string text = cmd_check(job, read_sampled_function(job.input)).dump(2) + "\n";
        if (job.out.empty())
          out << text;
        else
          write_file(job.out, text);
        break;
      }
      case Command::extend: {
        const ExtendOutput result = cmd_extend(job, read_sampled_function(job.input));
        write_file(job.out + ".json", result.spline.dump(2) + "\n");
        write_file(job.out + ".csv", result.samples);
        Json summary;
        summary["spline"] = job.out + ".json";
        summary["samples"] = job.out + ".csv";
        summary["w_norm"] = result.spline["norms"]["w_norm"];
        out << summary.dump() << "\n";
        break;
      }
      case Command::maximal: {
        const MaximalOutput result = cmd_maximal(job, read_sampled_function(job.input));
        write_file(job.out, result.profiles);
        Json summary;
        summary["profiles"] = job.out;
        summary["wmf"] = result.wmf;
        out << summary.dump() << "\n";
        break;
      }
      case Command::compare: {
        write_file(job.out, cmd_compare(job));
        Json summary;
        summary["ratios"] = job.out;
        out << summary.dump() << "\n";
        break;
      }
    }
    return kSuccess;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Trace-norm functionals and C^{m-1} extensions for W^m_p(R) on finite sets"};
  JobSpec job;
  std::string command = "check";
  std::string p_text = "2";
  std::string backend = "hermite";
  double window_pad = 0.0;
  app.add_option("--input", job.input, "Input file: JSON {points, values} or two-column CSV");
  app.add_option("--command", command, "check | extend | maximal | compare")->required();
  app.add_option("--m", job.m, "Smoothness order m >= 1");
  app.add_option("--p", p_text, "Exponent p > 1, or inf");
  app.add_option("--backend", backend, "Extension backend: hermite | natural2");
  auto* pad_opt = app.add_option("--window-pad", window_pad, "Truncation window pad (>= 3(m+2))");
  app.add_option("--out", job.out, "Output path");
  app.add_option("--seed", job.seed, "Seed for the compare corpus");
  app.add_option("--grid-h", job.grid_h, "Grid spacing for profiles and samples");
  app.add_option("--tol", job.tol, "Quadrature tolerance");
  app.add_option("--count", job.count, "Number of compare corpus instances");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }
  try {
    job.command = parse_command(command);
    job.p = parse_exponent(p_text);
    job.backend = parse_backend(backend);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (pad_opt->count() > 0) job.window_pad = window_pad;
  return run(job, std::cout, std::cerr);
}

}  // namespace wtrace::cli
