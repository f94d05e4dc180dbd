// Command-line front end: analyze curves or datasets, synthesize reference
// curves, trace the ENV index across truncations, and build curves from
// regression data.
//
// Exit codes: 0 success, 2 validation/usage error, 3 I/O error.

#include <cstddef>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <envsel/envsel.hpp>

namespace {

using namespace envsel;

struct AnalyzeConfig {
  std::string input;
  std::string kind = "curve";
  std::string form = "neg2loglik";
  std::string methods = "uaed";
  std::optional<std::size_t> n_override;
  std::vector<std::string> externals;
  std::string monotone = "strict";
  std::string out_report;
  std::string out_plot;
};

MonotonePolicy parse_policy(const std::string& s) {
  if (s == "strict") return MonotonePolicy::strict;
  if (s == "clamp") return MonotonePolicy::clamp;
  throw validation_error("--monotone must be 'strict' or 'clamp'");
}

CurveForm parse_form(const std::string& s) {
  if (s == "neg2loglik") return CurveForm::neg2loglik;
  if (s == "nlogmse") return CurveForm::n_log_mse;
  if (s == "mse") return CurveForm::mse;
  throw validation_error("--form must be neg2loglik, nlogmse, or mse");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument(what);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw validation_error(what + ": '" + s + "' is not a nonnegative integer");
  }
}

std::vector<PenaltySpec> parse_methods(const std::string& list, std::optional<std::size_t> n) {
  std::vector<PenaltySpec> specs;
  for (const std::string& token : split(list, ',')) {
    if (token.empty()) throw validation_error("--methods: empty method name");
    if (token == "uaed") {
      specs.push_back(PenaltySpec::uaed());
    } else if (token == "aic" || token == "bic" || token == "hqic") {
      if (!n) {
        throw validation_error("--methods " + token +
                               ": needs N (from the dataset, or --n asserting the curve is a "
                               "-2 log-likelihood over N points)");
      }
      if (token == "aic") specs.push_back(PenaltySpec::aic(*n));
      if (token == "bic") specs.push_back(PenaltySpec::bic(*n));
      if (token == "hqic") specs.push_back(PenaltySpec::hqic(*n));
    } else if (token.rfind("custom:", 0) == 0) {
      try {
        specs.push_back(PenaltySpec::custom(std::stod(token.substr(7))));
      } catch (const validation_error&) {
        throw;
      } catch (const std::exception&) {
        throw validation_error("--methods: bad slope in '" + token + "'");
      }
    } else {
      throw validation_error("--methods: unknown method '" + token + "'");
    }
  }
  return specs;
}

std::vector<ExternalDecision> parse_externals(const std::vector<std::string>& raw) {
  std::vector<ExternalDecision> out;
  for (const std::string& token : raw) {
    const std::size_t pos = token.rfind(':');
    if (pos == std::string::npos || pos == 0) {
      throw validation_error("--external expects '<label>:<k>', got '" + token + "'");
    }
    out.push_back({token.substr(0, pos), parse_count(token.substr(pos + 1), "--external k")});
  }
  return out;
}

void print_summary(const ConfidenceReport& report) {
  auto show = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return std::string(buf);
  };
  std::printf("curve: K=%zu  v0=%.6g\n", report.K, report.v0);
  std::printf("ENV index: %.6g   suggested k*: %zu   area: %.6g\n", report.env.i_env,
              report.env.suggested, report.env.a_hat);
  std::printf("%-10s %-12s %5s %9s %12s %7s\n", "method", "lambda", "k_e", "ci(k_e)",
              "ci(k_e-1)", "r_d");
  for (const MethodEntry& m : report.methods) {
    if (m.error) {
      std::printf("%-10s failed: %s\n", m.name.c_str(), m.error->c_str());
      continue;
    }
    std::printf("%-10s %-12.6g %5zu %9s %12s %7s%s\n", m.name.c_str(), m.lambda, m.k_e,
                show(m.ci_at_ke).c_str(), show(m.ci_at_ke_minus_1).c_str(), show(m.r_d).c_str(),
                m.degenerate ? "  (all-zero curve)" : "");
  }
  for (const ExternalEntry& x : report.external) {
    std::printf("%-10s %-12s %5zu %9s %12s %7s\n", x.label.c_str(), "-", x.k_e,
                show(x.ci).c_str(), "-", show(x.r_d).c_str());
  }
}

int cmd_analyze(const AnalyzeConfig& cfg) {
  std::optional<std::size_t> n = cfg.n_override;
  std::optional<ErrorCurve> curve;
  if (cfg.kind == "curve") {
    curve = normalize(RawCurve(read_curve_csv(cfg.input), parse_policy(cfg.monotone)));
  } else if (cfg.kind == "dataset") {
    const Dataset data = read_dataset_csv(cfg.input);
    const CurveForm form = parse_form(cfg.form);
    if (form == CurveForm::mse &&
        (cfg.methods.find("aic") != std::string::npos ||
         cfg.methods.find("bic") != std::string::npos ||
         cfg.methods.find("hqic") != std::string::npos)) {
      throw validation_error(
          "aic/bic/hqic need a log-likelihood-scale curve; use --form neg2loglik or nlogmse");
    }
    const RankedFeatures ranking = forward_rank(data);
    for (const std::string& w : ranking.warnings) std::cerr << "warning: " << w << "\n";
    curve = normalize(curve_from_dataset(data, ranking, form));
    if (!n) n = data.n_rows;
  } else {
    throw validation_error("--kind must be 'curve' or 'dataset'");
  }

  const std::vector<PenaltySpec> methods = parse_methods(cfg.methods, n);
  const std::vector<ExternalDecision> externals = parse_externals(cfg.externals);
  const ConfidenceReport report = build_report(*curve, methods, externals);
  write_report_json(cfg.out_report, report);
  if (!cfg.out_plot.empty()) write_plot_csv(cfg.out_plot, *curve, report);
  print_summary(report);
  return 0;
}

int cmd_synth(const std::string& kind, double rate, std::size_t K, std::size_t k_star,
              double v0, const std::string& out) {
  std::optional<ErrorCurve> curve;
  if (kind == "exponential") {
    curve = synth_exponential(rate, K);
  } else if (kind == "single-step") {
    curve = synth_ideal(IdealKind::single_step, K, 1, v0);
  } else if (kind == "linear-full") {
    curve = synth_ideal(IdealKind::linear_full, K, 1, v0);
  } else if (kind == "linear-to-kstar") {
    curve = synth_ideal(IdealKind::linear_to_kstar, K, k_star, v0);
  } else {
    throw validation_error("--kind must be exponential, single-step, linear-full, or "
                           "linear-to-kstar");
  }
  write_curve_csv(out, curve->values());
  std::printf("wrote %s (K=%zu)\n", out.c_str(), curve->K());
  return 0;
}

int cmd_trace(const std::string& input, const std::string& ks_list,
              const std::string& monotone, const std::string& out) {
  std::vector<std::size_t> ks;
  for (const std::string& token : split(ks_list, ',')) {
    ks.push_back(parse_count(token, "--ks"));
  }
  const RawCurve raw(read_curve_csv(input), parse_policy(monotone));
  const std::vector<TracePoint> trace = env_trace(raw, ks);
  write_trace_csv(out, trace);
  std::printf("%8s %12s\n", "K", "i_env");
  for (const TracePoint& p : trace) std::printf("%8zu %12.6g\n", p.K, p.i_env);
  return 0;
}

int cmd_build_curve(const std::string& input, const std::string& form_name,
                    const std::string& out, std::string ranking_out) {
  const Dataset data = read_dataset_csv(input);
  const CurveForm form = parse_form(form_name);
  const RankedFeatures ranking = forward_rank(data);
  for (const std::string& w : ranking.warnings) std::cerr << "warning: " << w << "\n";
  const RawCurve raw = curve_from_dataset(data, ranking, form);
  write_curve_csv(out, raw.values());
  if (ranking_out.empty()) ranking_out = out + ".ranking.csv";
  const ImportanceProfile imp = importance(normalize(raw));
  write_ranking_csv(ranking_out, ranking, data.names,
                    imp.w_bar ? std::span<const double>(*imp.w_bar)
                              : std::span<const double>());
  std::printf("wrote %s and %s (K_full=%zu)\n", out.c_str(), ranking_out.c_str(),
              data.n_features);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-order selection on non-increasing error curves"};
  app.require_subcommand(1);

  AnalyzeConfig acfg;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Run selection methods and confidence measures on a curve or dataset");
  analyze->add_option("--input", acfg.input, "Curve CSV (k,v) or dataset CSV")->required();
  analyze->add_option("--kind", acfg.kind, "Input kind: curve|dataset (default curve)");
  analyze->add_option("--form", acfg.form,
                      "Curve built from a dataset: neg2loglik|nlogmse|mse (default neg2loglik)");
  analyze->add_option("--methods", acfg.methods,
                      "Comma list: aic,bic,hqic,uaed,custom:<lambda> (default uaed)");
  analyze->add_option("--n", acfg.n_override,
                      "Data count N backing a raw curve (required for aic/bic/hqic on curves)");
  analyze->add_option("--external", acfg.externals,
                      "Score an external decision '<label>:<k>' (repeatable)");
  analyze->add_option("--monotone", acfg.monotone, "Violation handling: strict|clamp");
  analyze->add_option("--out-report", acfg.out_report, "Report JSON path")->required();
  analyze->add_option("--out-plot", acfg.out_plot, "Plot-ready CSV path");

  std::string synth_kind;
  double synth_rate = 0.1;
  std::size_t synth_K = 0;
  std::size_t synth_kstar = 1;
  double synth_v0 = 1.0;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic curve CSV");
  synth->add_option("--kind", synth_kind,
                    "exponential|single-step|linear-full|linear-to-kstar")
      ->required();
  synth->add_option("--rate", synth_rate, "Decay rate for exponential (default 0.1)");
  synth->add_option("--K", synth_K, "Largest model size K")->required();
  synth->add_option("--kstar", synth_kstar, "Zero-crossing for linear-to-kstar");
  synth->add_option("--v0", synth_v0, "Curve height V(0) for ideal kinds (default 1)");
  synth->add_option("--out", synth_out, "Output curve CSV")->required();

  std::string trace_input, trace_ks, trace_out, trace_monotone = "strict";
  CLI::App* trace = app.add_subcommand(
      "trace", "ENV index of truncated prefixes V'(0..K) for each requested K");
  trace->add_option("--input", trace_input, "Curve CSV (k,v)")->required();
  trace->add_option("--ks", trace_ks, "Comma list of truncation points K")->required();
  trace->add_option("--monotone", trace_monotone, "Violation handling: strict|clamp");
  trace->add_option("--out", trace_out, "Output trace CSV (K,i_env)")->required();

  std::string bc_input, bc_form = "neg2loglik", bc_out, bc_ranking;
  CLI::App* build = app.add_subcommand(
      "build-curve", "Rank features and write the nested-model error curve for a dataset");
  build->add_option("--input", bc_input, "Dataset CSV (features + target)")->required();
  build->add_option("--form", bc_form, "neg2loglik|nlogmse|mse (default neg2loglik)");
  build->add_option("--out", bc_out, "Output curve CSV")->required();
  build->add_option("--ranking", bc_ranking,
                    "Ranking sidecar CSV path (default <out>.ranking.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(acfg);
    if (synth->parsed()) return cmd_synth(synth_kind, synth_rate, synth_K, synth_kstar,
                                          synth_v0, synth_out);
    if (trace->parsed()) return cmd_trace(trace_input, trace_ks, trace_monotone, trace_out);
    if (build->parsed()) return cmd_build_curve(bc_input, bc_form, bc_out, bc_ranking);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
