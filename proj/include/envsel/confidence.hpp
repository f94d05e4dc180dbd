#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <envsel/criteria.hpp>
#include <envsel/curve.hpp>
#include <envsel/env.hpp>

namespace envsel {

// Per-component importance: w[i] = V(i) - V(i+1), the drop attributed to the
// (i+1)-th ranked component. The weights sum to V(0). w_bar = w / V(0) is
// only defined for V(0) != 0.
struct ImportanceProfile {
  std::vector<double> w;
  std::optional<std::vector<double>> w_bar;
};

inline ImportanceProfile importance(const ErrorCurve& curve) {
  ImportanceProfile p;
  p.w.resize(curve.K());
  for (std::size_t k = 1; k <= curve.K(); ++k) p.w[k - 1] = curve[k - 1] - curve[k];
  if (curve.v0() != 0.0) {
    std::vector<double> bar(p.w);
    for (double& x : bar) x /= curve.v0();
    p.w_bar = std::move(bar);
  }
  return p;
}

// CI(k) = 1 - V(k)/V(0): importance accumulated by the first k components.
inline double cumulative_importance(const ErrorCurve& curve, std::size_t k) {
  if (k > curve.K()) throw std::invalid_argument("cumulative_importance: k out of range");
  if (curve.v0() == 0.0) {
    throw undefined_measure_error("cumulative importance undefined for an all-zero curve");
  }
  return 1.0 - curve[k] / curve.v0();
}

// CU(k) = V(k)/V(0) = 1 - CI(k): importance lost by stopping at k components.
inline double cumulative_uncertainty(const ErrorCurve& curve, std::size_t k) {
  if (k > curve.K()) throw std::invalid_argument("cumulative_uncertainty: k out of range");
  if (curve.v0() == 0.0) {
    throw undefined_measure_error("cumulative uncertainty undefined for an all-zero curve");
  }
  return curve[k] / curve.v0();
}

inline std::vector<double> ci_profile(const ErrorCurve& curve) {
  std::vector<double> ci(curve.K() + 1);
  for (std::size_t k = 0; k <= curve.K(); ++k) ci[k] = cumulative_importance(curve, k);
  return ci;
}

inline std::vector<double> cu_profile(const ErrorCurve& curve) {
  std::vector<double> cu(curve.K() + 1);
  for (std::size_t k = 0; k <= curve.K(); ++k) cu[k] = cumulative_uncertainty(curve, k);
  return cu;
}

// R_D = min(1, k_e / I_ENV). Decisions at or above the effective number of
// variables sit in the safe region (R_D = 1); k_e = 0 scores 0 (total loss).
inline double reliability(std::size_t k_e, double i_env) {
  if (!(i_env > 0.0)) {
    throw undefined_measure_error("reliability undefined when the ENV index is zero");
  }
  return std::min(1.0, static_cast<double>(k_e) / i_env);
}

// One row of the report: a selection method plus the confidence measures
// evaluated at its chosen k_e. ci_at_ke_minus_1 is an auxiliary column (the
// k_e - 1 convention seen in some published tables). Fields stay empty where
// the measure is undefined for this curve.
struct MethodEntry {
  Method method = Method::custom;
  std::string name;
  double lambda = 0.0;
  std::size_t k_e = 0;
  bool degenerate = false;
  std::optional<double> ci_at_ke;
  std::optional<double> ci_at_ke_minus_1;
  std::optional<double> r_d;
  std::optional<std::string> error;
};

// Externally supplied decision scored with the same measures; any model
// selection procedure's k_e can be appended this way.
struct ExternalDecision {
  std::string label;
  std::size_t k_e = 0;
};

struct ExternalEntry {
  std::string label;
  std::size_t k_e = 0;
  std::optional<double> ci;
  std::optional<double> r_d;
};

struct ConfidenceReport {
  std::size_t K = 0;
  double v0 = 0.0;
  EnvResult env;
  std::vector<MethodEntry> methods;
  std::vector<ExternalEntry> external;
  // Full profiles over k = 0..K; empty when V(0) = 0.
  std::vector<double> ci;
  std::vector<double> cu;
  // Normalized importance per component, k = 1..K; empty when V(0) = 0.
  std::vector<double> w_bar;
};

namespace detail {
inline void score_decision(const ErrorCurve& curve, const EnvResult& env, std::size_t k_e,
                           std::optional<double>& ci, std::optional<double>& r_d) {
  if (curve.v0() != 0.0) ci = cumulative_importance(curve, k_e);
  if (env.i_env > 0.0) r_d = reliability(k_e, env.i_env);
}
}  // namespace detail

// Runs every requested method on the curve and attaches CI / R_D at each
// method's k_e. A method that fails is reported in place without aborting the
// others. Entries keep the caller's order.
inline ConfidenceReport build_report(const ErrorCurve& curve,
                                     std::span<const PenaltySpec> methods,
                                     std::span<const ExternalDecision> externals = {}) {
  ConfidenceReport report;
  report.K = curve.K();
  report.v0 = curve.v0();
  report.env = env_summary(curve);
  if (curve.v0() != 0.0) {
    report.ci = ci_profile(curve);
    report.cu = cu_profile(curve);
    report.w_bar = *importance(curve).w_bar;
  }
  for (const PenaltySpec& spec : methods) {
    MethodEntry entry;
    entry.method = spec.method;
    entry.name = method_name(spec.method);
    try {
      const SelectionResult sel = select(curve, spec);
      entry.lambda = sel.lambda;
      entry.k_e = sel.k_e;
      entry.degenerate = sel.degenerate;
      detail::score_decision(curve, report.env, sel.k_e, entry.ci_at_ke, entry.r_d);
      if (sel.k_e >= 1 && curve.v0() != 0.0) {
        entry.ci_at_ke_minus_1 = cumulative_importance(curve, sel.k_e - 1);
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    report.methods.push_back(std::move(entry));
  }
  for (const ExternalDecision& ext : externals) {
    ExternalEntry entry;
    entry.label = ext.label;
    entry.k_e = ext.k_e;
    if (ext.k_e > curve.K()) {
      throw std::invalid_argument("external decision '" + ext.label + "': k_e=" +
                                  std::to_string(ext.k_e) + " exceeds K=" +
                                  std::to_string(curve.K()));
    }
    detail::score_decision(curve, report.env, ext.k_e, entry.ci, entry.r_d);
    report.external.push_back(std::move(entry));
  }
  return report;
}

}  // namespace envsel
