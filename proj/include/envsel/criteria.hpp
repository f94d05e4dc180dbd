#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <envsel/curve.hpp>

namespace envsel {

enum class Method { aic, bic, hqic, uaed, custom };

inline const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::aic: return "aic";
    case Method::bic: return "bic";
    case Method::hqic: return "hqic";
    case Method::uaed: return "uaed";
    case Method::custom: return "custom";
  }
  return "?";
}

// A named linear-penalty slope. AIC/BIC/HQIC carry the data count N they were
// built from; the UAED slope V(0)/K is bound at selection time.
struct PenaltySpec {
  Method method = Method::custom;
  double lambda = 0.0;
  std::optional<std::size_t> n_data;

  static PenaltySpec aic(std::size_t n) {
    require_n(n, 1, "aic");
    return {Method::aic, 2.0, n};
  }
  static PenaltySpec bic(std::size_t n) {
    require_n(n, 1, "bic");
    return {Method::bic, std::log(static_cast<double>(n)), n};
  }
  static PenaltySpec hqic(std::size_t n) {
    require_n(n, 3, "hqic");
    return {Method::hqic, std::log(std::log(static_cast<double>(n))), n};
  }
  static PenaltySpec uaed() { return {Method::uaed, 0.0, std::nullopt}; }
  static PenaltySpec custom(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("custom penalty: lambda must be finite and >= 0");
    }
    return {Method::custom, lambda, std::nullopt};
  }

  double resolved_lambda(const ErrorCurve& curve) const {
    if (method == Method::uaed) return curve.v0() / static_cast<double>(curve.K());
    return lambda;
  }

 private:
  static void require_n(std::size_t n, std::size_t least, const char* name) {
    if (n < least) {
      throw std::invalid_argument(std::string(name) + ": needs N >= " + std::to_string(least));
    }
  }
};

// C(k) = V(k) + lambda * k for k = 0..K.
inline std::vector<double> cost_profile(const ErrorCurve& curve, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("cost_profile: lambda must be finite and >= 0");
  }
  std::vector<double> costs(curve.K() + 1);
  for (std::size_t k = 0; k <= curve.K(); ++k) {
    costs[k] = curve[k] + lambda * static_cast<double>(k);
  }
  return costs;
}

struct SelectionResult {
  std::size_t k_e = 0;             // largest global minimizer (conservative tie-break)
  double lambda = 0.0;             // slope the profile was evaluated with
  std::vector<double> costs;       // C(k), k = 0..K
  std::vector<std::size_t> ties;   // every global minimizer, ascending
  bool degenerate = false;         // all-zero curve under UAED: k_e = 0 by convention
};

// Minimizes C(k) over k = 0..K. Costs within 1e-12 * max(1, |C_min|) of the
// minimum count as ties; k_e is the largest of them. An all-zero curve under
// UAED has no resolvable slope; it selects k_e = 0 ("absence of model") with
// the degenerate flag set.
inline SelectionResult select(const ErrorCurve& curve, const PenaltySpec& spec) {
  SelectionResult result;
  if (spec.method == Method::uaed && curve.v0() == 0.0) {
    result.k_e = 0;
    result.lambda = 0.0;
    result.costs.assign(curve.K() + 1, 0.0);
    result.ties = {0};
    result.degenerate = true;
    return result;
  }
  result.lambda = spec.resolved_lambda(curve);
  result.costs = cost_profile(curve, result.lambda);
  const double c_min = *std::min_element(result.costs.begin(), result.costs.end());
  const double tie_tol = 1e-12 * std::max(1.0, std::abs(c_min));
  for (std::size_t k = 0; k < result.costs.size(); ++k) {
    if (result.costs[k] <= c_min + tie_tol) result.ties.push_back(k);
  }
  result.k_e = result.ties.back();
  return result;
}

// Area under the two-segment piecewise-linear hull through (0, V(0)),
// (k, V(k)), (K, 0): two triangles plus a rectangle. Equals (K/2) * C(k) at
// the UAED slope, so its minimizer set matches select(..., uaed()); kept as
// the independent geometric route for that check.
inline double area_objective(const ErrorCurve& curve, std::size_t k) {
  const std::size_t K = curve.K();
  if (k > K) throw std::invalid_argument("area_objective: k out of range");
  const double kk = static_cast<double>(k);
  const double a1 = kk * (curve.v0() - curve[k]) / 2.0;
  const double a2 = kk * curve[k];
  const double a3 = static_cast<double>(K - k) * curve[k] / 2.0;
  return a1 + a2 + a3;
}

}  // namespace envsel
