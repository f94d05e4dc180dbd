#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <envsel/curve.hpp>
#include <envsel/detail/sum.hpp>

namespace envsel {

// Trapezoid approximation of the area under V(k) at unit step:
// V(0)/2 + V(1) + ... + V(K-1), using V(K) = 0.
inline double trapezoid_area(const ErrorCurve& curve) {
  detail::compensated_sum sum;
  sum.add(curve.v0() / 2.0);
  for (std::size_t k = 1; k < curve.K(); ++k) sum.add(curve[k]);
  return sum.value();
}

// Effective number of variables: the trapezoid area normalized by the
// single-relevant-component reference area V(0)/2. Zero for an all-zero
// curve; otherwise in [1, K]. Invariant under scaling V -> aV.
inline double env_index(const ErrorCurve& curve) {
  if (curve.v0() == 0.0) return 0.0;
  return 2.0 * trapezoid_area(curve) / curve.v0();
}

// Nearest integer to the index; halves round up (the less parsimonious side).
inline std::size_t suggested_k(double i_env) {
  if (!(i_env >= 0.0)) return 0;
  return static_cast<std::size_t>(std::llround(i_env));
}

struct EnvResult {
  double a_hat = 0.0;          // trapezoid area
  double i_env = 0.0;          // effective number of variables
  std::size_t suggested = 0;   // nearest integer to i_env
  double a_ref_one = 0.0;      // reference area V(0)/2 used as normalizer
};

inline EnvResult env_summary(const ErrorCurve& curve) {
  EnvResult r;
  r.a_hat = trapezoid_area(curve);
  r.a_ref_one = curve.v0() / 2.0;
  r.i_env = curve.v0() == 0.0 ? 0.0 : 2.0 * r.a_hat / curve.v0();
  r.suggested = suggested_k(r.i_env);
  return r;
}

struct TracePoint {
  std::size_t K = 0;
  double i_env = 0.0;
};

// Index of each truncated prefix V'(0..K), renormalized per K by subtracting
// V'(K). Shows whether the index settles as K grows.
inline std::vector<TracePoint> env_trace(const RawCurve& raw, std::span<const std::size_t> ks) {
  if (ks.empty()) throw std::invalid_argument("env_trace: ks must be nonempty");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || ks[i] > raw.K()) {
      throw std::invalid_argument("env_trace: K=" + std::to_string(ks[i]) +
                                  " outside 1.." + std::to_string(raw.K()));
    }
    if (i > 0 && ks[i] <= ks[i - 1]) {
      throw std::invalid_argument("env_trace: ks must be strictly ascending");
    }
  }
  std::vector<TracePoint> trace;
  trace.reserve(ks.size());
  for (std::size_t K : ks) {
    std::vector<double> prefix(raw.values().begin(), raw.values().begin() + K + 1);
    const ErrorCurve curve = ErrorCurve::from_normalized(detail::shift_to_zero(std::move(prefix)));
    trace.push_back({K, env_index(curve)});
  }
  return trace;
}

}  // namespace envsel
