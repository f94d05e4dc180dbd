#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <envsel/errors.hpp>

namespace envsel {

class ErrorCurve;

// Slack used by the non-increasing check, scaled by the curve magnitude.
inline double default_monotone_tol(std::span<const double> values) noexcept {
  double m = 1.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return 1e-9 * m;
}

// Returns the smallest k with values[k+1] > values[k] + tol, or nullopt when
// the sequence is non-increasing up to tol.
inline std::optional<std::size_t> validate_monotone(std::span<const double> values, double tol) {
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if (values[k + 1] > values[k] + tol) return k;
  }
  return std::nullopt;
}

// Replaces the sequence by its running minimum. Opt-in repair for curves with
// genuine (beyond-tolerance) upward noise.
inline std::vector<double> clamp_monotone(std::vector<double> values) {
  double lo = std::numeric_limits<double>::infinity();
  for (double& v : values) {
    lo = std::min(lo, v);
    v = lo;
  }
  return values;
}

enum class MonotonePolicy { strict, clamp };

// Non-increasing score sequence V'(0..K) as supplied by the caller; the
// minimum may be nonzero. K = size - 1 >= 1, all values finite.
class RawCurve {
 public:
  explicit RawCurve(std::vector<double> values,
                    MonotonePolicy policy = MonotonePolicy::strict,
                    std::optional<double> tol = std::nullopt)
      : values_(std::move(values)) {
    if (values_.size() < 2) {
      throw validation_error("curve needs at least two points (K >= 1)");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k])) {
        throw validation_error("curve value at k=" + std::to_string(k) + " is not finite", k);
      }
    }
    if (policy == MonotonePolicy::clamp) {
      values_ = clamp_monotone(std::move(values_));
      return;
    }
    const double t = tol.value_or(default_monotone_tol(values_));
    if (auto bad = validate_monotone(values_, t)) {
      throw validation_error(
          "curve increases at k=" + std::to_string(*bad) + " (" + std::to_string(values_[*bad]) +
              " -> " + std::to_string(values_[*bad + 1]) + "); pass clamp mode to repair",
          *bad);
    }
  }

  std::size_t K() const noexcept { return values_.size() - 1; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

 private:
  std::vector<double> values_;
};

namespace detail {
// Shifts values so the last entry is exactly zero and clamps sub-tolerance
// negatives introduced by strict-mode noise. Assumes values already validated.
inline std::vector<double> shift_to_zero(std::vector<double> values) {
  const double base = values.back();
  for (double& v : values) v = std::max(v - base, 0.0);
  values.back() = 0.0;
  if (values.front() == 0.0) std::fill(values.begin(), values.end(), 0.0);
  return values;
}
}  // namespace detail

// Curve with V(K) = 0, all values >= 0, non-increasing; the form every
// criterion consumes. Immutable after construction.
class ErrorCurve {
 public:
  std::size_t K() const noexcept { return values_.size() - 1; }
  double v0() const noexcept { return values_.front(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  // Adopts values that already satisfy the curve invariants.
  static ErrorCurve from_normalized(std::vector<double> values) { return ErrorCurve(std::move(values)); }

 private:
  explicit ErrorCurve(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

// V(k) = V'(k) - V'(K). Differences between consecutive values are preserved.
inline ErrorCurve normalize(const RawCurve& raw) {
  return ErrorCurve::from_normalized(
      detail::shift_to_zero(std::vector<double>(raw.values().begin(), raw.values().end())));
}

// Normalized form of V'(k) = e^{-rate k}, k = 0..K. For large rate*K the tail
// underflows to zero, which matches the asymptotic regime.
inline ErrorCurve synth_exponential(double rate, std::size_t K) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("synth_exponential: rate must be positive and finite");
  }
  if (K < 1) throw std::invalid_argument("synth_exponential: K must be >= 1");
  const double tail = std::exp(-rate * static_cast<double>(K));
  std::vector<double> values(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    values[k] = std::exp(-rate * static_cast<double>(k)) - tail;
  }
  values[K] = 0.0;
  return ErrorCurve::from_normalized(std::move(values));
}

enum class IdealKind {
  single_step,      // V(0) = v0, zero from k = 1 on
  linear_full,      // straight line from (0, v0) to (K, 0)
  linear_to_kstar,  // straight line from (0, v0) to (k_star, 0), zero after
};

// Ideal reference curves. k_star is only read for linear_to_kstar.
inline ErrorCurve synth_ideal(IdealKind kind, std::size_t K, std::size_t k_star = 1,
                              double v0 = 1.0) {
  if (K < 1) throw std::invalid_argument("synth_ideal: K must be >= 1");
  if (!(v0 > 0.0) || !std::isfinite(v0)) {
    throw std::invalid_argument("synth_ideal: v0 must be positive and finite");
  }
  std::vector<double> values(K + 1, 0.0);
  switch (kind) {
    case IdealKind::single_step:
      values[0] = v0;
      break;
    case IdealKind::linear_full:
      for (std::size_t k = 0; k <= K; ++k) {
        values[k] = v0 * static_cast<double>(K - k) / static_cast<double>(K);
      }
      break;
    case IdealKind::linear_to_kstar:
      if (k_star < 1 || k_star > K) {
        throw std::invalid_argument("synth_ideal: k_star must satisfy 1 <= k_star <= K");
      }
      for (std::size_t k = 0; k < k_star; ++k) {
        values[k] = v0 * static_cast<double>(k_star - k) / static_cast<double>(k_star);
      }
      break;
  }
  return ErrorCurve::from_normalized(std::move(values));
}

}  // namespace envsel
