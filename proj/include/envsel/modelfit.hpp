#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <envsel/curve.hpp>
#include <envsel/detail/qr.hpp>
#include <envsel/detail/random.hpp>
#include <envsel/errors.hpp>

namespace envsel {

// Tabular regression data: N rows, K_full feature columns (row-major) plus a
// target vector. Needs N > K_full + 1 so the largest model with intercept is
// still overdetermined.
struct Dataset {
  std::size_t n_rows = 0;
  std::size_t n_features = 0;
  std::vector<double> x;  // row-major, n_rows * n_features
  std::vector<double> y;
  std::vector<std::string> names;

  double at(std::size_t row, std::size_t feature) const noexcept {
    return x[row * n_features + feature];
  }

  void validate() const {
    if (n_rows == 0 || n_features == 0) throw validation_error("dataset: empty");
    if (n_rows <= n_features + 1) {
      throw validation_error("dataset: needs N > K_full + 1 rows (N=" + std::to_string(n_rows) +
                             ", K_full=" + std::to_string(n_features) + ")");
    }
    if (x.size() != n_rows * n_features || y.size() != n_rows || names.size() != n_features) {
      throw validation_error("dataset: inconsistent field sizes");
    }
    for (double v : x) {
      if (!std::isfinite(v)) throw validation_error("dataset: non-finite feature value");
    }
    for (double v : y) {
      if (!std::isfinite(v)) throw validation_error("dataset: non-finite target value");
    }
  }
};

// Least-squares fit of y on an intercept plus the chosen features.
// coefficients[0] is the intercept, then one slope per feature in the order
// given. mse = RSS/N (the profile-likelihood noise power estimate);
// neg2loglik = N log(mse) + N (1 + log 2*pi), the full Gaussian -2 log l_max
// including its constant term.
struct FitResult {
  std::vector<double> coefficients;
  double mse = 0.0;
  double neg2loglik = 0.0;
};

inline FitResult ols_fit(const Dataset& data, std::span<const std::size_t> features) {
  data.validate();
  const std::size_t n = data.n_rows;
  const std::size_t k = features.size();
  if (n <= k + 1) {
    throw std::invalid_argument("ols_fit: needs N > k + 1 (N=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ")");
  }
  for (std::size_t f : features) {
    if (f >= data.n_features) throw std::invalid_argument("ols_fit: feature index out of range");
  }
  std::vector<double> a((k + 1) * n);
  std::vector<std::size_t> labels(k + 1);
  labels[0] = singular_fit_error::intercept;
  std::fill(a.begin(), a.begin() + n, 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    labels[j + 1] = features[j];
    double* cj = a.data() + (j + 1) * n;
    for (std::size_t i = 0; i < n; ++i) cj[i] = data.at(i, features[j]);
  }
  const detail::lsq_result lsq =
      detail::solve_least_squares(n, k + 1, std::move(a), data.y, labels);
  FitResult fit;
  fit.coefficients = lsq.coef;
  fit.mse = lsq.rss / static_cast<double>(n);
  fit.neg2loglik = fit.mse > 0.0
                       ? static_cast<double>(n) * std::log(fit.mse) +
                             static_cast<double>(n) * (1.0 + std::log(2.0 * std::numbers::pi))
                       : -std::numeric_limits<double>::infinity();
  return fit;
}

// Greedy forward ranking: order of all features by decreasing relevance, with
// the refitted MSE after each addition. step_mse[0] is the intercept-only MSE
// (the variance of y); step_mse never increases.
struct RankedFeatures {
  std::vector<std::size_t> order;  // 0-based feature indices, a permutation
  std::vector<double> step_mse;    // size n_features + 1
  std::vector<std::string> warnings;
};

// At each step adds the feature whose refit gives the lowest MSE; ties go to
// the lowest feature index. A candidate whose fit is singular is skipped with
// a warning. If at some step every remaining candidate is singular (exact
// collinearity with the selected set), the leftovers are appended in index
// order with the MSE carried forward, so the order is always a complete
// permutation and such features show zero importance.
inline RankedFeatures forward_rank(const Dataset& data) {
  data.validate();
  RankedFeatures ranked;
  ranked.step_mse.reserve(data.n_features + 1);
  ranked.step_mse.push_back(ols_fit(data, {}).mse);
  std::vector<std::size_t> remaining(data.n_features);
  for (std::size_t j = 0; j < data.n_features; ++j) remaining[j] = j;
  std::vector<std::size_t> selected;
  while (!remaining.empty()) {
    std::optional<std::size_t> best;
    double best_mse = 0.0;
    selected.push_back(0);
    for (std::size_t candidate : remaining) {
      selected.back() = candidate;
      double mse = 0.0;
      try {
        mse = ols_fit(data, selected).mse;
      } catch (const singular_fit_error&) {
        ranked.warnings.push_back("feature " + std::to_string(candidate) +
                                  " singular at step " + std::to_string(selected.size()) +
                                  "; skipped");
        continue;
      }
      if (!best || mse < best_mse) {
        best = candidate;
        best_mse = mse;
      }
    }
    selected.pop_back();
    if (!best) {
      // Everything left is collinear with the selected set.
      std::sort(remaining.begin(), remaining.end());
      for (std::size_t leftover : remaining) {
        ranked.order.push_back(leftover);
        ranked.step_mse.push_back(ranked.step_mse.back());
        ranked.warnings.push_back("feature " + std::to_string(leftover) +
                                  " appended with carried-forward error (collinear)");
      }
      break;
    }
    ranked.order.push_back(*best);
    ranked.step_mse.push_back(best_mse);
    selected.push_back(*best);
    remaining.erase(std::find(remaining.begin(), remaining.end(), *best));
  }
  return ranked;
}

enum class CurveForm { neg2loglik, n_log_mse, mse };

inline const char* curve_form_name(CurveForm f) noexcept {
  switch (f) {
    case CurveForm::neg2loglik: return "neg2loglik";
    case CurveForm::n_log_mse: return "nlogmse";
    case CurveForm::mse: return "mse";
  }
  return "?";
}

// Error curve of the nested models that use the first k ranked features,
// k = 0..K_full. The two log forms differ from each other by a constant in N
// only, so every linear-penalty selection agrees between them; they require
// strictly positive residual error. A prefix whose refit is singular carries
// the previous value forward. Tiny floating-point upticks are repaired by
// running-minimum clamping.
inline RawCurve curve_from_dataset(const Dataset& data, const RankedFeatures& ranking,
                                   CurveForm form) {
  data.validate();
  if (ranking.order.size() != data.n_features ||
      ranking.step_mse.size() != data.n_features + 1) {
    throw std::invalid_argument("curve_from_dataset: ranking does not match dataset");
  }
  const double n = static_cast<double>(data.n_rows);
  const auto value_of = [&](double mse) {
    switch (form) {
      case CurveForm::mse: return mse;
      case CurveForm::n_log_mse: return n * std::log(mse);
      case CurveForm::neg2loglik:
        return n * std::log(mse) + n * (1.0 + std::log(2.0 * std::numbers::pi));
    }
    return mse;
  };
  std::vector<double> values;
  values.reserve(data.n_features + 1);
  std::vector<std::size_t> prefix;
  values.push_back(value_of(ols_fit(data, {}).mse));
  for (std::size_t feature : ranking.order) {
    prefix.push_back(feature);
    try {
      values.push_back(value_of(ols_fit(data, prefix).mse));
    } catch (const singular_fit_error&) {
      values.push_back(values.back());
    }
  }
  return RawCurve(std::move(values), MonotonePolicy::clamp);
}

// Synthetic regression problem with known support: standard-normal features,
// y = sum of the first k_true features plus N(0, noise_sd^2) noise. Fully
// determined by the seed (row-major draw order, noise after each row's
// features). Feature names are x1..xK.
inline Dataset synth_regression(std::size_t n, std::size_t k_full, std::size_t k_true,
                                double noise_sd, std::uint64_t seed) {
  if (k_full == 0 || k_true > k_full) {
    throw std::invalid_argument("synth_regression: needs 1 <= k_true <= k_full or k_true = 0");
  }
  if (n <= k_full + 1) throw std::invalid_argument("synth_regression: needs N > K_full + 1");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
    throw std::invalid_argument("synth_regression: noise_sd must be finite and >= 0");
  }
  Dataset data;
  data.n_rows = n;
  data.n_features = k_full;
  data.x.resize(n * k_full);
  data.y.resize(n);
  detail::normal_sampler normal(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double signal = 0.0;
    for (std::size_t j = 0; j < k_full; ++j) {
      const double v = normal();
      data.x[i * k_full + j] = v;
      if (j < k_true) signal += v;
    }
    data.y[i] = signal + noise_sd * normal();
  }
  data.names.reserve(k_full);
  for (std::size_t j = 1; j <= k_full; ++j) data.names.push_back("x" + std::to_string(j));
  return data;
}

}  // namespace envsel
