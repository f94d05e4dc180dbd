#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <envsel/curve.hpp>

namespace testutil {

// Random non-increasing curve ending at zero: exponential-ish drops mixed
// with flat stretches. allow_zero controls whether the all-zero curve may
// come out.
inline envsel::ErrorCurve random_curve(std::mt19937_64& rng, std::size_t max_k = 200,
                                       bool allow_zero = false) {
  std::uniform_int_distribution<std::size_t> k_dist(1, max_k);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> drop(1.0);
  const std::size_t K = k_dist(rng);
  const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  while (true) {
    std::vector<double> values(K + 1, 0.0);
    for (std::size_t k = K; k-- > 0;) {
      const double d = u(rng) < 0.3 ? 0.0 : drop(rng) * scale;
      values[k] = values[k + 1] + d;
    }
    if (allow_zero || values[0] > 0.0) {
      return envsel::normalize(envsel::RawCurve(std::move(values)));
    }
  }
}

// Convex decreasing curve with its first zero exactly at k_star: the drops
// d_k = V(k-1) - V(k) are positive and non-increasing over k = 1..k_star.
inline envsel::ErrorCurve random_convex_zero_at(std::mt19937_64& rng, std::size_t k_star,
                                                std::size_t K) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> drops(k_star);
  double level = 0.0;
  for (std::size_t i = k_star; i-- > 0;) {
    // Build drops from the smallest (at k_star) upward so they non-increase.
    level += u(rng);
    drops[i] = level;
  }
  std::vector<double> values(K + 1, 0.0);
  for (std::size_t k = k_star; k-- > 0;) values[k] = values[k + 1] + drops[k];
  return envsel::normalize(envsel::RawCurve(std::move(values)));
}

}  // namespace testutil
