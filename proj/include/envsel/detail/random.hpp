#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace envsel::detail {

// Standard-normal stream via Box-Muller over mt19937_64. The engine's output
// sequence is fixed by the language standard, so a seed pins the draws on
// every platform (std::normal_distribution would not).
class normal_sampler {
 public:
  explicit normal_sampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite; u2 in [0, 1).
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace envsel::detail
