#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <envsel/errors.hpp>

namespace envsel::detail {

struct lsq_result {
  std::vector<double> coef;  // one per design column, original order
  double rss = 0.0;
};

// Dense least squares min ||A x - b|| by Householder QR with column pivoting.
// `a` is column-major n x p (consumed), n >= p >= 1. col_labels names each
// design column for rank-deficiency reporting. A pivot whose remaining column
// norm falls below rank_tol times the largest pivot raises singular_fit_error
// naming that column.
inline lsq_result solve_least_squares(std::size_t n, std::size_t p, std::vector<double> a,
                                      std::vector<double> b,
                                      std::span<const std::size_t> col_labels,
                                      double rank_tol = 1e-10) {
  std::vector<std::size_t> perm(p);
  for (std::size_t j = 0; j < p; ++j) perm[j] = j;
  auto col = [&](std::size_t j) { return a.data() + j * n; };

  double r0 = 0.0;
  for (std::size_t step = 0; step < p; ++step) {
    // Pivot: bring the remaining column with the largest tail norm forward.
    std::size_t best = step;
    double best_norm2 = -1.0;
    for (std::size_t j = step; j < p; ++j) {
      double s = 0.0;
      const double* cj = col(j);
      for (std::size_t i = step; i < n; ++i) s += cj[i] * cj[i];
      if (s > best_norm2) {
        best_norm2 = s;
        best = j;
      }
    }
    if (best != step) {
      std::swap(perm[step], perm[best]);
      double* cs = col(step);
      double* cb = col(best);
      for (std::size_t i = 0; i < n; ++i) std::swap(cs[i], cb[i]);
    }
    const double norm = std::sqrt(std::max(best_norm2, 0.0));
    if (step == 0) r0 = norm;
    if (norm <= rank_tol * r0 || norm == 0.0) {
      const std::size_t label = col_labels[perm[step]];
      throw singular_fit_error(
          "design matrix is rank deficient at " +
              (label == singular_fit_error::intercept ? std::string("the intercept column")
                                                      : "feature column " + std::to_string(label)),
          label);
    }

    // Householder reflector for the step-th column tail.
    double* cs = col(step);
    const double alpha = cs[step] >= 0.0 ? -norm : norm;
    std::vector<double> v(n - step);
    v[0] = cs[step] - alpha;
    for (std::size_t i = step + 1; i < n; ++i) v[i - step] = cs[i];
    const double vtv = v[0] * v[0] + (best_norm2 - cs[step] * cs[step]);
    cs[step] = alpha;
    for (std::size_t i = step + 1; i < n; ++i) cs[i] = 0.0;
    if (vtv <= 0.0) continue;  // column tail already zeroed below the diagonal

    for (std::size_t j = step + 1; j < p; ++j) {
      double* cj = col(j);
      double dot = 0.0;
      for (std::size_t i = step; i < n; ++i) dot += v[i - step] * cj[i];
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = step; i < n; ++i) cj[i] -= f * v[i - step];
    }
    double dot = 0.0;
    for (std::size_t i = step; i < n; ++i) dot += v[i - step] * b[i];
    const double f = 2.0 * dot / vtv;
    for (std::size_t i = step; i < n; ++i) b[i] -= f * v[i - step];
  }

  // Back-substitution on the p x p triangle; residual norm from the tail.
  std::vector<double> z(p);
  for (std::size_t jj = p; jj-- > 0;) {
    double s = b[jj];
    for (std::size_t j = jj + 1; j < p; ++j) s -= col(j)[jj] * z[j];
    z[jj] = s / col(jj)[jj];
  }
  lsq_result result;
  result.coef.resize(p);
  for (std::size_t j = 0; j < p; ++j) result.coef[perm[j]] = z[j];
  double rss = 0.0;
  for (std::size_t i = p; i < n; ++i) rss += b[i] * b[i];
  result.rss = rss;
  return result;
}

}  // namespace envsel::detail
