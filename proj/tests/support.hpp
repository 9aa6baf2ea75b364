#pragma once

// Test-only oracles, independent of the library implementations they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "statkit/rng.hpp"

namespace oracle {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Gini by the O(n^2) double sum: sum_ij |x_i - x_j| / (2 (n-1) n mean).
inline double gini_double_sum(const VectorXd& v) {
  const Index n = v.size();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) acc += std::abs(v[i] - v[j]);
  return acc / (2.0 * static_cast<double>(n - 1) * static_cast<double>(n) * v.mean());
}

// sup_t |ECDF(t) - F(t)| probed on a dense grid plus both one-sided limits at
// every sample point.
inline double ks_grid_supremum(const VectorXd& v, const std::function<double(double)>& cdf) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end());
  const auto n = static_cast<double>(s.size());
  auto ecdf = [&](double t) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / n;
  };
  double worst = 0.0;
  const double lo = s.front() - 1.0;
  const double hi = s.back() + 1.0;
  for (int g = 0; g <= 20000; ++g) {
    const double t = lo + (hi - lo) * static_cast<double>(g) / 20000.0;
    worst = std::max(worst, std::abs(ecdf(t) - cdf(t)));
  }
  for (double t : s) {
    worst = std::max(worst, std::abs(ecdf(t) - cdf(t)));
    worst = std::max(worst, std::abs(ecdf(t - 1e-12) - cdf(t)));
  }
  return worst;
}

// Exact k nearest neighbours by full scan; canonical order (distance, index).
inline std::vector<Index> brute_force_knn(const MatrixXd& points, const VectorXd& query,
                                          Index k) {
  std::vector<std::pair<double, Index>> all;
  all.reserve(static_cast<std::size_t>(points.rows()));
  for (Index i = 0; i < points.rows(); ++i)
    all.emplace_back((points.row(i).transpose() - query).squaredNorm(), i);
  std::sort(all.begin(), all.end());
  std::vector<Index> out;
  for (Index i = 0; i < k; ++i) out.push_back(all[static_cast<std::size_t>(i)].second);
  return out;
}

inline std::vector<Index> brute_force_ball(const MatrixXd& points, const VectorXd& query,
                                           double r) {
  std::vector<Index> out;
  for (Index i = 0; i < points.rows(); ++i)
    if ((points.row(i).transpose() - query).squaredNorm() <= r * r) out.push_back(i);
  return out;
}

// chi-squared CDF by adaptive Simpson quadrature of the density.
inline double chi2_cdf_quadrature(double x, int dof) {
  const double k = dof;
  auto pdf = [&](double t) {
    if (t <= 0) return 0.0;
    return std::exp((0.5 * k - 1.0) * std::log(t) - 0.5 * t - 0.5 * k * std::log(2.0) -
                    std::lgamma(0.5 * k));
  };
  std::function<double(double, double, double, double, double, int)> simpson =
      [&](double a, double b, double fa, double fb, double whole, int depth) -> double {
    const double m = 0.5 * (a + b);
    const double fm = pdf(m);
    const double left = (a + m) / 2.0;
    const double right = (m + b) / 2.0;
    const double sl = (m - a) / 6.0 * (fa + 4.0 * pdf(left) + fm);
    const double sr = (b - m) / 6.0 * (fm + 4.0 * pdf(right) + fb);
    if (depth <= 0 || std::abs(sl + sr - whole) < 1e-13)
      return sl + sr + (sl + sr - whole) / 15.0;
    return simpson(a, m, fa, fm, sl, depth - 1) + simpson(m, b, fm, fb, sr, depth - 1);
  };
  const double a = 0.0;
  const double fa = dof >= 2 ? pdf(1e-300) : 0.0;  // integrable singularity at 0 for dof=1
  double lo = a;
  double total = 0.0;
  if (dof == 1) {
    // handle the 1/sqrt(t) singularity with a substitution t = u^2
    auto pdf_sub = [&](double u) { return pdf(u * u) * 2.0 * u; };
    const double b = std::sqrt(x);
    const double whole = b / 6.0 * (pdf_sub(1e-200) + 4.0 * pdf_sub(b / 2.0) + pdf_sub(b));
    std::function<double(double, double, double, double, double, int)> simpson2 =
        [&](double aa, double bb, double faa, double fbb, double w, int depth) -> double {
      const double m = 0.5 * (aa + bb);
      const double fm = pdf_sub(m);
      const double sl = (m - aa) / 6.0 * (faa + 4.0 * pdf_sub((aa + m) / 2.0) + fm);
      const double sr = (bb - m) / 6.0 * (fm + 4.0 * pdf_sub((m + bb) / 2.0) + fbb);
      if (depth <= 0 || std::abs(sl + sr - w) < 1e-13)
        return sl + sr + (sl + sr - w) / 15.0;
      return simpson2(aa, m, faa, fm, sl, depth - 1) + simpson2(m, bb, fm, fbb, sr, depth - 1);
    };
    return simpson2(0.0, b, pdf_sub(1e-200), pdf_sub(b), whole, 48);
  }
  const double fb = pdf(x);
  const double whole = (x - lo) / 6.0 * (fa + 4.0 * pdf((lo + x) / 2.0) + fb);
  total = simpson(lo, x, fa, fb, whole, 48);
  return total;
}

// Eigenvalues of a symmetric 3x3 matrix by the closed-form trigonometric
// solution of the characteristic cubic; returned in decreasing order.
inline std::array<double, 3> symmetric3_eigenvalues(const Eigen::Matrix3d& a) {
  const double q = a.trace() / 3.0;
  Eigen::Matrix3d b = a - q * Eigen::Matrix3d::Identity();
  const double p2 = (b * b).trace() / 6.0;
  const double p = std::sqrt(p2);
  std::array<double, 3> eig{q, q, q};
  if (p > 0) {
    const double det = (b / p).determinant() / 2.0;
    const double phi = std::acos(std::clamp(det, -1.0, 1.0)) / 3.0;
    eig[0] = q + 2.0 * p * std::cos(phi);
    eig[2] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    eig[1] = 3.0 * q - eig[0] - eig[2];
  }
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

// Rolling statistic the slow way: recompute each window from scratch.
inline std::vector<double> naive_rolling_mean(const std::vector<double>& v, Index k,
                                              std::vector<char>& missing_out) {
  const auto n = static_cast<Index>(v.size());
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  missing_out.assign(static_cast<std::size_t>(n), 1);
  for (Index start = 0; start + k <= n; ++start) {
    double acc = 0.0;
    for (Index j = start; j < start + k; ++j) acc += v[static_cast<std::size_t>(j)];
    const Index pos = start + (k - 1) / 2;
    out[static_cast<std::size_t>(pos)] = acc / static_cast<double>(k);
    missing_out[static_cast<std::size_t>(pos)] = 0;
  }
  return out;
}

inline VectorXd random_vector(statkit::Rng& rng, Index n, double lo = -10.0, double hi = 10.0) {
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = lo + (hi - lo) * rng.next_double();
  return v;
}

inline MatrixXd random_matrix(statkit::Rng& rng, Index n, Index m, double lo = -5.0,
                              double hi = 5.0) {
  MatrixXd x(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) x(i, j) = lo + (hi - lo) * rng.next_double();
  return x;
}

}  // namespace oracle
