#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>

#include "statkit/categorical.hpp"
#include "statkit/distributions.hpp"

namespace statkit::hypothesis {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

struct TestResult {
  std::string test;
  double statistic = 0.0;
  double critical_value = 0.0;
  double alpha = 0.0;
  bool reject = false;  // statistic >= critical_value
  double dof_or_n = 0.0;
};

// ---- Kolmogorov–Smirnov ----------------------------------------------------

// D_n = max_k max(|(k-1)/n - F(x_(k))|, |k/n - F(x_(k))|).
double ks_statistic(const VecRef& v, const std::function<double(double)>& cdf);
double ks_statistic(const VecRef& v, const distributions::DistSpec& d);

enum class KsMethod { asymptotic, exact };

// Asymptotic: sqrt(-ln(alpha/2) / (2n)). Exact: the finite-n Kolmogorov CDF
// inverted by bisection.
double ks_critical(Index n, double alpha, KsMethod method = KsMethod::asymptotic);

// P(D_n <= d) for the finite-n Kolmogorov distribution
// (Marsaglia-Tsang-Wang matrix-power evaluation, full-accuracy variant).
double kolmogorov_cdf(Index n, double d);

TestResult ks_one_sample(const VecRef& v, const distributions::DistSpec& d, double alpha,
                         KsMethod method = KsMethod::asymptotic);

double ks_two_sample_statistic(const VecRef& x, const VecRef& y);
double ks_two_sample_critical(Index n, Index m, double alpha);
TestResult ks_two_sample(const VecRef& x, const VecRef& y, double alpha);

// ---- Pearson chi-squared ----------------------------------------------------

// One-sample goodness of fit: T = n * sum (p_hat - p)^2 / p, dof = l - 1.
TestResult chisq_gof(const VecRef& observed_proportions, const VecRef& expected_proportions,
                     double n, double alpha);
TestResult chisq_gof_counts(const VecRef& observed_counts, const VecRef& expected_proportions,
                            double alpha);

// Two-sample: pooled expected proportions, dof = l - 1.
TestResult chisq_two_sample_counts(const VecRef& counts1, const VecRef& counts2, double alpha);

enum class IndependenceDof {
  rows_plus_cols_minus_1,            // n + m - 1
  classical                          // (n - 1)(m - 1)
};

struct IndependenceResult {
  TestResult test;
  MatrixXd expected;  // e_ij = rowsum_i * colsum_j / total
};

IndependenceResult chisq_independence(const categorical::CountMatrix& counts, double alpha,
                                      IndependenceDof dof = IndependenceDof::rows_plus_cols_minus_1);

// V = sqrt(T / (min(n-1, m-1) * total)).
double cramers_v(const categorical::ContingencyTable& table);
double cramers_v(const categorical::CountMatrix& counts);

// ---- chi-squared distribution ------------------------------------------------

// Regularized lower incomplete gamma P(a, x): series for x < a + 1, continued
// fraction otherwise.
double regularized_gamma_p(double a, double x);
double chi2_cdf(double x, int dof);
// Inverse of the chi-squared CDF, solved by bracketed Newton with bisection
// fallback to 1e-12 relative.
double chi2_ppf(double p, int dof);

}  // namespace statkit::hypothesis
