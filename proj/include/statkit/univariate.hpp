#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace statkit::univariate {

using Eigen::Index;
using Eigen::VectorXd;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

// ---- aggregates -----------------------------------------------------------

double mean(const VecRef& v);
double var(const VecRef& v, int ddof = 0);
double stddev(const VecRef& v, int ddof = 0);
double median(const VecRef& v);
double min(const VecRef& v);
double max(const VecRef& v);
double midrange(const VecRef& v);
double iqr(const VecRef& v);
double skewness(const VecRef& v);
double gini(const VecRef& v);
double entropy(const VecRef& v);
// p counts observations removed (trimmed) or replaced (winsorised) per side.
double trimmed_mean(const VecRef& v, Index p);
double winsorized_mean(const VecRef& v, Index p);
double coeff_variation(const VecRef& v);
double mad_mean(const VecRef& v);
double mad_median(const VecRef& v);
double median_ad(const VecRef& v);

// Name-based dispatch used by the CLI; accepts "var:1", "trimmed_mean:2", ...
double aggregate(const VecRef& v, const std::string& stat);

// Type-7 quantile: linear interpolation between order statistics at
// k = (n-1)p + 1.
double quantile(const VecRef& v, double p);

// ---- feature scaling ------------------------------------------------------

VectorXd standardize(const VecRef& v);
VectorXd robust_standardize(const VecRef& v);  // (x - median) / IQR
VectorXd minmax_scale(const VecRef& v);
VectorXd clip(const VecRef& v, double lo, double hi);
VectorXd normalize_l2(const VecRef& v);
VectorXd normalize_l1(const VecRef& v);

// ---- order statistics -----------------------------------------------------

VectorXd sorted(const VecRef& v);
// Stable ordering permutation: ties keep input order.
std::vector<Index> argsort_stable(const VecRef& v);
// Tied elements get the mean of their ordinal ranks (1-based).
VectorXd rank_average(const VecRef& v);
// Equivalent to argsort_stable(argsort_stable(v)) + 1.
std::vector<Index> rank_ordinal(const VecRef& v);

VectorXd cumsum(const VecRef& v);
VectorXd diff(const VecRef& v);

// ---- empirical CDF --------------------------------------------------------

class Ecdf {
 public:
  explicit Ecdf(const VecRef& v);
  // Right-continuous step function: fraction of sample values <= t.
  double operator()(double t) const;
  // (sorted value, (i+1)/n) pairs for plotting/export.
  std::vector<std::pair<double, double>> step_points() const;
  Index size() const { return sorted_.size(); }

 private:
  VectorXd sorted_;
};

// ---- histograms -----------------------------------------------------------

struct HistogramResult {
  VectorXd edges;                    // k+1 strictly increasing edges
  std::vector<std::int64_t> counts;  // k bin counts
};

// Half-open bins [e_i, e_{i+1}) with the final bin closed on both sides;
// values outside [e_0, e_k] are not counted.
HistogramResult histogram(const VecRef& v, const VecRef& edges);
HistogramResult histogram_equal_width(const VecRef& v, int k);
// Equal-width bins on the log scale; requires min(v) > 0.
HistogramResult histogram_geometric(const VecRef& v, int k);

// ---- tolerant comparison --------------------------------------------------

// |a - b| <= atol + rtol * |b|; asymmetric in (a, b).
bool approx_equal(double a, double b, double atol = 1e-8, double rtol = 1e-5);

}  // namespace statkit::univariate
