#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace statkit::regression {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using MatRef = Eigen::Ref<const Eigen::MatrixXd>;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

// Mean of the pairwise products of the standardised vectors.
double pearson(const VecRef& x, const VecRef& y);
// Correlations between all column pairs.
MatrixXd pearson_matrix(const MatRef& x);
// Argmax of |r| over the strict upper triangle; ties broken towards the
// lexicographically smallest (i, j).
std::pair<Index, Index> most_correlated_pair(const MatRef& r);
// Pearson over average ranks.
double spearman(const VecRef& x, const VecRef& y);

struct ColumnTransform {
  enum class Kind { power, log_e, identity, const1 };
  Kind kind = Kind::identity;
  double exponent = 1.0;  // for Kind::power

  static ColumnTransform power(double k) { return {Kind::power, k}; }
  static ColumnTransform log() { return {Kind::log_e, 0.0}; }
  static ColumnTransform identity() { return {Kind::identity, 0.0}; }
  static ColumnTransform const1() { return {Kind::const1, 0.0}; }
};

MatrixXd design_matrix(const VecRef& x, const std::vector<ColumnTransform>& spec);

struct Diagnostics {
  double ssr = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;  // NaN when n <= m + 1
  double aic = 0.0;
  double bic = 0.0;
};

Diagnostics diagnostics(const VecRef& y, const VecRef& yhat, Index m);

enum class StandardizePath { automatic, on, off };

struct LinearModel {
  VectorXd coefficients;
  Diagnostics diag;
  double condition_number = 0.0;  // of the matrix actually solved
  bool standardized_path = false;
};

// Least squares via the compact SVD; singular values below
// n_cols * machine-epsilon * s_max are zeroed. The standardized path
// (automatic beyond condition number 1e8 when a constant column is present)
// solves on z-scored columns and maps the coefficients back.
LinearModel lstsq(const MatRef& x, const VecRef& y,
                  StandardizePath path = StandardizePath::automatic);

VectorXd predict(const LinearModel& model, const MatRef& x);

}  // namespace statkit::regression
