#include "statkit/regression.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "statkit/linalg.hpp"
#include "statkit/univariate.hpp"

namespace statkit::regression {

double pearson(const VecRef& x, const VecRef& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) throw std::domain_error("pearson: need n >= 2");
  const double mx = x.mean();
  const double my = y.mean();
  const double sx = std::sqrt((x.array() - mx).square().mean());
  const double sy = std::sqrt((y.array() - my).square().mean());
  if (!(sx > 0) || !(sy > 0)) throw std::domain_error("pearson: zero variance input");
  return (((x.array() - mx) / sx) * ((y.array() - my) / sy)).mean();
}

MatrixXd pearson_matrix(const MatRef& x) {
  const Index m = x.cols();
  MatrixXd r = MatrixXd::Identity(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      const double rij = pearson(x.col(i), x.col(j));
      r(i, j) = rij;
      r(j, i) = rij;
    }
  return r;
}

std::pair<Index, Index> most_correlated_pair(const MatRef& r) {
  if (r.rows() != r.cols() || r.rows() < 2)
    throw std::invalid_argument("most_correlated_pair: need a square matrix of order >= 2");
  std::pair<Index, Index> best{0, 1};
  double top = -1.0;
  for (Index i = 0; i < r.rows(); ++i)
    for (Index j = i + 1; j < r.cols(); ++j)
      if (std::abs(r(i, j)) > top) {
        top = std::abs(r(i, j));
        best = {i, j};
      }
  return best;
}

double spearman(const VecRef& x, const VecRef& y) {
  return pearson(univariate::rank_average(x), univariate::rank_average(y));
}

MatrixXd design_matrix(const VecRef& x, const std::vector<ColumnTransform>& spec) {
  if (spec.empty()) throw std::invalid_argument("design_matrix: empty spec");
  MatrixXd m(x.size(), static_cast<Index>(spec.size()));
  for (std::size_t j = 0; j < spec.size(); ++j) {
    switch (spec[j].kind) {
      case ColumnTransform::Kind::power:
        m.col(static_cast<Index>(j)) = x.array().pow(spec[j].exponent);
        break;
      case ColumnTransform::Kind::log_e:
        if ((x.array() <= 0).any())
          throw std::domain_error("design_matrix: log of nonpositive value");
        m.col(static_cast<Index>(j)) = x.array().log();
        break;
      case ColumnTransform::Kind::identity:
        m.col(static_cast<Index>(j)) = x;
        break;
      case ColumnTransform::Kind::const1:
        m.col(static_cast<Index>(j)).setOnes();
        break;
    }
  }
  return m;
}

Diagnostics diagnostics(const VecRef& y, const VecRef& yhat, Index m) {
  if (y.size() != yhat.size()) throw std::invalid_argument("diagnostics: length mismatch");
  const Index n = y.size();
  if (n < 1) throw std::domain_error("diagnostics: empty input");
  const VectorXd r = y - yhat;
  const double vary = (y.array() - y.mean()).square().mean();
  if (!(vary > 0)) throw std::domain_error("diagnostics: dependent variable has zero variance");

  Diagnostics d;
  d.ssr = r.squaredNorm();
  d.rmse = std::sqrt(d.ssr / static_cast<double>(n));
  d.mae = r.array().abs().mean();
  const double varr = (r.array() - r.mean()).square().mean();
  d.r2 = 1.0 - varr / vary;
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  d.adj_r2 = (n > m + 1)
                 ? 1.0 - (1.0 - d.r2) * (nn - 1.0) / (nn - mm - 1.0)
                 : std::numeric_limits<double>::quiet_NaN();
  d.aic = 2.0 * mm + nn * std::log(d.ssr) - nn * std::log(nn);
  d.bic = mm * std::log(nn) + nn * std::log(d.ssr) - nn * std::log(nn);
  return d;
}

namespace {

// c = V diag(1/s) U' y with small singular values zeroed
VectorXd svd_solve(const linalg::SvdResult& svd, const VecRef& y, double rcond) {
  const double cutoff = rcond * svd.s[0];
  VectorXd inv = VectorXd::Zero(svd.s.size());
  for (Index i = 0; i < svd.s.size(); ++i)
    if (svd.s[i] > cutoff) inv[i] = 1.0 / svd.s[i];
  return svd.vt.transpose() * (inv.asDiagonal() * (svd.u.transpose() * y));
}

std::optional<Index> find_constant_column(const MatRef& x) {
  for (Index j = 0; j < x.cols(); ++j) {
    const double v = x(0, j);
    if (v != 0.0 && (x.col(j).array() == v).all()) return j;
  }
  return std::nullopt;
}

}  // namespace

LinearModel lstsq(const MatRef& x, const VecRef& y, StandardizePath path) {
  const Index n = x.rows();
  const Index m = x.cols();
  if (n != y.size()) throw std::invalid_argument("lstsq: row count mismatch");
  if (n < m) throw std::invalid_argument("lstsq: underdetermined system (n_rows < n_cols)");

  const double rcond = static_cast<double>(m) * std::numeric_limits<double>::epsilon();
  const linalg::SvdResult svd = linalg::svd_compact(x);
  const double smin = svd.s[svd.s.size() - 1];
  const double kappa = smin > 1e-300 ? svd.s[0] / smin
                                     : std::numeric_limits<double>::infinity();

  const auto const_col = find_constant_column(x);
  bool use_standardized = false;
  if (path == StandardizePath::on)
    use_standardized = true;
  else if (path == StandardizePath::automatic)
    use_standardized = kappa > 1e8 && const_col.has_value();
  if (use_standardized && (!const_col.has_value() || m < 2)) use_standardized = false;

  LinearModel model;
  if (!use_standardized) {
    model.coefficients = svd_solve(svd, y, rcond);
    model.condition_number = kappa;
    model.standardized_path = false;
  } else {
    // z-score the non-constant columns, solve, then map the coefficients back:
    // c_j = d_j / s_j and intercept = mean(y) - sum_j d_j mean_j / s_j
    MatrixXd z(n, m - 1);
    VectorXd means(m - 1);
    VectorXd sds(m - 1);
    Index out = 0;
    for (Index j = 0; j < m; ++j) {
      if (j == *const_col) continue;
      means[out] = x.col(j).mean();
      const double sd =
          std::sqrt((x.col(j).array() - means[out]).square().mean());
      if (!(sd > 0))
        throw std::domain_error("lstsq: zero-variance predictor on the standardized path");
      sds[out] = sd;
      z.col(out) = (x.col(j).array() - means[out]) / sd;
      ++out;
    }
    const linalg::SvdResult zsvd = linalg::svd_compact(z);
    const double zmin = zsvd.s[zsvd.s.size() - 1];
    model.condition_number = zmin > 1e-300 ? zsvd.s[0] / zmin
                                           : std::numeric_limits<double>::infinity();
    const VectorXd d = svd_solve(zsvd, y, rcond);
    model.coefficients = VectorXd::Zero(m);
    double intercept = y.mean();
    out = 0;
    for (Index j = 0; j < m; ++j) {
      if (j == *const_col) continue;
      model.coefficients[j] = d[out] / sds[out];
      intercept -= d[out] * means[out] / sds[out];
      ++out;
    }
    model.coefficients[*const_col] = intercept / x(0, *const_col);
    model.standardized_path = true;
  }
  model.diag = diagnostics(y, x * model.coefficients, m);
  return model;
}

VectorXd predict(const LinearModel& model, const MatRef& x) {
  if (x.cols() != model.coefficients.size())
    throw std::invalid_argument("predict: column count mismatch");
  return x * model.coefficients;
}

}  // namespace statkit::regression
