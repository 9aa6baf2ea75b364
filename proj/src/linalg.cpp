#include "statkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "statkit/tabular.hpp"

namespace statkit::linalg {

MatrixXd matmul(const MatRef& a, const MatRef& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions do not match (" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
  return a * b;
}

MatrixXd transpose(const MatRef& a) { return a.transpose(); }

namespace {

SvdResult jacobi_svd_tall(const MatRef& x, double tol, int max_sweeps) {
  const Index n = x.rows();
  const Index m = x.cols();
  MatrixXd w = x;
  MatrixXd v = MatrixXd::Identity(m, m);

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (Index p = 0; p + 1 < m; ++p) {
      for (Index q = p + 1; q < m; ++q) {
        const double app = w.col(p).squaredNorm();
        const double aqq = w.col(q).squaredNorm();
        const double apq = w.col(p).dot(w.col(q));
        if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
        converged = false;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (Index i = 0; i < n; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          w(i, p) = cs * wp - sn * wq;
          w(i, q) = sn * wp + cs * wq;
        }
        for (Index i = 0; i < m; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = cs * vp - sn * vq;
          v(i, q) = sn * vp + cs * vq;
        }
      }
    }
  }
  if (!converged)
    throw std::runtime_error("svd_compact: no convergence within " +
                             std::to_string(max_sweeps) + " sweeps");

  VectorXd s(m);
  for (Index j = 0; j < m; ++j) s[j] = w.col(j).norm();

  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return s[a] > s[b]; });

  SvdResult res;
  res.u.resize(n, m);
  res.s.resize(m);
  MatrixXd vsorted(m, m);
  for (Index j = 0; j < m; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    res.s[j] = s[src];
    vsorted.col(j) = v.col(src);
    if (s[src] > 0) {
      res.u.col(j) = w.col(src) / s[src];
    } else {
      res.u.col(j).setZero();
    }
  }
  // fill null columns of U with an orthonormal completion so U'U = I holds
  // even for rank-deficient inputs; columns with s > 0 and earlier completed
  // columns are already in place
  for (Index j = 0; j < m; ++j) {
    if (res.s[j] > 0) continue;
    for (Index basis = 0; basis < n; ++basis) {
      VectorXd cand = VectorXd::Zero(n);
      cand[basis] = 1.0;
      for (Index prev = 0; prev < m; ++prev) {
        if (prev == j || (res.s[prev] <= 0 && prev > j)) continue;
        cand -= res.u.col(prev).dot(cand) * res.u.col(prev);
      }
      const double norm = cand.norm();
      if (norm > 1e-8) {
        res.u.col(j) = cand / norm;
        break;
      }
    }
  }
  res.vt = vsorted.transpose();
  return res;
}

}  // namespace

SvdResult svd_compact(const MatRef& x, double tol, int max_sweeps) {
  if (x.rows() == 0 || x.cols() == 0) throw std::invalid_argument("svd_compact: empty matrix");
  if (x.rows() >= x.cols()) return jacobi_svd_tall(x, tol, max_sweeps);
  // X = U S Vt  <=>  X' = V S U'
  SvdResult t = jacobi_svd_tall(x.transpose(), tol, max_sweeps);
  SvdResult res;
  res.s = t.s;
  res.u = t.vt.transpose();
  res.vt = t.u.transpose();
  return res;
}

ConditionNumber condition_number(const MatRef& x) {
  const SvdResult svd = svd_compact(x);
  const double smax = svd.s[0];
  const double smin = svd.s[svd.s.size() - 1];
  if (smin < 1e-300)
    return {std::numeric_limits<double>::infinity(), false};
  return {smax / smin, true};
}

PcaResult pca(const MatRef& x, PcaPreprocess preprocess) {
  const Index n = x.rows();
  const Index m = x.cols();
  if (n < 2) throw std::invalid_argument("pca: need at least 2 rows");
  MatrixXd z = x;
  const Eigen::RowVectorXd means = x.colwise().mean();
  z.rowwise() -= means;
  if (preprocess == PcaPreprocess::standardize) {
    for (Index j = 0; j < m; ++j) {
      const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(n));
      if (!(sd > 0))
        throw std::invalid_argument("pca: column " + std::to_string(j) +
                                    " has zero variance under standardize");
      z.col(j) /= sd;
    }
  }
  SvdResult svd = svd_compact(z);
  const Index components = svd.s.size();  // min(n, m) after the internal swap
  // sign convention: make each loadings row's largest-magnitude entry positive
  for (Index i = 0; i < components; ++i) {
    Index argmax = 0;
    svd.vt.row(i).cwiseAbs().maxCoeff(&argmax);
    if (svd.vt(i, argmax) < 0) {
      svd.vt.row(i) = -svd.vt.row(i);
      svd.u.col(i) = -svd.u.col(i);
    }
  }
  PcaResult res;
  res.singular_values = svd.s;
  res.loadings = svd.vt;
  res.scores = svd.u * svd.s.asDiagonal();
  const VectorXd sq = svd.s.array().square();
  const double total = sq.sum();
  res.cumvar_ratio.resize(components);
  double acc = 0.0;
  for (Index i = 0; i < components; ++i) {
    acc += sq[i];
    res.cumvar_ratio[i] = total > 0 ? acc / total : 0.0;
  }
  return res;
}

MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("read_matrix_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return MatrixXd(0, 0);
  MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_matrix_csv(const MatRef& m, std::ostream& out) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << tabular::format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace statkit::linalg
