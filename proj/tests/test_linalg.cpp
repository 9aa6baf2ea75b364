#include <doctest.h>

#include <cmath>
#include <sstream>

#include "statkit/linalg.hpp"
#include "statkit/rng.hpp"
#include "support.hpp"

using namespace statkit;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("matmul example and identity") {
  MatrixXd a(5, 3);
  a << 1, 0, 1, 2, 2, 1, 3, 2, 0, 1, 2, 3, 0, 0, 1;
  MatrixXd b(3, 4);
  b << 1, 0, 0, 0, 0, 4, 1, 3, 2, 0, 3, 1;
  const MatrixXd c = linalg::matmul(a, b);
  MatrixXd expected(5, 4);
  expected << 3, 0, 3, 1, 4, 8, 5, 7, 3, 8, 2, 6, 7, 8, 11, 9, 2, 0, 3, 1;
  CHECK((c - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(c(3, 2) == 11.0);

  const MatrixXd eye = MatrixXd::Identity(3, 3);
  CHECK((linalg::matmul(a, eye) - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(linalg::matmul(a, a), std::invalid_argument);
}

TEST_CASE("transpose of a product") {
  Rng rng(83);
  const MatrixXd a = oracle::random_matrix(rng, 4, 3);
  const MatrixXd b = oracle::random_matrix(rng, 3, 5);
  const MatrixXd lhs = linalg::transpose(linalg::matmul(a, b));
  const MatrixXd rhs = linalg::matmul(linalg::transpose(b), linalg::transpose(a));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

namespace {

void check_svd_contract(const MatrixXd& x, const linalg::SvdResult& svd, double tol = 1e-10) {
  const Index m = x.cols();
  CHECK((svd.u.transpose() * svd.u - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < tol);
  CHECK((svd.vt * svd.vt.transpose() - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < tol);
  for (Index i = 0; i + 1 < m; ++i) CHECK(svd.s[i] >= svd.s[i + 1]);
  CHECK(svd.s[m - 1] >= 0.0);
  const MatrixXd rebuilt = svd.u * svd.s.asDiagonal() * svd.vt;
  const double denom = std::max(1.0, x.norm());
  CHECK((rebuilt - x).norm() / denom < 1e-9);
}

}  // namespace

TEST_CASE("svd: diagonal and antidiagonal inputs") {
  MatrixXd d = MatrixXd::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 2;
  d(2, 2) = 1;
  const auto svd = linalg::svd_compact(d);
  CHECK(svd.s[0] == doctest::Approx(3.0));
  CHECK(svd.s[1] == doctest::Approx(2.0));
  CHECK(svd.s[2] == doctest::Approx(1.0));
  check_svd_contract(d, svd);
  // factors of a diagonal matrix are signed permutations
  for (Index i = 0; i < 3; ++i) {
    CHECK(svd.u.col(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(svd.vt.row(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  }

  MatrixXd anti(2, 2);
  anti << 0, 1, 1, 0;
  const auto svd2 = linalg::svd_compact(anti);
  CHECK(svd2.s[0] == doctest::Approx(1.0));
  CHECK(svd2.s[1] == doctest::Approx(1.0));
  check_svd_contract(anti, svd2);
}

TEST_CASE("svd: singular values match the characteristic-polynomial oracle") {
  Rng rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd x = oracle::random_matrix(rng, 6, 3);
    const auto svd = linalg::svd_compact(x);
    const Eigen::Matrix3d gram = (x.transpose() * x).eval();
    const auto eig = oracle::symmetric3_eigenvalues(gram);
    for (int i = 0; i < 3; ++i)
      CHECK(svd.s[i] == doctest::Approx(std::sqrt(std::max(0.0, eig[static_cast<std::size_t>(i)])))
                            .epsilon(1e-8));
  }
}

TEST_CASE("svd: reconstruction and orthonormality on random shapes") {
  Rng rng(97);
  const std::pair<Index, Index> shapes[] = {{5, 2},  {8, 8},   {20, 7},
                                            {60, 12}, {200, 20}, {3, 6}};
  for (const auto& [n, m] : shapes) {
    const MatrixXd x = oracle::random_matrix(rng, n, m);
    if (n >= m) {
      check_svd_contract(x, linalg::svd_compact(x));
    } else {
      // wide input: U is n x n after the internal transpose trick
      const auto svd = linalg::svd_compact(x);
      const MatrixXd rebuilt = svd.u * svd.s.asDiagonal() * svd.vt;
      CHECK((rebuilt - x).norm() / x.norm() < 1e-9);
    }
  }
}

TEST_CASE("svd: rank-deficient input still yields orthonormal U") {
  MatrixXd x(4, 2);
  x << 1, 2, 2, 4, 3, 6, -1, -2;  // second column is twice the first
  const auto svd = linalg::svd_compact(x);
  CHECK(svd.s[1] < 1e-12);
  CHECK((svd.u.transpose() * svd.u - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  const MatrixXd rebuilt = svd.u * svd.s.asDiagonal() * svd.vt;
  CHECK((rebuilt - x).norm() / x.norm() < 1e-9);
}

TEST_CASE("condition number") {
  MatrixXd q(3, 3);
  q << 1, 0, 0, 0, 0, 1, 0, -1, 0;  // orthonormal
  const auto kappa = linalg::condition_number(q);
  CHECK(kappa.finite);
  CHECK(kappa.value == doctest::Approx(1.0).epsilon(1e-12));

  MatrixXd singular(3, 2);
  singular << 1, 1, 2, 2, 3, 3;
  const auto bad = linalg::condition_number(singular);
  CHECK_FALSE(bad.finite);
  CHECK(std::isinf(bad.value));
}

TEST_CASE("pca: rank-1 data explains everything with one component") {
  Rng rng(101);
  MatrixXd x(40, 2);
  for (Index i = 0; i < x.rows(); ++i) {
    const double t = rng.next_double() * 4 - 2;
    x(i, 0) = 3.0 * t;
    x(i, 1) = -1.5 * t;
  }
  const auto res = linalg::pca(x, linalg::PcaPreprocess::center);
  CHECK(res.cumvar_ratio[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res.cumvar_ratio[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pca: score columns are uncorrelated with nonincreasing variance") {
  Rng rng(103);
  const MatrixXd x = oracle::random_matrix(rng, 120, 5);
  const auto res = linalg::pca(x, linalg::PcaPreprocess::standardize);

  const MatrixXd gram = res.scores.transpose() * res.scores;
  const double scale = gram.norm();
  for (Index i = 0; i < gram.rows(); ++i)
    for (Index j = 0; j < gram.cols(); ++j)
      if (i != j) CHECK(std::abs(gram(i, j)) <= 1e-8 * scale);

  for (Index j = 0; j + 1 < res.scores.cols(); ++j) {
    const double va = res.scores.col(j).squaredNorm();
    const double vb = res.scores.col(j + 1).squaredNorm();
    CHECK(va >= vb - 1e-12);
  }

  // loadings rows are unit-norm, orthogonal, sign-fixed
  for (Index i = 0; i < res.loadings.rows(); ++i) {
    CHECK(res.loadings.row(i).norm() == doctest::Approx(1.0).epsilon(1e-10));
    Index argmax = 0;
    res.loadings.row(i).cwiseAbs().maxCoeff(&argmax);
    CHECK(res.loadings(i, argmax) > 0.0);
  }

  // cumulative variance ratios are nondecreasing and end at 1
  for (Index i = 0; i + 1 < res.cumvar_ratio.size(); ++i)
    CHECK(res.cumvar_ratio[i] <= res.cumvar_ratio[i + 1] + 1e-15);
  CHECK(res.cumvar_ratio[res.cumvar_ratio.size() - 1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pca on wide input keeps min(n, m) components") {
  Rng rng(211);
  const MatrixXd x = oracle::random_matrix(rng, 4, 7);
  const auto res = linalg::pca(x, linalg::PcaPreprocess::center);
  CHECK(res.singular_values.size() == 4);
  CHECK(res.cumvar_ratio.size() == 4);
  CHECK(res.cumvar_ratio[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.loadings.rows() == 4);
  CHECK(res.loadings.cols() == 7);
}

TEST_CASE("pca rejects zero-variance columns under standardize") {
  MatrixXd x(10, 2);
  x.col(0).setLinSpaced(10, 0, 9);
  x.col(1).setConstant(4.0);
  CHECK_THROWS_AS(linalg::pca(x, linalg::PcaPreprocess::standardize), std::invalid_argument);
}

TEST_CASE("matrix CSV round trip") {
  Rng rng(107);
  const MatrixXd x = oracle::random_matrix(rng, 7, 3);
  std::ostringstream out;
  linalg::write_matrix_csv(x, out);
  std::istringstream in(out.str());
  const MatrixXd back = linalg::read_matrix_csv(in);
  CHECK((back - x).cwiseAbs().maxCoeff() == 0.0);
}
