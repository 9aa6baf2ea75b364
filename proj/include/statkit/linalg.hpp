#pragma once

#include <Eigen/Dense>

#include <iosfwd>

namespace statkit::linalg {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using MatRef = Eigen::Ref<const Eigen::MatrixXd>;

MatrixXd matmul(const MatRef& a, const MatRef& b);
MatrixXd transpose(const MatRef& a);

// Compact SVD X = U * diag(s) * Vt with semi-orthonormal U (n x m),
// nonincreasing s (m), orthonormal Vt (m x m).
struct SvdResult {
  MatrixXd u;
  VectorXd s;
  MatrixXd vt;
};

// One-sided Jacobi with cyclic sweeps: columns p < q are rotated whenever
// |w_p . w_q| exceeds tol * ||w_p|| * ||w_q||. Throws if the sweep cap is hit
// without convergence. Inputs with n_rows < n_cols are handled by factorising
// the transpose and swapping the factors.
SvdResult svd_compact(const MatRef& x, double tol = 1e-12, int max_sweeps = 60);

struct ConditionNumber {
  double value = 0.0;
  bool finite = true;  // false -> value is +infinity (singular matrix)
};

// Ratio of the largest to the smallest singular value; singular values below
// 1e-300 count as zero.
ConditionNumber condition_number(const MatRef& x);

enum class PcaPreprocess { center, standardize };

struct PcaResult {
  VectorXd singular_values;  // of the preprocessed matrix, nonincreasing
  MatrixXd loadings;         // rows of Vt; largest-magnitude entry made positive
  MatrixXd scores;           // U * diag(s), signs consistent with loadings
  VectorXd cumvar_ratio;     // cumsum(s^2) / sum(s^2)
};

PcaResult pca(const MatRef& x, PcaPreprocess preprocess);

// Headerless CSV import/export for matrices.
MatrixXd read_matrix_csv(std::istream& in);
void write_matrix_csv(const MatRef& m, std::ostream& out);

}  // namespace statkit::linalg
