#ifndef SBPSAT_LINALG_HPP
#define SBPSAT_LINALG_HPP

#include <initializer_list>
#include <vector>

#include "sbpsat/errors.hpp"

namespace sbpsat {

using DenseVector = std::vector<double>;

/// Small dense matrix with row-major storage.  This is the currency of all
/// operator construction; sizes stay in the low hundreds.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}
  DenseMatrix(int rows, int cols, std::initializer_list<double> entries);

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  DenseMatrix transposed() const;
  DenseVector apply(const DenseVector& x) const;            // A x
  DenseVector apply_transposed(const DenseVector& x) const; // A^T x
  DenseMatrix multiply(const DenseMatrix& other) const;     // A B

  double max_abs() const;
  bool all_finite() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

namespace linalg {

/// Solves A x = b by LU with partial pivoting.  Throws SingularMatrix when the
/// smallest pivot falls below 1e-13 * max|A|.
DenseVector solve_linear(const DenseMatrix& A, const DenseVector& b);

/// Moore-Penrose pseudoinverse via column-pivoted QR.  Requires full row or
/// column rank; throws RankDeficient otherwise (threshold 1e-10 relative to
/// the largest pivot, a sigma_max proxy).
DenseMatrix pseudoinverse(const DenseMatrix& A);

/// Minimum-norm least-squares solution of A x = b (complete orthogonal
/// decomposition).  Tolerates rank-deficient A; among all minimizers of
/// ||A x - b|| it returns the one of least Euclidean norm.
DenseVector solve_minimum_norm(const DenseMatrix& A, const DenseVector& b);

/// Minimizes ||A x - b||_2 subject to C x = d via the full KKT system.
/// Redundant-but-consistent constraint rows are dropped after a rank check of
/// C; throws InfeasibleConstraints when dependent rows contradict d.
/// An empty C reduces the problem to unconstrained least squares.
DenseVector solve_equality_constrained_ls(const DenseMatrix& A, const DenseVector& b,
                                          const DenseMatrix& C, const DenseVector& d);

/// Eigenvalues of a symmetric matrix in nondecreasing order.  Throws
/// NotSymmetric when ||A - A^T||_inf > 1e-12 * ||A||_inf.
DenseVector symmetric_eigenvalues(const DenseMatrix& A);

/// Numerical rank from a column-pivoted QR at the given relative threshold.
int numerical_rank(const DenseMatrix& A, double rel_tol);

}  // namespace linalg
}  // namespace sbpsat

#endif
