#include "sbpsat/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace sbpsat {

namespace {

using EMat = Eigen::MatrixXd;
using EVec = Eigen::VectorXd;

EMat to_eigen(const DenseMatrix& m) {
  EMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

EVec to_eigen(const DenseVector& v) {
  return Eigen::Map<const EVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

DenseMatrix from_eigen(const EMat& m) {
  DenseMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

DenseVector from_eigen(const EVec& v) {
  return DenseVector(v.data(), v.data() + v.size());
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), a_(entries) {
  if (static_cast<int>(a_.size()) != rows * cols)
    throw InvalidArgument("DenseMatrix: initializer size does not match dimensions");
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseVector DenseMatrix::apply(const DenseVector& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw InvalidArgument("DenseMatrix::apply: size mismatch");
  DenseVector y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    const double* row = a_.data() + static_cast<size_t>(i) * cols_;
    for (int j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseVector DenseMatrix::apply_transposed(const DenseVector& x) const {
  if (static_cast<int>(x.size()) != rows_)
    throw InvalidArgument("DenseMatrix::apply_transposed: size mismatch");
  DenseVector y(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* row = a_.data() + static_cast<size_t>(i) * cols_;
    for (int j = 0; j < cols_; ++j) y[j] += row[j] * x[i];
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  if (cols_ != other.rows_) throw InvalidArgument("DenseMatrix::multiply: size mismatch");
  DenseMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += aik * other(k, j);
    }
  return out;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix out = a;
  for (double& v : out.data()) v *= s;
  return out;
}

namespace linalg {

DenseVector solve_linear(const DenseMatrix& A, const DenseVector& b) {
  if (A.rows() != A.cols()) throw InvalidArgument("solve_linear: matrix not square");
  if (A.rows() != static_cast<int>(b.size()))
    throw InvalidArgument("solve_linear: right-hand-side size mismatch");
  const EMat a = to_eigen(A);
  Eigen::PartialPivLU<EMat> lu(a);
  const EMat& u = lu.matrixLU();
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < u.rows(); ++i) min_pivot = std::min(min_pivot, std::abs(u(i, i)));
  if (!(min_pivot > 1e-13 * A.max_abs()))
    throw SingularMatrix("solve_linear: pivot below tolerance");
  return from_eigen(EVec(lu.solve(to_eigen(b))));
}

DenseMatrix pseudoinverse(const DenseMatrix& A) {
  const EMat a = to_eigen(A);
  Eigen::ColPivHouseholderQR<EMat> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < std::min(A.rows(), A.cols()))
    throw RankDeficient("pseudoinverse: numerical rank below min(rows, cols)");
  Eigen::CompleteOrthogonalDecomposition<EMat> cod(a);
  cod.setThreshold(1e-10);
  return from_eigen(EMat(cod.pseudoInverse()));
}

DenseVector solve_minimum_norm(const DenseMatrix& A, const DenseVector& b) {
  Eigen::CompleteOrthogonalDecomposition<EMat> cod(to_eigen(A));
  cod.setThreshold(1e-11);
  return from_eigen(EVec(cod.solve(to_eigen(b))));
}

DenseVector solve_equality_constrained_ls(const DenseMatrix& A, const DenseVector& b,
                                          const DenseMatrix& C, const DenseVector& d) {
  const int n = A.cols();
  if (C.rows() == 0) return solve_minimum_norm(A, b);
  if (C.cols() != n) throw InvalidArgument("constrained_ls: constraint width mismatch");

  // Select an independent subset of constraint rows (column-pivoted QR of C^T).
  const EMat c = to_eigen(C);
  Eigen::ColPivHouseholderQR<EMat> qr(c.transpose());
  qr.setThreshold(1e-12);
  const int rank = static_cast<int>(qr.rank());
  std::vector<int> keep(rank);
  for (int i = 0; i < rank; ++i) keep[i] = static_cast<int>(qr.colsPermutation().indices()[i]);

  EMat ck(rank, n);
  EVec dk(rank);
  for (int i = 0; i < rank; ++i) {
    ck.row(i) = c.row(keep[i]);
    dk(i) = d[keep[i]];
  }

  // Full KKT system on the independent constraints.
  const EMat a = to_eigen(A);
  const int m = n + rank;
  DenseMatrix kkt(m, m);
  const EMat ata = 2.0 * (a.transpose() * a);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) kkt(i, j) = ata(i, j);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < n; ++j) {
      kkt(n + i, j) = ck(i, j);
      kkt(j, n + i) = ck(i, j);
    }
  DenseVector rhs(m, 0.0);
  const EVec atb = 2.0 * (a.transpose() * to_eigen(b));
  for (int i = 0; i < n; ++i) rhs[i] = atb(i);
  for (int i = 0; i < rank; ++i) rhs[n + i] = dk(i);

  DenseVector sol = solve_linear(kkt, rhs);
  DenseVector x(sol.begin(), sol.begin() + n);

  // Dropped rows must be implied by the kept ones.
  double scale = std::max(1.0, C.max_abs());
  for (double v : d) scale = std::max(scale, std::abs(v));
  const EVec cx = c * to_eigen(x);
  for (int i = 0; i < C.rows(); ++i) {
    if (std::abs(cx(i) - d[i]) > 1e-9 * scale)
      throw InfeasibleConstraints("constrained_ls: dependent constraint row is inconsistent");
  }
  return x;
}

DenseVector symmetric_eigenvalues(const DenseMatrix& A) {
  if (A.rows() != A.cols()) throw NotSymmetric("symmetric_eigenvalues: matrix not square");
  double asym = 0.0, scale = 0.0;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      asym = std::max(asym, std::abs(A(i, j) - A(j, i)));
      scale = std::max(scale, std::abs(A(i, j)));
    }
  if (asym > 1e-12 * std::max(scale, 1e-300))
    throw NotSymmetric("symmetric_eigenvalues: asymmetry above tolerance");
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(A), Eigen::EigenvaluesOnly);
  return from_eigen(EVec(es.eigenvalues()));
}

int numerical_rank(const DenseMatrix& A, double rel_tol) {
  Eigen::ColPivHouseholderQR<EMat> qr(to_eigen(A));
  qr.setThreshold(rel_tol);
  return static_cast<int>(qr.rank());
}

}  // namespace linalg
}  // namespace sbpsat
