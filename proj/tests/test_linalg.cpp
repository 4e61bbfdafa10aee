#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sbpsat/linalg.hpp"

using namespace sbpsat;
using namespace sbpsat::linalg;

namespace {

DenseMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("solve_linear identity and diagonal") {
  DenseVector x = solve_linear(DenseMatrix::identity(3), {1.0, 2.0, 3.0});
  CHECK(max_abs_diff(x, {1.0, 2.0, 3.0}) == 0.0);

  DenseMatrix d(2, 2, {2.0, 0.0, 0.0, 4.0});
  x = solve_linear(d, {2.0, 8.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("solve_linear recovers a known solution of a random system") {
  std::mt19937_64 rng(17);
  DenseMatrix a = random_matrix(10, 10, rng);
  for (int i = 0; i < 10; ++i) a(i, i) += 5.0;  // keep it well conditioned
  DenseVector xstar(10);
  for (int i = 0; i < 10; ++i) xstar[i] = std::sin(i + 1.0);
  const DenseVector b = a.apply(xstar);
  const DenseVector x = solve_linear(a, b);
  CHECK(max_abs_diff(x, xstar) < 1e-10);
  CHECK(max_abs_diff(a.apply(x), b) < 1e-10 * 10.0);
}

TEST_CASE("solve_linear rejects singular matrices") {
  DenseMatrix s(2, 2, {1.0, 2.0, 2.0, 4.0});
  CHECK_THROWS_AS(solve_linear(s, {1.0, 1.0}), SingularMatrix);
}

TEST_CASE("pseudoinverse identity and column vector") {
  const DenseMatrix pi = pseudoinverse(DenseMatrix::identity(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(pi(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));

  DenseMatrix col(3, 1, {1.0, 1.0, 1.0});
  const DenseMatrix pc = pseudoinverse(col);
  REQUIRE(pc.rows() == 1);
  REQUIRE(pc.cols() == 3);
  for (int j = 0; j < 3; ++j) CHECK(pc(0, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("pseudoinverse of a square matrix matches solve_linear columns") {
  std::mt19937_64 rng(3);
  DenseMatrix a = random_matrix(6, 6, rng);
  for (int i = 0; i < 6; ++i) a(i, i) += 4.0;
  const DenseMatrix ainv = pseudoinverse(a);
  for (int j = 0; j < 6; ++j) {
    DenseVector e(6, 0.0);
    e[j] = 1.0;
    const DenseVector col = solve_linear(a, e);
    for (int i = 0; i < 6; ++i) CHECK(ainv(i, j) == doctest::Approx(col[i]).epsilon(1e-10));
  }
}

TEST_CASE("pseudoinverse satisfies the Moore-Penrose identities") {
  std::mt19937_64 rng(11);
  for (auto [rows, cols] : {std::pair{12, 7}, {7, 12}, {30, 30}, {25, 30}}) {
    const DenseMatrix a = random_matrix(rows, cols, rng);
    const DenseMatrix ap = pseudoinverse(a);
    const DenseMatrix aapa = a.multiply(ap).multiply(a);
    const DenseMatrix apaap = ap.multiply(a).multiply(ap);
    const DenseMatrix aap = a.multiply(ap);
    const DenseMatrix apa = ap.multiply(a);
    double r = 0.0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r = std::max(r, std::abs(aapa(i, j) - a(i, j)));
    for (int i = 0; i < cols; ++i)
      for (int j = 0; j < rows; ++j) r = std::max(r, std::abs(apaap(i, j) - ap(i, j)));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < rows; ++j) r = std::max(r, std::abs(aap(i, j) - aap(j, i)));
    for (int i = 0; i < cols; ++i)
      for (int j = 0; j < cols; ++j) r = std::max(r, std::abs(apa(i, j) - apa(j, i)));
    CHECK(r < 1e-9);
  }
}

TEST_CASE("pseudoinverse rejects rank-deficient input") {
  DenseMatrix a(3, 2, {1.0, 2.0, 2.0, 4.0, 3.0, 6.0});
  CHECK_THROWS_AS(pseudoinverse(a), RankDeficient);
}

TEST_CASE("constrained least squares: symmetric toy problem") {
  DenseMatrix c(1, 2, {1.0, 1.0});
  const DenseVector x =
      solve_equality_constrained_ls(DenseMatrix::identity(2), {1.0, 1.0}, c, {0.0});
  CHECK(std::abs(x[0]) < 1e-12);
  CHECK(std::abs(x[1]) < 1e-12);
}

TEST_CASE("constrained least squares: pinned component") {
  DenseMatrix c(1, 2, {0.0, 1.0});
  const DenseVector x =
      solve_equality_constrained_ls(DenseMatrix::identity(2), {1.0, 0.0}, c, {5.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("constrained least squares: empty constraints reduce to least squares") {
  std::mt19937_64 rng(5);
  const DenseMatrix a = random_matrix(8, 4, rng);
  DenseVector b(8);
  for (int i = 0; i < 8; ++i) b[i] = std::cos(0.7 * i);
  const DenseVector x = solve_equality_constrained_ls(a, b, DenseMatrix(), {});
  const DenseMatrix ap = pseudoinverse(a);
  const DenseVector xref = ap.apply(b);
  CHECK(max_abs_diff(x, xref) < 1e-10);
}

TEST_CASE("constrained least squares: KKT optimality on random problems") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a = random_matrix(10, 6, rng);
    const DenseMatrix c = random_matrix(2, 6, rng);
    DenseVector b(10), d(2);
    for (auto& v : b) v = std::sin(trial + v + 1.0);
    for (auto& v : d) v = 0.1 * trial;
    const DenseVector x = solve_equality_constrained_ls(a, b, c, d);
    CHECK(max_abs_diff(c.apply(x), d) < 1e-10 * std::max(1.0, c.max_abs()));
    // Stationarity: the residual gradient is in the row space of C.
    DenseVector r = a.apply(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    const DenseVector grad = a.apply_transposed(r);  // up to the C^T mu term
    const DenseMatrix cp = pseudoinverse(c.transposed());
    const DenseVector mu = cp.apply(grad);
    const DenseVector back = c.apply_transposed(mu);
    CHECK(max_abs_diff(back, grad) < 1e-9);
  }
}

TEST_CASE("constrained least squares: redundant consistent rows are accepted") {
  DenseMatrix c(2, 2, {1.0, 1.0, 2.0, 2.0});
  const DenseVector x =
      solve_equality_constrained_ls(DenseMatrix::identity(2), {1.0, 1.0}, c, {0.0, 0.0});
  CHECK(std::abs(x[0]) < 1e-12);
  CHECK(std::abs(x[1]) < 1e-12);
  CHECK_THROWS_AS(
      solve_equality_constrained_ls(DenseMatrix::identity(2), {1.0, 1.0}, c, {0.0, 1.0}),
      InfeasibleConstraints);
}

TEST_CASE("minimum-norm solve picks the shortest solution") {
  DenseMatrix a(1, 2, {1.0, 1.0});
  const DenseVector x = solve_minimum_norm(a, {2.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("symmetric eigenvalues: stated examples") {
  DenseMatrix d(3, 3, {3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0});
  DenseVector ev = symmetric_eigenvalues(d);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-14));

  DenseMatrix flip(2, 2, {0.0, 1.0, 1.0, 0.0});
  ev = symmetric_eigenvalues(flip);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));

  const double b = 0.37;
  DenseMatrix upw(2, 2, {b, -b, -b, b});
  ev = symmetric_eigenvalues(upw);
  CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0 * b).epsilon(1e-14));
}

TEST_CASE("symmetric eigenvalues: trace identities on random symmetric matrices") {
  std::mt19937_64 rng(29);
  const int n = 12;
  DenseMatrix a = random_matrix(n, n, rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) a(i, j) = a(j, i);
  const DenseVector ev = symmetric_eigenvalues(a);
  double tr = 0.0, tr2 = 0.0, s1 = 0.0, s2 = 0.0;
  const DenseMatrix a2 = a.multiply(a);
  for (int i = 0; i < n; ++i) {
    tr += a(i, i);
    tr2 += a2(i, i);
    s1 += ev[i];
    s2 += ev[i] * ev[i];
  }
  CHECK(s1 == doctest::Approx(tr).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(tr2).epsilon(1e-12));
  for (int i = 0; i + 1 < n; ++i) CHECK(ev[i] <= ev[i + 1]);
}

TEST_CASE("symmetric eigenvalues reject asymmetry") {
  DenseMatrix a(2, 2, {1.0, 2.0, 0.0, 1.0});
  CHECK_THROWS_AS(symmetric_eigenvalues(a), NotSymmetric);
}
