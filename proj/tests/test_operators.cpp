#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "sbpsat/operators.hpp"

using namespace sbpsat;
using namespace sbpsat::operators;

namespace {

const SbpOperatorSet& cached(Family f, int p) {
  static std::map<std::pair<int, int>, SbpOperatorSet> cache;
  auto key = std::make_pair(static_cast<int>(f), p);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_operator(f, p)).first;
  return it->second;
}

}  // namespace

TEST_CASE("R matrix sizes match the published operator summary") {
  CHECK(expected_r_size(Family::gamma, 3) == std::array<int, 2>{4, 4});
  CHECK(expected_r_size(Family::omega, 4) == std::array<int, 2>{5, 15});
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const SbpOperatorSet& ops = cached(f, p);
      const auto sz = expected_r_size(f, p);
      for (int face = 0; face < 3; ++face) {
        CHECK(ops.R[face].rows() == sz[0]);
        CHECK(ops.R[face].cols() == sz[1]);
      }
    }
}

TEST_CASE("R reproduces constants and degree-p polynomials at face nodes") {
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const SbpOperatorSet& ops = cached(f, p);
      const DenseVector ones(ops.n(), 1.0);
      for (int face = 0; face < 3; ++face) {
        const DenseVector at_face = ops.extrapolate(face, ones);
        for (double v : at_face) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
}

TEST_CASE("E matrices: closed boundary, analytic first moment, and symmetry") {
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const SbpOperatorSet& ops = cached(f, p);
      const int n = ops.n();
      const DenseVector ones(n, 1.0);
      DenseVector xi(n);
      for (int i = 0; i < n; ++i) xi[i] = ops.nodes.pts[i][0];

      const DenseVector e1 = ops.Exi.apply(ones);
      double t = 0.0;
      for (double v : e1) t += v;
      CHECK(std::abs(t) < 1e-13);  // 1'E 1 = 0

      const DenseVector exi = ops.Exi.apply(xi);
      double m = 0.0;
      for (int i = 0; i < n; ++i) m += exi[i];
      CHECK(m == doctest::Approx(0.5).epsilon(1e-12));  // boundary integral of xi n_xi

      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(std::abs(ops.Exi(i, j) - ops.Exi(j, i)) < 1e-14);
          CHECK(std::abs(ops.Eeta(i, j) - ops.Eeta(j, i)) < 1e-14);
        }
    }
}

TEST_CASE("derivative examples: constants and the linear monomial") {
  for (Family f : {Family::gamma, Family::omega}) {
    const SbpOperatorSet& ops = cached(f, 2);
    const int n = ops.n();
    const DenseVector d0 = ops.Dxi.apply(DenseVector(n, 1.0));
    for (double v : d0) CHECK(std::abs(v) < 1e-12);
    DenseVector xi(n);
    for (int i = 0; i < n; ++i) xi[i] = ops.nodes.pts[i][0];
    const DenseVector d1 = ops.Dxi.apply(xi);
    for (double v : d1) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("compatibility identity V'HVx + Vx'HV = V'EV") {
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const SbpOperatorSet& ops = cached(f, p);
      const BasisEvaluation mono = polybasis::monomial_vandermonde(p, ops.nodes);
      const int nb = mono.values.cols();
      DenseMatrix hv(ops.n(), nb), hvx(ops.n(), nb);
      for (int i = 0; i < ops.n(); ++i)
        for (int c = 0; c < nb; ++c) {
          hv(i, c) = ops.H[i] * mono.values(i, c);
          hvx(i, c) = ops.H[i] * mono.dxi(i, c);
        }
      const DenseMatrix lhs =
          mono.values.transposed().multiply(hvx) + mono.dxi.transposed().multiply(hv);
      const DenseMatrix rhs = mono.values.transposed().multiply(ops.Exi.multiply(mono.values));
      double err = 0.0;
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) err = std::max(err, std::abs(lhs(a, b) - rhs(a, b)));
      CHECK(err < 1e-10);
    }
}

TEST_CASE("full certification passes for every family and degree") {
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const OperatorCertification cert = certify_operator(cached(f, p));
      INFO(family_name(f), " p=", p, " accuracy=", cert.accuracy_residual, " E=",
           cert.e_accuracy_residual);
      CHECK(cert.pass);
      CHECK(cert.accuracy_residual <= 1e-10);
      CHECK(cert.skew_residual <= 1e-13);
      CHECK(cert.e_decomposition_residual <= 1e-13);
      CHECK(cert.e_accuracy_residual <= 1e-10);
      CHECK(cert.cubature_error <= 1e-12);
      CHECK(cert.h_sum_error <= 1e-13);
      CHECK(cert.h_min > 0.0);
      CHECK(cert.r_sizes_match);
    }
}

TEST_CASE("omega: unique derivative operator matches the direct Vandermonde route") {
  for (int p = 1; p <= 4; ++p) {
    const SbpOperatorSet& ops = cached(Family::omega, p);
    // n = n_p*, so D is uniquely V_xi V^{-1}; an independent construction.
    const BasisEvaluation mono = polybasis::monomial_vandermonde(p, ops.nodes);
    const DenseMatrix vinv = linalg::pseudoinverse(mono.values);
    const DenseMatrix dref = mono.dxi.multiply(vinv);
    double err = 0.0;
    for (int i = 0; i < ops.n(); ++i)
      for (int j = 0; j < ops.n(); ++j) err = std::max(err, std::abs(dref(i, j) - ops.Dxi(i, j)));
    CHECK(err < 1e-9);
  }
}

TEST_CASE("skew nullspace: omega determined, gamma p>=3 underdetermined; minimum norm") {
  std::mt19937_64 rng(41);
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const SbpOperatorSet& ops = cached(f, p);
      const int n = ops.n();
      const BasisEvaluation mono = polybasis::monomial_vandermonde(p, ops.nodes);
      const int nb = mono.values.cols();
      const int nunk = n * (n - 1) / 2;
      // Rebuild the accuracy system for the xi direction (test-side route).
      auto uidx = [n](int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };
      DenseMatrix A(n * nb, nunk);
      DenseVector s(nunk);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s[uidx(i, j)] = ops.Sxi(i, j);
      for (int k = 0; k < nb; ++k)
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            if (c == r) continue;
            if (r < c)
              A(k * n + r, uidx(r, c)) = mono.values(c, k);
            else
              A(k * n + r, uidx(c, r)) = -mono.values(c, k);
          }
      const int rank = linalg::numerical_rank(A, 1e-11);
      const int nullity = nunk - rank;
      if (f == Family::omega) CHECK(nullity == 0);
      if (f == Family::gamma && p >= 3) CHECK(nullity > 0);

      // Minimum-norm optimality: the solution is orthogonal to the nullspace.
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int trial = 0; trial < 5; ++trial) {
        DenseVector w(nunk);
        for (auto& v : w) v = u(rng);
        const DenseVector proj = linalg::solve_minimum_norm(A, A.apply(w));
        DenseVector vnull(nunk);
        double nn = 0.0, dot = 0.0;
        for (int c = 0; c < nunk; ++c) {
          vnull[c] = w[c] - proj[c];
          nn += vnull[c] * vnull[c];
          dot += vnull[c] * s[c];
        }
        if (nn > 1e-16) CHECK(std::abs(dot) / std::sqrt(nn) < 1e-8);
      }
    }
}

TEST_CASE("swap symmetry maps the xi operator onto the eta operator") {
  for (Family f : {Family::gamma, Family::omega})
    for (int p = 1; p <= 4; ++p) {
      const SbpOperatorSet& ops = cached(f, p);
      const int n = ops.n();
      // Node permutation under (xi, eta) -> (eta, xi).
      std::vector<int> perm(n, -1);
      for (int i = 0; i < n; ++i) {
        for (int m = 0; m < n; ++m)
          if (std::hypot(ops.nodes.pts[m][0] - ops.nodes.pts[i][1],
                         ops.nodes.pts[m][1] - ops.nodes.pts[i][0]) < 1e-12)
            perm[i] = m;
        REQUIRE(perm[i] >= 0);
        CHECK(std::abs(ops.H[perm[i]] - ops.H[i]) < 1e-13);
      }
      // (D_xi)_{perm(i) perm(j)} = (D_eta)_{ij}
      double err = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          err = std::max(err, std::abs(ops.Dxi(perm[i], perm[j]) - ops.Deta(i, j)));
      CHECK(err < 1e-9);
    }
}

TEST_CASE("operator JSON round trip is exact") {
  const SbpOperatorSet& ops = cached(Family::gamma, 3);
  const std::string path = "ops_gamma3_roundtrip.json";
  export_json(ops, path);
  const SbpOperatorSet back = import_json(path);
  CHECK(back.family == ops.family);
  CHECK(back.p == ops.p);
  REQUIRE(back.n() == ops.n());
  for (int i = 0; i < ops.n(); ++i) {
    CHECK(back.H[i] == ops.H[i]);
    CHECK(back.nodes.pts[i][0] == ops.nodes.pts[i][0]);
  }
  double err = 0.0;
  for (int i = 0; i < ops.n(); ++i)
    for (int j = 0; j < ops.n(); ++j) {
      err = std::max(err, std::abs(back.Sxi(i, j) - ops.Sxi(i, j)));
      err = std::max(err, std::abs(back.Dxi(i, j) - ops.Dxi(i, j)));
      err = std::max(err, std::abs(back.Exi(i, j) - ops.Exi(i, j)));
    }
  CHECK(err == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("degree p+1 sharpness is recorded") {
  for (Family f : {Family::gamma, Family::omega}) {
    const OperatorCertification cert = certify_operator(cached(f, 2));
    CHECK(cert.degree_p1_residual > 1e-8);  // operators are degree p, not higher
  }
}
