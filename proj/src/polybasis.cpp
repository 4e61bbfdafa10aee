#include "sbpsat/polybasis.hpp"

#include <cmath>

namespace sbpsat {
namespace polybasis {

int monomial_index(int i, int j) {
  if (i < 0 || j < 0 || i > j) throw InvalidIndex("monomial_index: requires 0 <= i <= j");
  return j * (j + 1) / 2 + i + 1;
}

BasisEvaluation monomial_vandermonde(int p, const NodeSet& nodes) {
  if (p < 0) throw InvalidArgument("monomial_vandermonde: negative degree");
  const int n = nodes.size();
  const int nb = basis_size(p);
  BasisEvaluation ev{DenseMatrix(n, nb), DenseMatrix(n, nb), DenseMatrix(n, nb)};
  for (int r = 0; r < n; ++r) {
    const double xi = nodes.pts[r][0];
    const double eta = nodes.pts[r][1];
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i <= j; ++i) {
        const int k = monomial_index(i, j) - 1;
        const int ie = j - i;  // eta exponent
        const double xi_i = std::pow(xi, i);
        const double eta_e = std::pow(eta, ie);
        ev.values(r, k) = xi_i * eta_e;
        ev.dxi(r, k) = (i == 0) ? 0.0 : i * std::pow(xi, i - 1) * eta_e;
        ev.deta(r, k) = (ie == 0) ? 0.0 : ie * xi_i * std::pow(eta, ie - 1);
      }
    }
  }
  return ev;
}

double jacobi(int n, int alpha, int beta, double x) {
  // Orthonormal Jacobi recurrence (unit norm under (1-x)^a (1+x)^b on [-1,1]).
  const double a = alpha, b = beta;
  double gamma0 = std::pow(2.0, a + b + 1.0) / (a + b + 1.0) * std::tgamma(a + 1.0) *
                  std::tgamma(b + 1.0) / std::tgamma(a + b + 1.0);
  double pm1 = 1.0 / std::sqrt(gamma0);
  if (n == 0) return pm1;
  double gamma1 = (a + 1.0) * (b + 1.0) / (a + b + 3.0) * gamma0;
  double pm = ((a + b + 2.0) * x / 2.0 + (a - b) / 2.0) / std::sqrt(gamma1);
  if (n == 1) return pm;
  double aold = 2.0 / (2.0 + a + b) * std::sqrt((a + 1.0) * (b + 1.0) / (a + b + 3.0));
  for (int i = 1; i <= n - 1; ++i) {
    const double h1 = 2.0 * i + a + b;
    const double anew = 2.0 / (h1 + 2.0) *
                        std::sqrt((i + 1.0) * (i + 1.0 + a + b) * (i + 1.0 + a) * (i + 1.0 + b) /
                                  ((h1 + 1.0) * (h1 + 3.0)));
    const double bnew = -(a * a - b * b) / (h1 * (h1 + 2.0));
    const double pnext = (-aold * pm1 + (x - bnew) * pm) / anew;
    pm1 = pm;
    pm = pnext;
    aold = anew;
  }
  return pm;
}

double jacobi_derivative(int n, int alpha, int beta, double x) {
  if (n == 0) return 0.0;
  return std::sqrt(n * (n + alpha + beta + 1.0)) * jacobi(n - 1, alpha + 1, beta + 1, x);
}

namespace {

// Collapsed coordinates on the biunit triangle: a = 2(1+r)/(1-s) - 1, b = s,
// with the top-vertex convention a = -1 when s = 1.
void collapsed(double r, double s, double& a, double& b) {
  b = s;
  a = (std::abs(1.0 - s) > 1e-14) ? 2.0 * (1.0 + r) / (1.0 - s) - 1.0 : -1.0;
}

double pkd_value(int id, int jd, double a, double b) {
  return std::sqrt(2.0) * jacobi(id, 0, 0, a) * jacobi(jd, 2 * id + 1, 0, b) *
         std::pow(1.0 - b, id);
}

// d/dr and d/ds on the biunit triangle; the (1-b) powers are kept grouped so
// the formulas stay polynomial at the collapsed vertex.
void pkd_gradient(int id, int jd, double a, double b, double& dr, double& ds) {
  const double fa = jacobi(id, 0, 0, a);
  const double dfa = jacobi_derivative(id, 0, 0, a);
  const double gb = jacobi(jd, 2 * id + 1, 0, b);
  const double dgb = jacobi_derivative(jd, 2 * id + 1, 0, b);
  const double half1mb = 0.5 * (1.0 - b);

  dr = dfa * gb;
  if (id > 0) dr *= std::pow(half1mb, id - 1);

  ds = dfa * gb * 0.5 * (1.0 + a);
  if (id > 0) ds *= std::pow(half1mb, id - 1);
  double tmp = dgb * std::pow(half1mb, id);
  if (id > 0) tmp -= 0.5 * id * gb * std::pow(half1mb, id - 1);
  ds += fa * tmp;

  const double norm = std::pow(2.0, id + 0.5);
  dr *= norm;
  ds *= norm;
}

}  // namespace

BasisEvaluation orthonormal_vandermonde(int p, const NodeSet& nodes) {
  if (p < 0) throw InvalidArgument("orthonormal_vandermonde: negative degree");
  const int n = nodes.size();
  const int nb = basis_size(p);
  BasisEvaluation ev{DenseMatrix(n, nb), DenseMatrix(n, nb), DenseMatrix(n, nb)};
  for (int row = 0; row < n; ++row) {
    // Unit triangle -> biunit triangle; basis scaled by 2 so the Gram matrix
    // over the unit triangle is the identity, derivatives pick up another 2.
    const double r = 2.0 * nodes.pts[row][0] - 1.0;
    const double s = 2.0 * nodes.pts[row][1] - 1.0;
    double a, b;
    collapsed(r, s, a, b);
    int col = 0;
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i <= j; ++i, ++col) {
        // Column order matches monomial_index: total degree j, then i.
        const int id = i, jd = j - i;
        ev.values(row, col) = 2.0 * pkd_value(id, jd, a, b);
        double dr, ds;
        pkd_gradient(id, jd, a, b, dr, ds);
        ev.dxi(row, col) = 4.0 * dr;
        ev.deta(row, col) = 4.0 * ds;
      }
    }
  }
  return ev;
}

DenseMatrix legendre_vandermonde(int p, const std::vector<double>& t) {
  DenseMatrix v(static_cast<int>(t.size()), p + 1);
  for (int r = 0; r < v.rows(); ++r) {
    const double x = 2.0 * t[r] - 1.0;
    // sqrt(2) rescales the [-1,1]-orthonormal polynomials to [0,1].
    for (int k = 0; k <= p; ++k) v(r, k) = std::sqrt(2.0) * polybasis::jacobi(k, 0, 0, x);
  }
  return v;
}

}  // namespace polybasis
}  // namespace sbpsat
