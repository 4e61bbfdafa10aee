#ifndef SBPSAT_POLYBASIS_HPP
#define SBPSAT_POLYBASIS_HPP

#include <array>
#include <vector>

#include "sbpsat/linalg.hpp"

namespace sbpsat {

using Point2 = std::array<double, 2>;

/// Points on the closure of the reference triangle with vertices
/// (0,0), (1,0), (0,1).
struct NodeSet {
  std::vector<Point2> pts;
  int size() const { return static_cast<int>(pts.size()); }
};

/// Basis values and first derivatives at a node set; one column per basis
/// function, one row per node.
struct BasisEvaluation {
  DenseMatrix values;
  DenseMatrix dxi;
  DenseMatrix deta;
};

namespace polybasis {

/// Number of bivariate polynomials of total degree <= p.
inline int basis_size(int p) { return (p + 1) * (p + 2) / 2; }

/// 1-based position of the monomial xi^i eta^(j-i) in the nondecreasing-degree
/// ordering, where j is the total degree: k = j(j+1)/2 + i + 1.
int monomial_index(int i, int j);

/// Monomial basis xi^i eta^(j-i), columns ordered by monomial_index.
BasisEvaluation monomial_vandermonde(int p, const NodeSet& nodes);

/// Orthonormal (Proriol-Koornwinder-Dubiner) basis on the reference triangle,
/// built in collapsed coordinates; spans the same space as the monomials and
/// has an identity Gram matrix under exact integration.
BasisEvaluation orthonormal_vandermonde(int p, const NodeSet& nodes);

/// Orthonormal Jacobi polynomial P_n^(alpha,beta) on [-1,1] and its derivative
/// (unit norm with respect to the Jacobi weight).  Building block for the
/// triangle basis, 1D face bases, and Legendre-Gauss rules.
double jacobi(int n, int alpha, int beta, double x);
double jacobi_derivative(int n, int alpha, int beta, double x);

/// 1D orthonormal Legendre basis on the unit interval evaluated at parameters
/// t in [0,1]: columns k = 0..p.
DenseMatrix legendre_vandermonde(int p, const std::vector<double>& t);

}  // namespace polybasis
}  // namespace sbpsat

#endif
