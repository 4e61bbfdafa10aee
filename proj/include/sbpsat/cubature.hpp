#ifndef SBPSAT_CUBATURE_HPP
#define SBPSAT_CUBATURE_HPP

#include <array>
#include <string>
#include <vector>

#include "sbpsat/polybasis.hpp"

namespace sbpsat {

enum class Family { gamma, omega };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Volume rule on the reference triangle; weights sum to the area 1/2.
struct CubatureRule {
  NodeSet nodes;
  std::vector<double> weights;
  int exactness_degree = -1;
};

/// Quadrature on a reference face, parametrized by t in [0,1] along the face;
/// weights are scaled so they sum to the face length.
struct FaceRule {
  std::vector<double> param;
  std::vector<double> weights;
  double length = 1.0;
  int size() const { return static_cast<int>(param.size()); }
};

/// Geometry of the three faces of the reference triangle.  Face j is opposite
/// vertex j and is traversed counterclockwise.
struct ReferenceFace {
  Point2 a, b;                 // endpoints, from a to b
  double length;
  std::array<double, 2> normal;  // outward unit normal
};
const std::array<ReferenceFace, 3>& reference_faces();

struct CertifyReport {
  int degree = 0;
  double max_error = 0.0;
  bool pass = false;
  int observed_sharpness = -1;  // largest degree that certifies at 1e-12
};

namespace cubature {

/// Exact integral of xi^i eta^j over the reference triangle: i! j! / (i+j+2)!.
double analytic_moment(int i, int j);

/// Exact integral of xi^a eta^b times a unit-normal component over face j.
/// Used as the independent oracle for the boundary operators.
double analytic_face_moment(int face, int a, int b, bool xi_component);

/// Frozen symmetric volume rule for the requested operator family and degree.
CubatureRule volume_cubature(Family family, int p);

/// Legendre-Gauss rule with p+1 nodes mapped to a face of the given length.
FaceRule face_rule(int p, double length = 1.0);

CertifyReport certify(const CubatureRule& rule, int degree);
CertifyReport certify(const FaceRule& rule, int degree);

/// Tensor Legendre-Gauss rule collapsed onto the triangle; exact to the
/// requested degree.  Serves as an integration oracle independent of the
/// frozen tables.
CubatureRule tensor_reference_rule(int degree);

/// Re-derives a family rule from scratch by Newton iteration on the
/// symmetry-orbit parameters.  Throws ConstructionFailed if no positive rule
/// is found.  The shipped tables were produced by this solver.
CubatureRule solve_symmetric_rule(Family family, int p);

void export_csv(const CubatureRule& rule, const std::string& path);

}  // namespace cubature
}  // namespace sbpsat

#endif
