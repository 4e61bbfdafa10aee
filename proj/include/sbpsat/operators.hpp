#ifndef SBPSAT_OPERATORS_HPP
#define SBPSAT_OPERATORS_HPP

#include <array>
#include <string>

#include "sbpsat/cubature.hpp"

namespace sbpsat {

/// Complete diagonal-norm SBP operator bundle on the reference triangle.
///
/// R[j] is stored in its small form: it acts on the volume nodes listed in
/// face_nodes[j] (the p+1 face-collocated nodes for the gamma family, all n
/// nodes for omega) and produces values at the nu face-cubature nodes of
/// face j.  B[j] holds the length-scaled face-cubature weights.
struct SbpOperatorSet {
  Family family = Family::gamma;
  int p = 0;
  NodeSet nodes;
  std::vector<double> H;  // diagonal of the norm matrix
  DenseMatrix Sxi, Seta;
  DenseMatrix Exi, Eeta;
  DenseMatrix Dxi, Deta;
  std::array<DenseMatrix, 3> R;
  std::array<std::vector<int>, 3> face_nodes;
  std::array<std::vector<double>, 3> B;
  std::array<std::array<double, 2>, 3> face_normal;
  FaceRule facerule;  // unit-length parametrization shared by the faces

  int n() const { return nodes.size(); }
  int nu() const { return facerule.size(); }

  /// Extrapolate volume-node values to the face-cubature nodes of face j.
  DenseVector extrapolate(int face, const DenseVector& u) const;
  /// Scatter-accumulate face values back through R[j]^T: out += R_j^T f.
  void scatter_face(int face, const DenseVector& f, DenseVector& out) const;
};

struct OperatorCertification {
  double accuracy_residual = 0.0;      // max ||D p_k - p_k'||_inf over both directions
  double h_min = 0.0;
  double h_sum_error = 0.0;            // |sum(H) - 1/2|
  double skew_residual = 0.0;          // max ||S + S^T||
  double e_accuracy_residual = 0.0;    // vs analytic boundary-moment oracle
  double e_decomposition_residual = 0.0;
  double r_reproduction_residual = 0.0;
  double cubature_error = 0.0;         // certify at the table degree
  int cubature_degree = 0;
  int cubature_sharpness = 0;
  double degree_p1_residual = 0.0;     // recorded: D on degree p+1 monomials
  int s_nullspace_dim = 0;             // recorded per direction (equal by symmetry)
  double min_node_distance = 0.0;
  bool r_sizes_match = false;
  bool pass = false;
};

namespace operators {

/// Volume-to-face extrapolation operator for one face (small form).
DenseMatrix build_extrapolation(Family family, int p, int face);

/// Face-collocated volume node ids for the gamma family (sorted along the
/// face); the full index range for omega.
std::vector<int> collect_face_nodes(Family family, const NodeSet& nodes, int face, int p);

/// Boundary operators from the per-face decomposition E = sum n_j R_j^T B_j R_j.
void build_boundary_operators(SbpOperatorSet& ops);

/// Skew-symmetric parts from the accuracy conditions; minimum-norm solution
/// of the underdetermined system.  Returns the nullspace dimension.
int build_skew_operators(SbpOperatorSet& ops);

SbpOperatorSet build_operator(Family family, int p);

OperatorCertification certify_operator(const SbpOperatorSet& ops);

void export_json(const SbpOperatorSet& ops, const std::string& path);
SbpOperatorSet import_json(const std::string& path);

/// Expected R row/column counts per the published operator summary.
std::array<int, 2> expected_r_size(Family family, int p);

}  // namespace operators
}  // namespace sbpsat

#endif
