#include "sbpsat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace sbpsat {

DenseVector SbpOperatorSet::extrapolate(int face, const DenseVector& u) const {
  const auto& ids = face_nodes[face];
  DenseVector local(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) local[i] = u[ids[i]];
  return R[face].apply(local);
}

void SbpOperatorSet::scatter_face(int face, const DenseVector& f, DenseVector& out) const {
  const DenseVector local = R[face].apply_transposed(f);
  const auto& ids = face_nodes[face];
  for (size_t i = 0; i < ids.size(); ++i) out[ids[i]] += local[i];
}

namespace operators {

std::array<int, 2> expected_r_size(Family family, int p) {
  if (family == Family::gamma) return {p + 1, p + 1};
  static const int omega_n[5] = {0, 3, 6, 10, 15};
  return {p + 1, omega_n[p]};
}

std::vector<int> collect_face_nodes(Family family, const NodeSet& nodes, int face, int p) {
  std::vector<int> ids;
  if (family == Family::omega) {
    ids.resize(nodes.size());
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return ids;
  }
  const ReferenceFace& f = reference_faces().at(face);
  const double dx = f.b[0] - f.a[0], dy = f.b[1] - f.a[1];
  const double len2 = dx * dx + dy * dy;
  std::vector<std::pair<double, int>> hits;  // (face parameter, node id)
  for (int i = 0; i < nodes.size(); ++i) {
    const double rx = nodes.pts[i][0] - f.a[0], ry = nodes.pts[i][1] - f.a[1];
    const double t = (rx * dx + ry * dy) / len2;
    const double off = std::abs(rx * dy - ry * dx) / std::sqrt(len2);
    if (off < 1e-12 && t > -1e-12 && t < 1.0 + 1e-12) hits.push_back({t, i});
  }
  std::sort(hits.begin(), hits.end());
  if (static_cast<int>(hits.size()) != p + 1)
    throw ConstructionFailed("collect_face_nodes: face does not carry p+1 volume nodes");
  for (auto& h : hits) ids.push_back(h.second);
  return ids;
}

namespace {

// Face parameter of volume node id along face j.
double face_parameter(const NodeSet& nodes, int face, int id) {
  const ReferenceFace& f = reference_faces().at(face);
  const double dx = f.b[0] - f.a[0], dy = f.b[1] - f.a[1];
  const double rx = nodes.pts[id][0] - f.a[0], ry = nodes.pts[id][1] - f.a[1];
  return (rx * dx + ry * dy) / (dx * dx + dy * dy);
}

NodeSet face_cubature_points(int face, const FaceRule& rule) {
  const ReferenceFace& f = reference_faces().at(face);
  NodeSet pts;
  for (double t : rule.param)
    pts.pts.push_back({f.a[0] + t * (f.b[0] - f.a[0]), f.a[1] + t * (f.b[1] - f.a[1])});
  return pts;
}

}  // namespace

DenseMatrix build_extrapolation(Family family, int p, int face) {
  const FaceRule rule = cubature::face_rule(p);
  const CubatureRule cub = cubature::volume_cubature(family, p);
  if (family == Family::gamma) {
    // 1D interpolation from the p+1 face-collocated volume nodes to the
    // Legendre-Gauss points, in a Legendre basis along the face.
    const std::vector<int> ids = collect_face_nodes(family, cub.nodes, face, p);
    std::vector<double> tvol;
    for (int id : ids) tvol.push_back(face_parameter(cub.nodes, face, id));
    const DenseMatrix v_face = polybasis::legendre_vandermonde(p, rule.param);
    const DenseMatrix v_vol = polybasis::legendre_vandermonde(p, tvol);
    return v_face.multiply(linalg::pseudoinverse(v_vol));
  }
  const BasisEvaluation v_vol = polybasis::orthonormal_vandermonde(p, cub.nodes);
  const BasisEvaluation v_face =
      polybasis::orthonormal_vandermonde(p, face_cubature_points(face, rule));
  return v_face.values.multiply(linalg::pseudoinverse(v_vol.values));
}

void build_boundary_operators(SbpOperatorSet& ops) {
  const int n = ops.n();
  ops.Exi = DenseMatrix(n, n);
  ops.Eeta = DenseMatrix(n, n);
  for (int j = 0; j < 3; ++j) {
    const auto& ids = ops.face_nodes[j];
    const DenseMatrix& r = ops.R[j];
    // Local nu x m block R^T B R scattered into the global matrix.
    for (int a = 0; a < r.cols(); ++a)
      for (int b = 0; b < r.cols(); ++b) {
        double s = 0.0;
        for (int q = 0; q < r.rows(); ++q) s += r(q, a) * ops.B[j][q] * r(q, b);
        ops.Exi(ids[a], ids[b]) += ops.face_normal[j][0] * s;
        ops.Eeta(ids[a], ids[b]) += ops.face_normal[j][1] * s;
      }
  }
}

namespace {

int upper_index(int i, int j, int n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

// Minimum-norm skew part for one coordinate direction: solve S p_k = f_k for
// the strictly-upper entries, f_k = H p_k' - E p_k / 2.
DenseMatrix solve_skew(const std::vector<double>& H, const DenseMatrix& E,
                       const DenseMatrix& values, const DenseMatrix& derivs, int* nullspace_dim) {
  const int n = static_cast<int>(H.size());
  const int nb = values.cols();
  const int nunk = n * (n - 1) / 2;
  DenseMatrix A(n * nb, nunk);
  DenseVector rhs(n * nb);
  for (int k = 0; k < nb; ++k) {
    DenseVector pk(n), fk(n);
    for (int r = 0; r < n; ++r) pk[r] = values(r, k);
    const DenseVector epk = E.apply(pk);
    for (int r = 0; r < n; ++r) fk[r] = H[r] * derivs(r, k) - 0.5 * epk[r];
    for (int r = 0; r < n; ++r) {
      const int row = k * n + r;
      for (int c = 0; c < n; ++c) {
        if (c == r) continue;
        if (r < c)
          A(row, upper_index(r, c, n)) = pk[c];
        else
          A(row, upper_index(c, r, n)) = -pk[c];
      }
      rhs[row] = fk[r];
    }
  }
  const DenseVector s = linalg::solve_minimum_norm(A, rhs);
  // The accuracy system must be consistent for a valid cubature/E pair.
  const DenseVector res = A.apply(s);
  double scale = 1.0;
  for (double v : rhs) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < res.size(); ++i)
    if (std::abs(res[i] - rhs[i]) > 1e-10 * scale)
      throw Inconsistent("solve_skew: accuracy system has no skew-symmetric solution");
  if (nullspace_dim) *nullspace_dim = nunk - linalg::numerical_rank(A, 1e-11);
  DenseMatrix S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      S(i, j) = s[upper_index(i, j, n)];
      S(j, i) = -S(i, j);
    }
  return S;
}

void finalize_derivatives(SbpOperatorSet& ops) {
  const int n = ops.n();
  ops.Dxi = DenseMatrix(n, n);
  ops.Deta = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ops.Dxi(i, j) = (ops.Sxi(i, j) + 0.5 * ops.Exi(i, j)) / ops.H[i];
      ops.Deta(i, j) = (ops.Seta(i, j) + 0.5 * ops.Eeta(i, j)) / ops.H[i];
    }
}

}  // namespace

int build_skew_operators(SbpOperatorSet& ops) {
  const BasisEvaluation mono = polybasis::monomial_vandermonde(ops.p, ops.nodes);
  int dim_xi = 0, dim_eta = 0;
  ops.Sxi = solve_skew(ops.H, ops.Exi, mono.values, mono.dxi, &dim_xi);
  ops.Seta = solve_skew(ops.H, ops.Eeta, mono.values, mono.deta, &dim_eta);
  finalize_derivatives(ops);
  return std::max(dim_xi, dim_eta);
}

SbpOperatorSet build_operator(Family family, int p) {
  SbpOperatorSet ops;
  ops.family = family;
  ops.p = p;
  const CubatureRule cub = cubature::volume_cubature(family, p);
  ops.nodes = cub.nodes;
  ops.H = cub.weights;
  ops.facerule = cubature::face_rule(p);
  for (int j = 0; j < 3; ++j) {
    const ReferenceFace& f = reference_faces()[j];
    ops.face_normal[j] = {f.normal[0], f.normal[1]};
    ops.face_nodes[j] = collect_face_nodes(family, ops.nodes, j, p);
    ops.R[j] = build_extrapolation(family, p, j);
    ops.B[j].resize(ops.facerule.size());
    for (int q = 0; q < ops.facerule.size(); ++q)
      ops.B[j][q] = ops.facerule.weights[q] * f.length;
  }
  build_boundary_operators(ops);
  build_skew_operators(ops);
  return ops;
}

OperatorCertification certify_operator(const SbpOperatorSet& ops) {
  OperatorCertification cert;
  const int n = ops.n();
  const int nb = polybasis::basis_size(ops.p);
  const BasisEvaluation mono = polybasis::monomial_vandermonde(ops.p + 1, ops.nodes);

  // Property I: D p_k = p_k' for all monomials of total degree <= p.
  for (int k = 0; k < nb; ++k) {
    DenseVector pk(n);
    for (int r = 0; r < n; ++r) pk[r] = mono.values(r, k);
    const DenseVector dx = ops.Dxi.apply(pk);
    const DenseVector de = ops.Deta.apply(pk);
    for (int r = 0; r < n; ++r) {
      cert.accuracy_residual = std::max(cert.accuracy_residual, std::abs(dx[r] - mono.dxi(r, k)));
      cert.accuracy_residual = std::max(cert.accuracy_residual, std::abs(de[r] - mono.deta(r, k)));
    }
  }
  // Recorded only: residual on the degree p+1 monomials.
  for (int k = nb; k < polybasis::basis_size(ops.p + 1); ++k) {
    DenseVector pk(n);
    for (int r = 0; r < n; ++r) pk[r] = mono.values(r, k);
    const DenseVector dx = ops.Dxi.apply(pk);
    for (int r = 0; r < n; ++r)
      cert.degree_p1_residual = std::max(cert.degree_p1_residual, std::abs(dx[r] - mono.dxi(r, k)));
  }

  cert.h_min = *std::min_element(ops.H.begin(), ops.H.end());
  double hsum = 0.0;
  for (double w : ops.H) hsum += w;
  cert.h_sum_error = std::abs(hsum - 0.5);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cert.skew_residual = std::max(cert.skew_residual, std::abs(ops.Sxi(i, j) + ops.Sxi(j, i)));
      cert.skew_residual = std::max(cert.skew_residual, std::abs(ops.Seta(i, j) + ops.Seta(j, i)));
    }

  // Property III accuracy against the analytic boundary-moment oracle.
  for (int k = 0; k < nb; ++k)
    for (int m = 0; m < nb; ++m) {
      DenseVector pk(n), pm(n);
      for (int r = 0; r < n; ++r) {
        pk[r] = mono.values(r, k);
        pm[r] = mono.values(r, m);
      }
      // Monomial exponents from the ordering.
      auto exponents = [](int idx) {
        int j = 0;
        while ((j + 1) * (j + 2) / 2 <= idx) ++j;
        const int i = idx - j * (j + 1) / 2;
        return std::array<int, 2>{i, j - i};
      };
      const auto [i1, j1] = exponents(k);
      const auto [i2, j2] = exponents(m);
      double oxi = 0.0, oeta = 0.0;
      for (int f = 0; f < 3; ++f) {
        oxi += cubature::analytic_face_moment(f, i1 + i2, j1 + j2, true);
        oeta += cubature::analytic_face_moment(f, i1 + i2, j1 + j2, false);
      }
      const DenseVector exk = ops.Exi.apply(pm);
      const DenseVector eek = ops.Eeta.apply(pm);
      double axi = 0.0, aeta = 0.0;
      for (int r = 0; r < n; ++r) {
        axi += pk[r] * exk[r];
        aeta += pk[r] * eek[r];
      }
      cert.e_accuracy_residual = std::max(cert.e_accuracy_residual, std::abs(axi - oxi));
      cert.e_accuracy_residual = std::max(cert.e_accuracy_residual, std::abs(aeta - oeta));
    }

  // Decomposition: rebuild E from R, B, normals and compare entrywise.
  {
    SbpOperatorSet tmp = ops;
    build_boundary_operators(tmp);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cert.e_decomposition_residual =
            std::max(cert.e_decomposition_residual, std::abs(tmp.Exi(i, j) - ops.Exi(i, j)));
        cert.e_decomposition_residual =
            std::max(cert.e_decomposition_residual, std::abs(tmp.Eeta(i, j) - ops.Eeta(i, j)));
      }
  }

  // R reproduces degree-p polynomials at the face-cubature nodes.
  for (int f = 0; f < 3; ++f) {
    const BasisEvaluation vface = polybasis::orthonormal_vandermonde(
        ops.p, face_cubature_points(f, ops.facerule));
    const BasisEvaluation vvol = polybasis::orthonormal_vandermonde(ops.p, ops.nodes);
    for (int k = 0; k < nb; ++k) {
      DenseVector pk(n);
      for (int r = 0; r < n; ++r) pk[r] = vvol.values(r, k);
      const DenseVector at_face = ops.extrapolate(f, pk);
      for (int q = 0; q < ops.nu(); ++q)
        cert.r_reproduction_residual =
            std::max(cert.r_reproduction_residual, std::abs(at_face[q] - vface.values(q, k)));
    }
  }

  CubatureRule cub;
  cub.nodes = ops.nodes;
  cub.weights = ops.H;
  static const int gamma_degree[5] = {0, 1, 3, 5, 7};
  static const int omega_degree[5] = {0, 2, 4, 5, 7};
  cert.cubature_degree = (ops.family == Family::gamma) ? gamma_degree[ops.p] : omega_degree[ops.p];
  const CertifyReport crep = cubature::certify(cub, cert.cubature_degree);
  cert.cubature_error = crep.max_error;
  cert.cubature_sharpness = crep.observed_sharpness;

  double dmin = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dmin = std::min(dmin, std::hypot(ops.nodes.pts[i][0] - ops.nodes.pts[j][0],
                                       ops.nodes.pts[i][1] - ops.nodes.pts[j][1]));
  cert.min_node_distance = dmin;

  const auto rsize = expected_r_size(ops.family, ops.p);
  cert.r_sizes_match = true;
  for (int f = 0; f < 3; ++f)
    if (ops.R[f].rows() != rsize[0] || ops.R[f].cols() != rsize[1]) cert.r_sizes_match = false;

  cert.pass = cert.accuracy_residual <= 1e-10 && cert.h_min > 0.0 && cert.h_sum_error <= 1e-13 &&
              cert.skew_residual <= 1e-13 && cert.e_accuracy_residual <= 1e-10 &&
              cert.e_decomposition_residual <= 1e-13 && cert.r_reproduction_residual <= 1e-12 &&
              cert.cubature_error <= 1e-12 && cert.r_sizes_match;
  return cert;
}

namespace {

nlohmann::json matrix_json(const DenseMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  DenseMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  m.data() = j.at("data").get<std::vector<double>>();
  if (static_cast<int>(m.data().size()) != m.rows() * m.cols())
    throw IoError("operator import: matrix size mismatch");
  return m;
}

}  // namespace

void export_json(const SbpOperatorSet& ops, const std::string& path) {
  nlohmann::json j;
  j["family"] = family_name(ops.family);
  j["p"] = ops.p;
  std::vector<std::array<double, 2>> pts(ops.nodes.pts.begin(), ops.nodes.pts.end());
  j["nodes"] = pts;
  j["H"] = ops.H;
  j["Sxi"] = matrix_json(ops.Sxi);
  j["Seta"] = matrix_json(ops.Seta);
  for (int f = 0; f < 3; ++f) {
    j["R"][f] = matrix_json(ops.R[f]);
    j["face_nodes"][f] = ops.face_nodes[f];
    j["B"][f] = ops.B[f];
    j["normals"][f] = ops.face_normal[f];
  }
  j["face_param"] = ops.facerule.param;
  j["face_weights"] = ops.facerule.weights;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << j.dump(1) << "\n";
}

SbpOperatorSet import_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  in >> j;
  SbpOperatorSet ops;
  ops.family = family_from_name(j.at("family").get<std::string>());
  ops.p = j.at("p").get<int>();
  for (auto& pt : j.at("nodes")) ops.nodes.pts.push_back({pt[0].get<double>(), pt[1].get<double>()});
  ops.H = j.at("H").get<std::vector<double>>();
  ops.Sxi = matrix_from_json(j.at("Sxi"));
  ops.Seta = matrix_from_json(j.at("Seta"));
  for (int f = 0; f < 3; ++f) {
    ops.R[f] = matrix_from_json(j.at("R")[f]);
    ops.face_nodes[f] = j.at("face_nodes")[f].get<std::vector<int>>();
    ops.B[f] = j.at("B")[f].get<std::vector<double>>();
    auto nr = j.at("normals")[f].get<std::vector<double>>();
    ops.face_normal[f] = {nr[0], nr[1]};
  }
  ops.facerule.param = j.at("face_param").get<std::vector<double>>();
  ops.facerule.weights = j.at("face_weights").get<std::vector<double>>();
  ops.facerule.length = 1.0;
  build_boundary_operators(ops);
  const int n = ops.n();
  ops.Dxi = DenseMatrix(n, n);
  ops.Deta = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) {
      ops.Dxi(i, jj) = (ops.Sxi(i, jj) + 0.5 * ops.Exi(i, jj)) / ops.H[i];
      ops.Deta(i, jj) = (ops.Seta(i, jj) + 0.5 * ops.Eeta(i, jj)) / ops.H[i];
    }
  return ops;
}

}  // namespace operators
}  // namespace sbpsat
