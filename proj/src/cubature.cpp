#include "sbpsat/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "sbpsat/linalg.hpp"

namespace sbpsat {

std::string family_name(Family f) { return f == Family::gamma ? "gamma" : "omega"; }

Family family_from_name(const std::string& name) {
  if (name == "gamma" || name == "SBPGamma") return Family::gamma;
  if (name == "omega" || name == "SBPOmega") return Family::omega;
  throw UnknownName("unknown operator family: " + name);
}

const std::array<ReferenceFace, 3>& reference_faces() {
  static const double s = std::sqrt(2.0);
  static const std::array<ReferenceFace, 3> faces = {{
      {{1.0, 0.0}, {0.0, 1.0}, s, {1.0 / s, 1.0 / s}},
      {{0.0, 1.0}, {0.0, 0.0}, 1.0, {-1.0, 0.0}},
      {{0.0, 0.0}, {1.0, 0.0}, 1.0, {0.0, -1.0}},
  }};
  return faces;
}

namespace cubature {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double analytic_moment(int i, int j) {
  if (i < 0 || j < 0) throw InvalidArgument("analytic_moment: negative exponent");
  // i! j! / (i+j+2)! = 1 / (C(i+j+2, i) * (j+1) * (j+2))
  return 1.0 / (binomial(i + j + 2, i) * (j + 1.0) * (j + 2.0));
}

double analytic_face_moment(int face, int a, int b, bool xi_component) {
  const ReferenceFace& f = reference_faces().at(face);
  const double nc = xi_component ? f.normal[0] : f.normal[1];
  const double ax = f.a[0], ay = f.a[1];
  const double dx = f.b[0] - ax, dy = f.b[1] - ay;
  double integral = 0.0;  // int_0^1 (ax + t dx)^a (ay + t dy)^b dt
  for (int r = 0; r <= a; ++r) {
    const double cr = binomial(a, r) * std::pow(ax, a - r) * std::pow(dx, r);
    if (cr == 0.0) continue;
    for (int s = 0; s <= b; ++s) {
      const double cs = binomial(b, s) * std::pow(ay, b - s) * std::pow(dy, s);
      if (cs == 0.0) continue;
      integral += cr * cs / (r + s + 1.0);
    }
  }
  return nc * f.length * integral;
}

namespace {

// Legendre-Gauss nodes on (-1,1) by Newton iteration on the orthonormal
// Legendre polynomial.
std::vector<double> legendre_gauss_nodes(int nu) {
  std::vector<double> x(nu);
  for (int k = 0; k < nu; ++k) {
    double xi = -std::cos(M_PI * (k + 0.75) / (nu + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double f = polybasis::jacobi(nu, 0, 0, xi);
      const double df = polybasis::jacobi_derivative(nu, 0, 0, xi);
      const double dx = f / df;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[k] = xi;
  }
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

FaceRule face_rule(int p, double length) {
  if (p < 1 || p > 4) throw InvalidArgument("face_rule: p must be in 1..4");
  const int nu = p + 1;
  FaceRule rule;
  rule.length = length;
  const std::vector<double> x = legendre_gauss_nodes(nu);
  for (double xi : x) {
    const double dp = polybasis::jacobi_derivative(nu, 0, 0, xi);
    const double w = (2.0 * nu + 1.0) / ((1.0 - xi * xi) * dp * dp);
    rule.param.push_back(0.5 * (xi + 1.0));
    rule.weights.push_back(0.5 * w * length);
  }
  return rule;
}

CertifyReport certify(const CubatureRule& rule, int degree) {
  CertifyReport rep;
  rep.degree = degree;
  auto max_err_at = [&](int d) {
    double err = 0.0;
    for (int q = 0; q <= d; ++q)
      for (int i = 0; i <= q; ++i) {
        const int j = q - i;
        double s = 0.0;
        for (size_t k = 0; k < rule.weights.size(); ++k)
          s += rule.weights[k] * std::pow(rule.nodes.pts[k][0], i) * std::pow(rule.nodes.pts[k][1], j);
        err = std::max(err, std::abs(s - analytic_moment(i, j)));
      }
    return err;
  };
  rep.max_error = max_err_at(degree);
  rep.pass = rep.max_error <= 1e-12;
  for (int d = 0; d <= degree + 4; ++d) {
    if (max_err_at(d) <= 1e-12)
      rep.observed_sharpness = d;
    else
      break;
  }
  return rep;
}

CertifyReport certify(const FaceRule& rule, int degree) {
  CertifyReport rep;
  rep.degree = degree;
  auto max_err_at = [&](int d) {
    double err = 0.0;
    for (int a = 0; a <= d; ++a) {
      double s = 0.0;
      for (int k = 0; k < rule.size(); ++k) s += rule.weights[k] * std::pow(rule.param[k], a);
      err = std::max(err, std::abs(s - rule.length / (a + 1.0)));
    }
    return err;
  };
  rep.max_error = max_err_at(degree);
  rep.pass = rep.max_error <= 1e-12;
  for (int d = 0; d <= degree + 4; ++d) {
    if (max_err_at(d) <= 1e-12)
      rep.observed_sharpness = d;
    else
      break;
  }
  return rep;
}

CubatureRule tensor_reference_rule(int degree) {
  const int m = degree + 2;
  const std::vector<double> x = legendre_gauss_nodes(m);
  std::vector<double> t(m), w(m);
  for (int k = 0; k < m; ++k) {
    const double dp = polybasis::jacobi_derivative(m, 0, 0, x[k]);
    t[k] = 0.5 * (x[k] + 1.0);
    w[k] = 0.5 * (2.0 * m + 1.0) / ((1.0 - x[k] * x[k]) * dp * dp);
  }
  CubatureRule rule;
  rule.exactness_degree = degree;
  // Collapsed square: xi = u(1-v), eta = v, Jacobian (1-v).
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      rule.nodes.pts.push_back({t[a] * (1.0 - t[b]), t[b]});
      rule.weights.push_back(w[a] * w[b] * (1.0 - t[b]));
    }
  return rule;
}

// ---------------------------------------------------------------------------
// Symmetry-orbit construction.
// ---------------------------------------------------------------------------

namespace {

struct Orbit {
  enum Kind { centroid, s21, edge_pair, s111 } kind;
  bool fixed = false;  // parameters are structural (vertices, midedges)
  double a = 0.0, b = 0.0;
  double w = 0.0;

  int node_count() const {
    switch (kind) {
      case centroid: return 1;
      case s21: return 3;
      case edge_pair: return 6;
      case s111: return 6;
    }
    return 0;
  }
  int free_params() const {
    if (fixed) return 0;
    switch (kind) {
      case centroid: return 0;
      case s21: return 1;
      case edge_pair: return 1;
      case s111: return 2;
    }
    return 0;
  }
  // Barycentric triples expanded to (xi, eta) = (b1, b2).
  void nodes(std::vector<Point2>& out) const {
    auto push_perms = [&](double b0, double b1, double b2) {
      const double tri[3] = {b0, b1, b2};
      static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      std::vector<Point2> pts;
      for (auto& p : perms) {
        Point2 q{tri[p[1]], tri[p[2]]};
        bool dup = false;
        for (auto& r : pts)
          if (std::abs(r[0] - q[0]) < 1e-13 && std::abs(r[1] - q[1]) < 1e-13) dup = true;
        if (!dup) pts.push_back(q);
      }
      out.insert(out.end(), pts.begin(), pts.end());
    };
    switch (kind) {
      case centroid: push_perms(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0); break;
      case s21: push_perms(a, a, 1.0 - 2.0 * a); break;
      case edge_pair: push_perms(a, 1.0 - a, 0.0); break;
      case s111: push_perms(a, b, 1.0 - a - b); break;
    }
  }
};

struct OrbitSet {
  std::vector<Orbit> orbits;

  int unknown_count() const {
    int n = 0;
    for (const auto& o : orbits) n += o.free_params() + 1;
    return n;
  }
  void pack(DenseVector& x) const {
    x.clear();
    for (const auto& o : orbits) {
      if (!o.fixed) {
        if (o.kind == Orbit::s21 || o.kind == Orbit::edge_pair) x.push_back(o.a);
        if (o.kind == Orbit::s111) {
          x.push_back(o.a);
          x.push_back(o.b);
        }
      }
      x.push_back(o.w);
    }
  }
  void unpack(const DenseVector& x) {
    size_t k = 0;
    for (auto& o : orbits) {
      if (!o.fixed) {
        if (o.kind == Orbit::s21 || o.kind == Orbit::edge_pair) o.a = x[k++];
        if (o.kind == Orbit::s111) {
          o.a = x[k++];
          o.b = x[k++];
        }
      }
      o.w = x[k++];
    }
  }
  CubatureRule realize() const {
    CubatureRule rule;
    for (const auto& o : orbits) {
      std::vector<Point2> pts;
      o.nodes(pts);
      for (auto& p : pts) {
        rule.nodes.pts.push_back(p);
        rule.weights.push_back(o.w);
      }
    }
    return rule;
  }
};

DenseVector moment_residual(const OrbitSet& set, int degree) {
  const CubatureRule rule = set.realize();
  DenseVector r;
  for (int q = 0; q <= degree; ++q)
    for (int i = 0; i <= q; ++i) {
      const int j = q - i;
      double s = 0.0;
      for (size_t k = 0; k < rule.weights.size(); ++k)
        s += rule.weights[k] * std::pow(rule.nodes.pts[k][0], i) * std::pow(rule.nodes.pts[k][1], j);
      r.push_back(s - analytic_moment(i, j));
    }
  return r;
}

// Gauss-Newton on the full monomial moment system; the orbit symmetry makes
// the overdetermined system consistent at a solution.
bool gauss_newton(OrbitSet& set, int degree) {
  DenseVector x;
  set.pack(x);
  const int nuk = static_cast<int>(x.size());
  for (int it = 0; it < 200; ++it) {
    set.unpack(x);
    DenseVector r = moment_residual(set, degree);
    double rn = 0.0;
    for (double v : r) rn = std::max(rn, std::abs(v));
    if (rn < 1e-14) return true;
    const int ne = static_cast<int>(r.size());
    DenseMatrix jac(ne, nuk);
    const double h = 1e-7;
    for (int c = 0; c < nuk; ++c) {
      DenseVector xp = x;
      xp[c] += h;
      OrbitSet pset = set;
      pset.unpack(xp);
      DenseVector rp = moment_residual(pset, degree);
      for (int e = 0; e < ne; ++e) jac(e, c) = (rp[e] - r[e]) / h;
    }
    for (double& v : r) v = -v;
    DenseVector step;
    try {
      step = linalg::solve_minimum_norm(jac, r);
    } catch (const Error&) {
      return false;
    }
    double sn = 0.0;
    for (double v : step) sn = std::max(sn, std::abs(v));
    if (!std::isfinite(sn) || sn > 10.0) return false;
    for (int c = 0; c < nuk; ++c) x[c] += step[c];
  }
  set.unpack(x);
  DenseVector r = moment_residual(set, degree);
  double rn = 0.0;
  for (double v : r) rn = std::max(rn, std::abs(v));
  return rn < 1e-13;
}

bool feasible(const OrbitSet& set, Family family) {
  for (const auto& o : set.orbits) {
    if (!(o.w > 1e-8)) return false;
    std::vector<Point2> pts;
    o.nodes(pts);
    for (auto& p : pts) {
      const double b0 = 1.0 - p[0] - p[1];
      const double lo = (family == Family::omega) ? 1e-6 : -1e-13;
      if (p[0] < lo || p[1] < lo || b0 < lo) return false;
    }
  }
  return true;
}

double weight_ratio(const OrbitSet& set) {
  double wmin = 1e300, wmax = 0.0;
  for (const auto& o : set.orbits) {
    wmin = std::min(wmin, o.w);
    wmax = std::max(wmax, o.w);
  }
  return wmax / wmin;
}

struct Candidate {
  OrbitSet set;
  double ratio;
};

void try_candidate(OrbitSet set, int degree, Family family, std::vector<Candidate>& out) {
  if (!gauss_newton(set, degree)) return;
  // Canonicalize edge parameters to the lower half.
  for (auto& o : set.orbits)
    if (o.kind == Orbit::edge_pair && o.a > 0.5) o.a = 1.0 - o.a;
  if (!feasible(set, family)) return;
  const CubatureRule rule = set.realize();
  // Reject duplicate nodes across orbits.
  for (size_t i = 0; i < rule.nodes.pts.size(); ++i)
    for (size_t j = i + 1; j < rule.nodes.pts.size(); ++j)
      if (std::hypot(rule.nodes.pts[i][0] - rule.nodes.pts[j][0],
                     rule.nodes.pts[i][1] - rule.nodes.pts[j][1]) < 1e-8)
        return;
  out.push_back({set, weight_ratio(set)});
}

OrbitSet pick_best(std::vector<Candidate>& cands, const char* what) {
  if (cands.empty()) throw ConstructionFailed(std::string("no positive symmetric rule found for ") + what);
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (std::abs(a.ratio - b.ratio) > 1e-9) return a.ratio < b.ratio;
    return a.set.orbits.front().w < b.set.orbits.front().w;
  });
  return cands.front().set;
}

OrbitSet solve_gamma(int p) {
  std::vector<Candidate> cands;
  if (p == 1) {
    OrbitSet s{{{Orbit::s21, true, 0.0, 0.0, 1.0 / 6.0}}};
    try_candidate(s, 1, Family::gamma, cands);
  } else if (p == 2) {
    OrbitSet s{{{Orbit::s21, true, 0.0, 0.0, 0.03},
                {Orbit::s21, true, 0.5, 0.0, 0.06},
                {Orbit::centroid, true, 0.0, 0.0, 0.2}}};
    try_candidate(s, 3, Family::gamma, cands);
  } else if (p == 3) {
    for (double t0 : {0.2, 0.2763932, 0.35})
      for (double a0 : {0.15, 0.22, 0.3, 0.4}) {
        OrbitSet s{{{Orbit::s21, true, 0.0, 0.0, 0.01},
                    {Orbit::edge_pair, false, t0, 0.0, 0.03},
                    {Orbit::s21, false, a0, 0.0, 0.09}}};
        try_candidate(s, 5, Family::gamma, cands);
      }
  } else if (p == 4) {
    for (double t0 : {0.1726732, 0.25, 0.31})
      for (double a0 : {0.12, 0.2, 0.28})
        for (double a1 : {0.38, 0.44, 0.46}) {
          OrbitSet s{{{Orbit::s21, true, 0.0, 0.0, 0.003},
                      {Orbit::s21, true, 0.5, 0.0, 0.02},
                      {Orbit::edge_pair, false, t0, 0.0, 0.01},
                      {Orbit::s21, false, a0, 0.0, 0.05},
                      {Orbit::s21, false, a1, 0.0, 0.05}}};
          try_candidate(s, 7, Family::gamma, cands);
        }
  } else {
    throw InvalidArgument("volume_cubature: p must be in 1..4");
  }
  return pick_best(cands, "SBP-Gamma");
}

OrbitSet solve_omega(int p) {
  std::vector<Candidate> cands;
  if (p == 1) {
    OrbitSet s{{{Orbit::s21, false, 1.0 / 6.0, 0.0, 1.0 / 6.0}}};
    try_candidate(s, 2, Family::omega, cands);
  } else if (p == 2) {
    OrbitSet s{{{Orbit::s21, false, 0.445, 0.0, 0.111},
                {Orbit::s21, false, 0.091, 0.0, 0.055}}};
    try_candidate(s, 4, Family::omega, cands);
  } else if (p == 3) {
    // Structure centroid + S21 + S111 leaves one degree of freedom; scan the
    // S21 parameter and keep the best-conditioned positive rule.
    for (double alpha = 0.04; alpha < 0.49; alpha += 0.005) {
      for (auto bc : {std::array<double, 2>{0.15, 0.65}, {0.05, 0.6}, {0.2, 0.7}}) {
        OrbitSet s{{{Orbit::centroid, true, 0.0, 0.0, 0.05},
                    {Orbit::s21, true, alpha, 0.0, 0.04},
                    {Orbit::s111, false, bc[0], bc[1], 0.04}}};
        try_candidate(s, 5, Family::omega, cands);
      }
    }
  } else if (p == 4) {
    for (double a0 : {0.06, 0.1, 0.25, 0.42, 0.47})
      for (auto bc1 : {std::array<double, 2>{0.05, 0.25}, {0.1, 0.5}, {0.03, 0.65}})
        for (auto bc2 : {std::array<double, 2>{0.15, 0.35}, {0.2, 0.6}, {0.3, 0.65}}) {
          OrbitSet s{{{Orbit::s21, false, a0, 0.0, 0.02},
                      {Orbit::s111, false, bc1[0], bc1[1], 0.03},
                      {Orbit::s111, false, bc2[0], bc2[1], 0.03}}};
          try_candidate(s, 7, Family::omega, cands);
        }
  } else {
    throw InvalidArgument("volume_cubature: p must be in 1..4");
  }
  return pick_best(cands, "SBP-Omega");
}

}  // namespace

CubatureRule solve_symmetric_rule(Family family, int p) {
  if (p < 1 || p > 4) throw InvalidArgument("solve_symmetric_rule: p must be in 1..4");
  static const int gamma_degree[5] = {0, 1, 3, 5, 7};
  static const int omega_degree[5] = {0, 2, 4, 5, 7};
  OrbitSet set = (family == Family::gamma) ? solve_gamma(p) : solve_omega(p);
  CubatureRule rule = set.realize();
  rule.exactness_degree = (family == Family::gamma) ? gamma_degree[p] : omega_degree[p];
  CertifyReport rep = certify(rule, rule.exactness_degree);
  if (!rep.pass) throw ConstructionFailed("solve_symmetric_rule: produced rule failed certification");
  return rule;
}

void export_csv(const CubatureRule& rule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << "xi,eta,w\n";
  out.precision(17);
  for (size_t k = 0; k < rule.weights.size(); ++k)
    out << rule.nodes.pts[k][0] << "," << rule.nodes.pts[k][1] << "," << rule.weights[k] << "\n";
}

}  // namespace cubature
}  // namespace sbpsat
