// Regenerates the frozen volume cubature tables from the orbit solver and
// prints them as C++ source.  Development aid; the shipped tables in
// src/cubature_tables.cpp are this program's output.

#include <cmath>
#include <cstdio>

#include "sbpsat/cubature.hpp"

using namespace sbpsat;

static void emit(Family f, int p) {
  const CubatureRule rule = cubature::solve_symmetric_rule(f, p);
  const CertifyReport rep = cubature::certify(rule, rule.exactness_degree);
  double dr = 1e300;
  for (size_t i = 0; i < rule.nodes.pts.size(); ++i)
    for (size_t j = i + 1; j < rule.nodes.pts.size(); ++j)
      dr = std::min(dr, std::hypot(rule.nodes.pts[i][0] - rule.nodes.pts[j][0],
                                   rule.nodes.pts[i][1] - rule.nodes.pts[j][1]));
  std::printf("// %s p=%d: n=%zu degree=%d certify_err=%.3e sharpness=%d min_dist=%.4f\n",
              family_name(f).c_str(), p, rule.weights.size(), rule.exactness_degree,
              rep.max_error, rep.observed_sharpness, dr);
  std::printf("{Family::%s, %d, %d, {\n", family_name(f).c_str(), p, rule.exactness_degree);
  for (size_t k = 0; k < rule.weights.size(); ++k)
    std::printf("  {%.17g, %.17g, %.17g},\n", rule.nodes.pts[k][0], rule.nodes.pts[k][1],
                rule.weights[k]);
  std::printf("}},\n");
}

int main() {
  for (int p = 1; p <= 4; ++p) emit(Family::gamma, p);
  for (int p = 1; p <= 4; ++p) emit(Family::omega, p);
  return 0;
}
