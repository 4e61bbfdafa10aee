// Frozen symmetric cubature rules for the two triangle operator families.
// Produced by tools/cubature_gen (Newton iteration on symmetry-orbit
// parameters against the analytic moments); regenerated and cross-checked by
// the test suite.  p=1,2 entries are exact rationals.

#include "sbpsat/cubature.hpp"

namespace sbpsat {
namespace cubature {

namespace {

struct TableEntry {
  Family family;
  int p;
  int degree;
  std::vector<std::array<double, 3>> rows;  // xi, eta, w
};

const std::vector<TableEntry>& tables() {
  static const std::vector<TableEntry> t = {
      // gamma p=1: vertices
      {Family::gamma, 1, 1, {
        {0.0, 1.0, 1.0 / 6.0},
        {1.0, 0.0, 1.0 / 6.0},
        {0.0, 0.0, 1.0 / 6.0},
      }},
      // gamma p=2: vertices + edge midpoints + centroid
      {Family::gamma, 2, 3, {
        {0.0, 1.0, 1.0 / 40.0},
        {1.0, 0.0, 1.0 / 40.0},
        {0.0, 0.0, 1.0 / 40.0},
        {0.5, 0.0, 1.0 / 15.0},
        {0.0, 0.5, 1.0 / 15.0},
        {0.5, 0.5, 1.0 / 15.0},
        {1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
      }},
      // gamma p=3: vertices + one edge pair + one interior orbit
      {Family::gamma, 3, 5, {
        {0.0, 1.0, 0.0074364565124096912},
        {1.0, 0.0, 0.0074364565124096912},
        {0.0, 0.0, 0.0074364565124096912},
        {0.70653044409095456, 0.0, 0.024420840617025652},
        {0.0, 0.70653044409095456, 0.024420840617025652},
        {0.29346955590904544, 0.0, 0.024420840617025652},
        {0.0, 0.29346955590904544, 0.024420840617025652},
        {0.29346955590904544, 0.70653044409095456, 0.024420840617025652},
        {0.70653044409095456, 0.29346955590904544, 0.024420840617025652},
        {0.20734517566359117, 0.58530964867281765, 0.11038852892020568},
        {0.58530964867281765, 0.20734517566359117, 0.11038852892020568},
        {0.20734517566359117, 0.20734517566359117, 0.11038852892020568},
      }},
      // gamma p=4: vertices + midedges + one edge pair + two interior orbits
      {Family::gamma, 4, 7, {
        {0.0, 1.0, 0.0031746031746017365},
        {1.0, 0.0, 0.0031746031746017365},
        {0.0, 0.0, 0.0031746031746017365},
        {0.5, 0.0, 0.012698412698420918},
        {0.0, 0.5, 0.012698412698420918},
        {0.5, 0.5, 0.012698412698420918},
        {0.78867513459491101, 0.0, 0.010714285714286164},
        {0.0, 0.78867513459491101, 0.010714285714286164},
        {0.21132486540508894, 0.0, 0.010714285714286164},
        {0.0, 0.21132486540508894, 0.010714285714286164},
        {0.21132486540508894, 0.78867513459491101, 0.010714285714286164},
        {0.78867513459491101, 0.21132486540508894, 0.010714285714286164},
        {0.13079159382977115, 0.73841681234045775, 0.050583864895689182},
        {0.73841681234045775, 0.13079159382977115, 0.050583864895689182},
        {0.13079159382977115, 0.13079159382977115, 0.050583864895689182},
        {0.42476396172580932, 0.15047207654838135, 0.078781214469382507},
        {0.15047207654838135, 0.42476396172580932, 0.078781214469382507},
        {0.42476396172580932, 0.42476396172580932, 0.078781214469382507},
      }},
      // omega p=1: interior orbit, equal weights
      {Family::omega, 1, 2, {
        {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
        {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
        {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0},
      }},
      // omega p=2: two interior orbits (classical degree-4 rule)
      {Family::omega, 2, 4, {
        {0.44594849091596594, 0.10810301816806811, 0.11169079483900599},
        {0.10810301816806811, 0.44594849091596594, 0.11169079483900599},
        {0.44594849091596594, 0.44594849091596594, 0.11169079483900599},
        {0.091576213509770854, 0.81684757298045829, 0.054975871827660665},
        {0.81684757298045829, 0.091576213509770854, 0.054975871827660665},
        {0.091576213509770854, 0.091576213509770854, 0.054975871827660665},
      }},
      // omega p=3: centroid + interior orbit + six-fold orbit
      {Family::omega, 3, 5, {
        {0.33333333333333331, 0.33333333333333331, 0.10129267200176031},
        {0.085000000000000006, 0.82999999999999996, 0.042175830624775743},
        {0.82999999999999996, 0.085000000000000006, 0.042175830624775743},
        {0.085000000000000006, 0.085000000000000006, 0.042175830624775743},
        {0.58749538368423915, 0.34275133549024706, 0.04536330602065209},
        {0.34275133549024706, 0.58749538368423915, 0.04536330602065209},
        {0.069753280825513797, 0.34275133549024706, 0.04536330602065209},
        {0.34275133549024706, 0.069753280825513797, 0.04536330602065209},
        {0.069753280825513797, 0.58749538368423915, 0.04536330602065209},
        {0.58749538368423915, 0.069753280825513797, 0.04536330602065209},
      }},
      // omega p=4: interior orbit + two six-fold orbits
      {Family::omega, 4, 7, {
        {0.064930513159165995, 0.87013897368166804, 0.026538900895117217},
        {0.87013897368166804, 0.064930513159165995, 0.026538900895117217},
        {0.064930513159165995, 0.064930513159165995, 0.026538900895117217},
        {0.6425773438226875, 0.31355918438494146, 0.034637341039708933},
        {0.31355918438494146, 0.6425773438226875, 0.034637341039708933},
        {0.043863471792371059, 0.31355918438494146, 0.034637341039708933},
        {0.31355918438494146, 0.043863471792371059, 0.034637341039708933},
        {0.043863471792371059, 0.6425773438226875, 0.034637341039708933},
        {0.6425773438226875, 0.043863471792371059, 0.034637341039708933},
        {0.51703993906932899, 0.19838447668152537, 0.035426541846065779},
        {0.19838447668152537, 0.51703993906932899, 0.035426541846065779},
        {0.28457558424914564, 0.19838447668152537, 0.035426541846065779},
        {0.19838447668152537, 0.28457558424914564, 0.035426541846065779},
        {0.28457558424914564, 0.51703993906932899, 0.035426541846065779},
        {0.51703993906932899, 0.28457558424914564, 0.035426541846065779},
      }},
  };
  return t;
}

}  // namespace

CubatureRule volume_cubature(Family family, int p) {
  if (p < 1 || p > 4) throw InvalidArgument("volume_cubature: p must be in 1..4");
  for (const auto& e : tables()) {
    if (e.family != family || e.p != p) continue;
    CubatureRule rule;
    rule.exactness_degree = e.degree;
    for (const auto& r : e.rows) {
      rule.nodes.pts.push_back({r[0], r[1]});
      rule.weights.push_back(r[2]);
    }
    return rule;
  }
  throw InvalidArgument("volume_cubature: no table entry");
}

}  // namespace cubature
}  // namespace sbpsat
