#ifndef WARPCHECK_GEOMETRY_HPP
#define WARPCHECK_GEOMETRY_HPP

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "warpcheck/expr.hpp"

namespace warpcheck {

using Point2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// Rectangular chart domain. The second coordinate may be periodic (angular
// charts); a periodic coordinate is never range-checked.
struct Box {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  bool periodic_second = false;

  bool contains(Point2 p) const;
};

// Diagonal 2D metric signs.0*E dx^2 + signs.1*G dy^2 on a box domain.
// E and G are positive expressions; semi-Riemannian signatures are expressed
// through the sign flags.
struct Metric2D {
  std::array<std::string, 2> vars;
  Expression E, G;
  std::array<int, 2> signs{+1, +1};
  Box domain;

  const Expression& component(int k) const { return k == 0 ? E : G; }
};

Metric2D make_metric2d(std::array<std::string, 2> vars, std::string_view E_text,
                       std::string_view G_text, std::array<int, 2> signs, Box domain,
                       const std::map<std::string, double>& consts = {});

// Block-diagonal metric in up to 4 coordinates; every diagonal component is
// an expression over the full coordinate list.
struct BlockMetricND {
  std::vector<std::string> coords;
  std::vector<Expression> comps;
  std::vector<int> signs;

  int dim() const { return static_cast<int>(coords.size()); }
};

BlockMetricND as_block(const Metric2D& g);

struct Christoffel {
  int dim = 0;
  double g[4][4][4] = {};  // g[k][i][j] = Gamma^k_ij, symmetric in (i,j)

  double operator()(int k, int i, int j) const { return g[k][i][j]; }
};

struct MatN {
  int dim = 0;
  double m[4][4] = {};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
  double max_abs() const;
};

// Step control for the finite-difference derivative of the Christoffel
// symbols (the one numerical differentiation layer; everything else is AD).
struct CurvatureOptions {
  double fd_scale = 1e-4;
};

Christoffel christoffel(const BlockMetricND& g, std::span<const double> p);
Christoffel christoffel(const Metric2D& g, Point2 p);

// Full Ricci tensor; Christoffel symbols are AD-exact and their first
// derivatives come from Richardson-extrapolated central differences.
MatN ricci(const BlockMetricND& g, std::span<const double> p, CurvatureOptions opt = {});

double gauss_curvature(const Metric2D& g, Point2 p, CurvatureOptions opt = {});

// Covariant Hessian (D^2 f)_ij = d_i d_j f - Gamma^k_ij d_k f.
Mat2 hessian(const Metric2D& g, const Expression& f, Point2 p);

// Laplace-Beltrami Delta f = g^ij (D^2 f)_ij, computed as the g-trace of
// hessian() so the two stay consistent by construction.
double laplacian(const Metric2D& g, const Expression& f, Point2 p);

// g^ij d_i f d_j f; may be negative for semi-Riemannian signs.
double grad_norm_sq(const Metric2D& g, const Expression& f, Point2 p);

// Signed component values (g_11, g_22) at p, degeneracy-checked.
std::array<double, 2> metric_values(const Metric2D& g, Point2 p);

}  // namespace warpcheck

#endif  // WARPCHECK_GEOMETRY_HPP
