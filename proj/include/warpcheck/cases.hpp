#ifndef WARPCHECK_CASES_HPP
#define WARPCHECK_CASES_HPP

#include <string>
#include <vector>

#include "warpcheck/geometry.hpp"

namespace warpcheck {

enum class CaseTag { c1a, c1b, c2b };

std::string to_string(CaseTag t);
CaseTag case_tag_from_string(const std::string& s);

// Scalar constants of the case systems. h = c/2, A = h^2 mu and A = -a^3
// hold exactly; the per-case constraints are enforced by make():
//   1a: lambda = 0, mu = 0     1b: lambda = 0, mu != 0
//   2b: mu = 0, lambda != 0, h != 0
struct CaseParams {
  CaseTag tag = CaseTag::c1a;
  double lambda = 0.0;
  double mu = 0.0;
  double c = 0.0;
  double h = 0.0;
  double A = 0.0;
  double a = 0.0;

  static CaseParams make(CaseTag tag, double c, double lambda, double mu);
};

// u = -h * f. Inverse f = -u/h. h = 0 has no substitution; that branch is
// the flat/affine analysis.
Expression substitute_u(const Expression& f, double h);

struct ResidualTriple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double max_abs() const;
};

// Case residual systems in the substituted variable u:
//   1a: (Lap u + u^2,            u Lap u + |grad u|^2,             |grad u|^2 - u^3)
//   1b: (Lap u + u^2,            |grad u|^2 - u^3 - A,             0)
//   2b: (Lap u + u^2 + lambda u, u Lap u + |grad u|^2 + lambda u^2, |grad u|^2 - u^3)
ResidualTriple case_residuals(const Metric2D& g, const Expression& u, const CaseParams& params,
                              Point2 p);

// K + u at p. The curvature-multiple hypothesis R_B = c f reduces to K = -u,
// so a zero gap marks a compatible point.
double f_curvature_gap(const Metric2D& g, const Expression& u, Point2 p);

struct WitnessReport {
  double min_gap = 0.0;         // min |K + u| over the grid
  double frac_exceeding = 0.0;  // fraction of points with |K + u| > tol
  int n_points = 0;
  int n_below = 0;
  double tol = 0.0;
  bool pass = false;  // >= 99% of points exceed tol
};

WitnessReport incompatibility_witness(const Metric2D& g, const Expression& u,
                                      const std::vector<Point2>& grid, double tol);

// Grid sweep of case_residuals; flags points where u < 0 (equation systems
// with |grad u|^2 = u^3 force u >= 0 on a Riemannian base).
struct CaseSweep {
  double max_res_a = 0.0;
  double max_res_b = 0.0;
  double max_res_c = 0.0;
  int n_negative_u = 0;
};

CaseSweep sweep_case_residuals(const Metric2D& g, const Expression& u, const CaseParams& params,
                               const std::vector<Point2>& grid);

}  // namespace warpcheck

#endif  // WARPCHECK_CASES_HPP
