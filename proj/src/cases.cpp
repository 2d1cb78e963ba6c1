#include "warpcheck/cases.hpp"

#include <algorithm>
#include <cmath>

namespace warpcheck {

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::c1a: return "1a";
    case CaseTag::c1b: return "1b";
    case CaseTag::c2b: return "2b";
  }
  return "?";
}

CaseTag case_tag_from_string(const std::string& s) {
  if (s == "1a") return CaseTag::c1a;
  if (s == "1b") return CaseTag::c1b;
  if (s == "2b") return CaseTag::c2b;
  throw BadParams("unknown case tag '" + s + "' (expected 1a, 1b or 2b)");
}

CaseParams CaseParams::make(CaseTag tag, double c, double lambda, double mu) {
  CaseParams p;
  p.tag = tag;
  p.c = c;
  p.lambda = lambda;
  p.mu = mu;
  p.h = c / 2.0;
  p.A = p.h * p.h * mu;
  p.a = -std::cbrt(p.A);
  switch (tag) {
    case CaseTag::c1a:
      if (lambda != 0.0) throw BadParams("case 1a requires lambda = 0");
      if (mu != 0.0) throw BadParams("case 1a requires mu = 0");
      break;
    case CaseTag::c1b:
      if (lambda != 0.0) throw BadParams("case 1b requires lambda = 0");
      if (mu == 0.0) throw BadParams("case 1b requires mu != 0");
      break;
    case CaseTag::c2b:
      if (mu != 0.0) throw BadParams("case 2b requires mu = 0");
      if (lambda == 0.0) throw BadParams("case 2b requires lambda != 0");
      if (p.h == 0.0) throw BadParams("case 2b requires h != 0 (h = 0 forces lambda = 0)");
      break;
  }
  return p;
}

Expression substitute_u(const Expression& f, double h) {
  if (h == 0.0)
    throw ZeroH("h = 0 admits no substitution u = -h f; use the flat/affine branch");
  return Expression::constant(-h, f.vars()) * f;
}

double ResidualTriple::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

ResidualTriple case_residuals(const Metric2D& g, const Expression& u, const CaseParams& params,
                              Point2 p) {
  double uv = u.eval(p);
  double lap = laplacian(g, u, p);
  double gn = grad_norm_sq(g, u, p);
  ResidualTriple r;
  switch (params.tag) {
    case CaseTag::c1a:
      r.a = lap + uv * uv;
      r.b = uv * lap + gn;
      r.c = gn - uv * uv * uv;
      break;
    case CaseTag::c1b:
      r.a = lap + uv * uv;
      r.b = gn - uv * uv * uv - params.A;
      r.c = 0.0;
      break;
    case CaseTag::c2b:
      r.a = lap + uv * uv + params.lambda * uv;
      r.b = uv * lap + gn + params.lambda * uv * uv;
      r.c = gn - uv * uv * uv;
      break;
  }
  return r;
}

double f_curvature_gap(const Metric2D& g, const Expression& u, Point2 p) {
  return gauss_curvature(g, p) + u.eval(p);
}

WitnessReport incompatibility_witness(const Metric2D& g, const Expression& u,
                                      const std::vector<Point2>& grid, double tol) {
  if (grid.empty()) throw EmptyGrid("incompatibility witness needs a grid");
  if (grid.size() < 100)
    throw BadParams("incompatibility witness needs at least 100 grid points");
  WitnessReport rep;
  rep.tol = tol;
  rep.n_points = static_cast<int>(grid.size());
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : grid) {
    double gap = std::abs(f_curvature_gap(g, u, p));
    rep.min_gap = std::min(rep.min_gap, gap);
    if (gap <= tol) ++rep.n_below;
  }
  rep.frac_exceeding = 1.0 - static_cast<double>(rep.n_below) / rep.n_points;
  rep.pass = rep.frac_exceeding >= 0.99;
  return rep;
}

CaseSweep sweep_case_residuals(const Metric2D& g, const Expression& u, const CaseParams& params,
                               const std::vector<Point2>& grid) {
  if (grid.empty()) throw EmptyGrid("residual sweep needs a grid");
  CaseSweep s;
  for (const auto& p : grid) {
    ResidualTriple r = case_residuals(g, u, params, p);
    s.max_res_a = std::max(s.max_res_a, std::abs(r.a));
    s.max_res_b = std::max(s.max_res_b, std::abs(r.b));
    s.max_res_c = std::max(s.max_res_c, std::abs(r.c));
    if (u.eval(p) < 0.0) ++s.n_negative_u;
  }
  return s;
}

}  // namespace warpcheck
