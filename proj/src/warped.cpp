#include "warpcheck/warped.hpp"

#include <algorithm>
#include <cmath>

namespace warpcheck {

namespace {

// f is required to be strictly positive on the base domain; sampled on a
// 17x17 grid including the borders.
void check_warp_positive(const Metric2D& base, const Expression& f) {
  const int n = 17;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Point2 p{base.domain.lo[0] + (base.domain.hi[0] - base.domain.lo[0]) * i / (n - 1.0),
               base.domain.lo[1] + (base.domain.hi[1] - base.domain.lo[1]) * j / (n - 1.0)};
      if (f.eval(p) <= 0.0)
        throw NonPositiveWarp("warping function is not positive at " +
                              base.vars[0] + "=" + std::to_string(p[0]) + ", " +
                              base.vars[1] + "=" + std::to_string(p[1]));
    }
}

double max_abs2(const Mat2& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (double v : row) r = std::max(r, std::abs(v));
  return r;
}

struct BaseData {
  double f = 0.0;
  double lap = 0.0;
  double gn = 0.0;   // |grad f|^2
  double rb = 0.0;   // scalar curvature of the base
};

BaseData base_data(const WarpedProduct& w, Point2 p) {
  BaseData d;
  d.f = w.f.eval(p);
  if (d.f <= 0.0) throw NonPositiveWarp("warping function not positive at the base point");
  d.lap = laplacian(w.base, w.f, p);
  d.gn = grad_norm_sq(w.base, w.f, p);
  d.rb = 2.0 * gauss_curvature(w.base, p);
  return d;
}

}  // namespace

double EinsteinResiduals::max_abs() const {
  return std::max({max_abs2(r_base), max_abs2(r_fiber), std::abs(r_scalar)});
}

double BlockGaps::max_abs() const { return std::max({base, mixed, fiber}); }

BlockMetricND assemble(const WarpedProduct& w) {
  for (const auto& bn : w.base.vars)
    for (const auto& fn : w.fiber.vars)
      if (bn == fn) throw NameClash("base and fiber share coordinate name '" + bn + "'");
  check_warp_positive(w.base, w.f);

  std::vector<std::string> chart{w.base.vars[0], w.base.vars[1], w.fiber.vars[0],
                                 w.fiber.vars[1]};
  Expression f4 = w.f.remapped(chart);
  Expression fsq = f4 * f4;
  BlockMetricND out;
  out.coords = chart;
  out.comps = {w.base.E.remapped(chart), w.base.G.remapped(chart),
               fsq * w.fiber.E.remapped(chart), fsq * w.fiber.G.remapped(chart)};
  out.signs = {w.base.signs[0], w.base.signs[1], w.fiber.signs[0], w.fiber.signs[1]};
  return out;
}

EinsteinResiduals einstein_residuals(const WarpedProduct& w, double lambda, double mu,
                                     Point2 p_base, Point2 p_fiber) {
  EinsteinResiduals out;
  out.lambda = lambda;
  out.mu = mu;

  BaseData d = base_data(w, p_base);
  MatN ric_b = ricci(as_block(w.base), p_base);
  Mat2 hf = hessian(w.base, w.f, p_base);
  auto gb = metric_values(w.base, p_base);
  double gmat[2][2] = {{gb[0], 0.0}, {0.0, gb[1]}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.r_base[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ric_b(i, j) - (w.m / d.f) * hf[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
          lambda * gmat[i][j];

  MatN ric_f = ricci(as_block(w.fiber), p_fiber);
  auto gf = metric_values(w.fiber, p_fiber);
  double fmat[2][2] = {{gf[0], 0.0}, {0.0, gf[1]}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.r_fiber[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ric_f(i, j) - mu * fmat[i][j];

  out.r_scalar = d.f * d.lap + (w.m - 1) * d.gn + lambda * d.f * d.f - mu;
  return out;
}

BlockGaps block_identity_check(const WarpedProduct& w, Point4 p, CurvatureOptions opt) {
  BlockMetricND bar = assemble(w);
  MatN ric4 = ricci(bar, p, opt);

  Point2 pb{p[0], p[1]};
  Point2 pf{p[2], p[3]};

  BaseData d = base_data(w, pb);
  MatN ric_b = ricci(as_block(w.base), pb, opt);
  Mat2 hf = hessian(w.base, w.f, pb);
  MatN ric_f = ricci(as_block(w.fiber), pf, opt);
  auto gf = metric_values(w.fiber, pf);
  double fmat[2][2] = {{gf[0], 0.0}, {0.0, gf[1]}};
  double s = d.f * d.lap + (w.m - 1) * d.gn;

  BlockGaps gaps;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double expect = ric_b(i, j) -
                      (w.m / d.f) * hf[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      gaps.base = std::max(gaps.base, std::abs(ric4(i, j) - expect));
      double expect_f = ric_f(i, j) - s * fmat[i][j];
      gaps.fiber = std::max(gaps.fiber, std::abs(ric4(2 + i, 2 + j) - expect_f));
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j) gaps.mixed = std::max(gaps.mixed, std::abs(ric4(i, j)));
  return gaps;
}

TraceResiduals trace_residuals(const WarpedProduct& w, double lambda, double mu, Point2 p_base) {
  if (w.m <= 1) throw BadParams("trace identities need fiber dimension m > 1");
  BaseData d = base_data(w, p_base);
  const double m = w.m, n = w.n, f = d.f;
  TraceResiduals r;
  r.res2 = d.rb * f * f - m * f * d.lap - n * lambda * f * f;
  r.res3 = m * f * d.lap + m * (m - 1.0) * d.gn + m * lambda * f * f - m * mu;
  r.res4 = d.gn + ((lambda * (m - n) + d.rb) / (m * (m - 1.0))) * f * f - mu / (m - 1.0);
  return r;
}

double estimate_mu(const Metric2D& fiber, const std::vector<Point2>& grid,
                   double* nonproportionality) {
  if (grid.empty()) throw EmptyGrid("mu estimation needs a nonempty fiber grid");
  double num = 0.0, den = 0.0, scale = 0.0;
  std::vector<std::array<double, 4>> rows;  // ric11, ric22, g11, g22
  rows.reserve(grid.size());
  for (const auto& p : grid) {
    MatN ric = ricci(as_block(fiber), p);
    auto gv = metric_values(fiber, p);
    rows.push_back({ric(0, 0), ric(1, 1), gv[0], gv[1]});
    num += ric(0, 0) * gv[0] + ric(1, 1) * gv[1];
    den += gv[0] * gv[0] + gv[1] * gv[1];
    scale = std::max({scale, std::abs(gv[0]), std::abs(gv[1])});
  }
  double mu = num / den;
  if (nonproportionality) {
    double worst = 0.0;
    for (const auto& r : rows)
      worst = std::max({worst, std::abs(r[0] - mu * r[2]), std::abs(r[1] - mu * r[3])});
    *nonproportionality = worst / std::max(1.0, std::abs(mu) * scale);
  }
  return mu;
}

}  // namespace warpcheck
