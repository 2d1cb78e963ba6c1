#ifndef WARPCHECK_WARPED_HPP
#define WARPCHECK_WARPED_HPP

#include <array>
#include <vector>

#include "warpcheck/geometry.hpp"

namespace warpcheck {

using Point4 = std::array<double, 4>;

// Warped product of a 2D base and a 2D fiber with warping function f on the
// base chart; the assembled metric is g + f^2 gf. The integers m (fiber
// dimension) and n (base dimension) stay adjustable so the trace identities
// can be exercised at general m > 1.
struct WarpedProduct {
  Metric2D base;
  Metric2D fiber;
  Expression f;
  int m = 2;
  int n = 2;
};

// 4-coordinate block metric (base coords then fiber coords); the fiber
// components are multiplied by f^2. Throws NameClash on shared coordinate
// names and NonPositiveWarp if f <= 0 anywhere on a base-domain sample grid.
BlockMetricND assemble(const WarpedProduct& w);

struct EinsteinResiduals {
  Mat2 r_base{};    // Ric - (m/f) Hess f - lambda g at the base point
  Mat2 r_fiber{};   // fiber Ric - mu * fiber g at the fiber point
  double r_scalar = 0.0;  // f Lap f + (m-1) |grad f|^2 + lambda f^2 - mu
  double lambda = 0.0;
  double mu = 0.0;

  double max_abs() const;
};

EinsteinResiduals einstein_residuals(const WarpedProduct& w, double lambda, double mu,
                                     Point2 p_base, Point2 p_fiber);

// Gap between the numerical 4D Ricci of the assembled metric and the 2D block
// expressions; an identity for every warped product, Einstein or not.
struct BlockGaps {
  double base = 0.0;
  double mixed = 0.0;
  double fiber = 0.0;

  double max_abs() const;
};

BlockGaps block_identity_check(const WarpedProduct& w, Point4 p, CurvatureOptions opt = {});

struct TraceResiduals {
  double res2 = 0.0;  // R_B f^2 - m f Lap f - n lambda f^2
  double res3 = 0.0;  // m f Lap f + m(m-1) |grad f|^2 + m lambda f^2 - m mu
  double res4 = 0.0;  // |grad f|^2 + [(lambda(m-n) + R_B)/(m(m-1))] f^2 - mu/(m-1)
};

TraceResiduals trace_residuals(const WarpedProduct& w, double lambda, double mu, Point2 p_base);

// Least-squares fit of Ric ~ mu g over a fiber grid, with a non-proportionality
// diagnostic (max residual of the fit relative to the metric scale). The tool
// verifies the Einstein-fiber assumption instead of trusting it.
double estimate_mu(const Metric2D& fiber, const std::vector<Point2>& grid,
                   double* nonproportionality = nullptr);

}  // namespace warpcheck

#endif  // WARPCHECK_WARPED_HPP
