#include "warpcheck/geometry.hpp"

#include <cmath>

namespace warpcheck {

namespace {

constexpr double kDegenerate = 1e-14;

double norm2(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += x * x;
  return std::sqrt(s);
}

void check_domain(const Metric2D& g, Point2 p) {
  if (!g.domain.contains(p))
    throw DomainError("point outside declared metric domain",
                      g.vars[0] + "=" + std::to_string(p[0]) + ", " + g.vars[1] + "=" +
                          std::to_string(p[1]));
}

struct ComponentJets {
  int dim = 0;
  std::array<Jet, 4> jets{Jet(0), Jet(0), Jet(0), Jet(0)};
  std::array<double, 4> val{};   // signed g_kk
  std::array<double, 4> sign{};  // component sign flag as double
};

ComponentJets component_jets(const BlockMetricND& g, std::span<const double> p) {
  ComponentJets out;
  out.dim = g.dim();
  for (std::size_t k = 0; k < static_cast<std::size_t>(g.dim()); ++k) {
    Jet j = g.comps[k].eval_jet(p);
    out.jets[k] = j;
    out.sign[k] = static_cast<double>(g.signs[k]);
    out.val[k] = out.sign[k] * j.value();
    if (std::abs(out.val[k]) < kDegenerate)
      throw DegenerateMetric("metric component g_" + std::to_string(k) +
                             std::to_string(k) + " below 1e-14");
  }
  return out;
}

Christoffel christoffel_from_jets(const ComponentJets& c) {
  Christoffel out;
  out.dim = c.dim;
  // dg[k][m] = d_m g_kk (signed)
  double dg[4][4];
  for (int k = 0; k < c.dim; ++k)
    for (int m = 0; m < c.dim; ++m)
      dg[k][m] = c.sign[static_cast<std::size_t>(k)] *
                 c.jets[static_cast<std::size_t>(k)].grad(m);
  for (int k = 0; k < c.dim; ++k) {
    double inv = 1.0 / c.val[static_cast<std::size_t>(k)];
    for (int i = 0; i < c.dim; ++i)
      for (int j = i; j < c.dim; ++j) {
        double t = 0.0;
        if (j == k) t += dg[k][i];
        if (i == k) t += dg[k][j];
        if (i == j) t -= dg[i][k];
        double v = 0.5 * inv * t;
        out.g[k][i][j] = v;
        out.g[k][j][i] = v;
      }
  }
  return out;
}

}  // namespace

bool Box::contains(Point2 p) const {
  auto inside = [](double x, double a, double b) {
    double eps = 1e-9 * (1.0 + std::abs(b - a));
    return x >= a - eps && x <= b + eps;
  };
  if (!inside(p[0], lo[0], hi[0])) return false;
  if (!periodic_second && !inside(p[1], lo[1], hi[1])) return false;
  return true;
}

Metric2D make_metric2d(std::array<std::string, 2> vars, std::string_view E_text,
                       std::string_view G_text, std::array<int, 2> signs, Box domain,
                       const std::map<std::string, double>& consts) {
  std::vector<std::string> chart{vars[0], vars[1]};
  Expression E = Expression::parse(E_text, chart, consts);
  Expression G = Expression::parse(G_text, chart, consts);
  if (signs[0] * signs[0] != 1 || signs[1] * signs[1] != 1)
    throw BadParams("metric signs must be +1 or -1");
  return Metric2D{vars, std::move(E), std::move(G), signs, domain};
}

BlockMetricND as_block(const Metric2D& g) {
  return BlockMetricND{{g.vars[0], g.vars[1]}, {g.E, g.G}, {g.signs[0], g.signs[1]}};
}

double MatN::max_abs() const {
  double r = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r = std::max(r, std::abs(m[i][j]));
  return r;
}

Christoffel christoffel(const BlockMetricND& g, std::span<const double> p) {
  return christoffel_from_jets(component_jets(g, p));
}

Christoffel christoffel(const Metric2D& g, Point2 p) {
  check_domain(g, p);
  return christoffel(as_block(g), p);
}

MatN ricci(const BlockMetricND& g, std::span<const double> p, CurvatureOptions opt) {
  const int n = g.dim();
  Christoffel gam = christoffel(g, p);

  // dGam[m][k][i][j] = d_m Gamma^k_ij by central differences of the AD-exact
  // symbols, one Richardson step: (4 D(h/2) - D(h)) / 3.
  double h0 = opt.fd_scale * (1.0 + norm2(p));
  double dgam[4][4][4][4];
  std::array<double, 4> q{};
  for (int m = 0; m < n; ++m) q[static_cast<std::size_t>(m)] = p[static_cast<std::size_t>(m)];
  for (int m = 0; m < n; ++m) {
    auto diff = [&](double h) {
      auto qp = q, qm = q;
      qp[static_cast<std::size_t>(m)] += h;
      qm[static_cast<std::size_t>(m)] -= h;
      Christoffel cp = christoffel(g, std::span<const double>(qp.data(), static_cast<std::size_t>(n)));
      Christoffel cm = christoffel(g, std::span<const double>(qm.data(), static_cast<std::size_t>(n)));
      Christoffel d;
      d.dim = n;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) d.g[k][i][j] = (cp.g[k][i][j] - cm.g[k][i][j]) / (2.0 * h);
      return d;
    };
    Christoffel d1 = diff(h0);
    Christoffel d2 = diff(0.5 * h0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dgam[m][k][i][j] = (4.0 * d2.g[k][i][j] - d1.g[k][i][j]) / 3.0;
  }

  MatN ric;
  ric.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double t = 0.0;
      for (int k = 0; k < n; ++k) {
        t += dgam[k][k][i][j];
        t -= dgam[j][k][k][i];
      }
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          t += gam.g[k][k][l] * gam.g[l][i][j];
          t -= gam.g[k][j][l] * gam.g[l][k][i];
        }
      ric.m[i][j] = t;
    }
  // Levi-Civita Ricci is symmetric; averaging removes finite-difference noise.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0.5 * (ric.m[i][j] + ric.m[j][i]);
      ric.m[i][j] = s;
      ric.m[j][i] = s;
    }
  return ric;
}

double gauss_curvature(const Metric2D& g, Point2 p, CurvatureOptions opt) {
  check_domain(g, p);
  MatN ric = ricci(as_block(g), p, opt);
  auto gv = metric_values(g, p);
  return 0.5 * (ric(0, 0) / gv[0] + ric(1, 1) / gv[1]);
}

std::array<double, 2> metric_values(const Metric2D& g, Point2 p) {
  double e = g.E.eval(p);
  double gg = g.G.eval(p);
  double g11 = g.signs[0] * e;
  double g22 = g.signs[1] * gg;
  if (std::abs(g11) < kDegenerate || std::abs(g22) < kDegenerate)
    throw DegenerateMetric("metric component below 1e-14");
  return {g11, g22};
}

Mat2 hessian(const Metric2D& g, const Expression& f, Point2 p) {
  check_domain(g, p);
  Christoffel gam = christoffel(as_block(g), p);
  Jet jf = f.eval_jet(p);
  Mat2 h{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double t = jf.hess(i, j);
      for (int k = 0; k < 2; ++k) t -= gam.g[k][i][j] * jf.grad(k);
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
    }
  return h;
}

double laplacian(const Metric2D& g, const Expression& f, Point2 p) {
  Mat2 h = hessian(g, f, p);
  auto gv = metric_values(g, p);
  return h[0][0] / gv[0] + h[1][1] / gv[1];
}

double grad_norm_sq(const Metric2D& g, const Expression& f, Point2 p) {
  check_domain(g, p);
  Jet jf = f.eval_jet(p);
  auto gv = metric_values(g, p);
  return jf.grad(0) * jf.grad(0) / gv[0] + jf.grad(1) * jf.grad(1) / gv[1];
}

}  // namespace warpcheck
