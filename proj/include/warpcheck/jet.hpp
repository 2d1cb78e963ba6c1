#ifndef WARPCHECK_JET_HPP
#define WARPCHECK_JET_HPP

#include <array>
#include <cmath>

namespace warpcheck {

// Second-order forward-mode jet: value, gradient and Hessian of a scalar
// quantity with respect to up to 4 chart variables. The Hessian is stored
// as a packed upper triangle; hess(i,j) reads either triangle.
class Jet {
 public:
  static constexpr int kMaxVars = 4;

  explicit Jet(int nvars) : n_(nvars) {
    g_.fill(0.0);
    h_.fill(0.0);
  }

  static Jet constant(int nvars, double v) {
    Jet j(nvars);
    j.v_ = v;
    return j;
  }

  static Jet variable(int nvars, int index, double v) {
    Jet j(nvars);
    j.v_ = v;
    j.g_[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  int nvars() const { return n_; }
  double value() const { return v_; }
  double grad(int i) const { return g_[static_cast<std::size_t>(i)]; }
  double hess(int i, int j) const {
    return i <= j ? h_[tri(i, j)] : h_[tri(j, i)];
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.n_);
    r.v_ = a.v_ + b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = a.g_[i] + b.g_[i];
    for (int k = 0; k < ntri(a.n_); ++k) r.h_[k] = a.h_[k] + b.h_[k];
    return r;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.n_);
    r.v_ = a.v_ - b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = a.g_[i] - b.g_[i];
    for (int k = 0; k < ntri(a.n_); ++k) r.h_[k] = a.h_[k] - b.h_[k];
    return r;
  }

  friend Jet operator-(const Jet& a) {
    Jet r(a.n_);
    r.v_ = -a.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = -a.g_[i];
    for (int k = 0; k < ntri(a.n_); ++k) r.h_[k] = -a.h_[k];
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.n_);
    r.v_ = a.v_ * b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    for (int j = 0; j < a.n_; ++j)
      for (int i = 0; i <= j; ++i)
        r.h_[tri(i, j)] = a.v_ * b.h_[tri(i, j)] + b.v_ * a.h_[tri(i, j)] +
                          a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
    return r;
  }

  friend Jet operator*(double c, const Jet& a) {
    Jet r(a.n_);
    r.v_ = c * a.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = c * a.g_[i];
    for (int k = 0; k < ntri(a.n_); ++k) r.h_[k] = c * a.h_[k];
    return r;
  }

  // Composition with a scalar function given by (f, f', f'') at value().
  Jet chain(double f, double df, double ddf) const {
    Jet r(n_);
    r.v_ = f;
    for (int i = 0; i < n_; ++i) r.g_[i] = df * g_[i];
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i <= j; ++i)
        r.h_[tri(i, j)] = df * h_[tri(i, j)] + ddf * g_[i] * g_[j];
    return r;
  }

  Jet reciprocal() const {
    double inv = 1.0 / v_;
    return chain(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  // Integer power by repeated multiplication (exact for any sign of base).
  Jet powi(long long p) const {
    if (p < 0) return powi(-p).reciprocal();
    Jet r = constant(n_, 1.0);
    for (long long k = 0; k < p; ++k) r = r * (*this);
    return r;
  }

  bool derivatives_vanish() const {
    for (int i = 0; i < n_; ++i)
      if (g_[i] != 0.0) return false;
    for (int k = 0; k < ntri(n_); ++k)
      if (h_[k] != 0.0) return false;
    return true;
  }

 private:
  static constexpr int tri(int i, int j) { return j * (j + 1) / 2 + i; }  // i <= j
  static constexpr int ntri(int n) { return n * (n + 1) / 2; }

  int n_;
  double v_ = 0.0;
  std::array<double, kMaxVars> g_;
  std::array<double, kMaxVars*(kMaxVars + 1) / 2> h_;
};

}  // namespace warpcheck

#endif  // WARPCHECK_JET_HPP
