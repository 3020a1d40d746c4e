#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

// Truncated Taylor series arithmetic and a fixed-step Taylor-method ODE
// integrator.  Marching a series of order ~14 with small steps keeps the
// dense output smooth to machine precision, so immersions built on ODE
// profiles can be differentiated like closed forms.

namespace ektau {

constexpr int kSeriesOrder = 14;

struct Series {
  std::array<double, kSeriesOrder + 1> a{};

  static Series constant(double c) {
    Series s;
    s.a[0] = c;
    return s;
  }
  // the local time variable delta
  static Series variable(double c) {
    Series s;
    s.a[0] = c;
    s.a[1] = 1.0;
    return s;
  }

  template <class T>
  T eval(const T& x) const {
    T r = T(a[kSeriesOrder]);
    for (int k = kSeriesOrder - 1; k >= 0; --k) r = r * x + a[k];
    return r;
  }

  Series& operator+=(const Series& o) {
    for (int k = 0; k <= kSeriesOrder; ++k) a[k] += o.a[k];
    return *this;
  }
};

inline Series operator+(Series x, const Series& y) { return x += y; }
inline Series operator-(const Series& x, const Series& y) {
  Series r;
  for (int k = 0; k <= kSeriesOrder; ++k) r.a[k] = x.a[k] - y.a[k];
  return r;
}
inline Series operator-(const Series& x) {
  Series r;
  for (int k = 0; k <= kSeriesOrder; ++k) r.a[k] = -x.a[k];
  return r;
}
inline Series operator*(double s, const Series& x) {
  Series r;
  for (int k = 0; k <= kSeriesOrder; ++k) r.a[k] = s * x.a[k];
  return r;
}
inline Series operator*(const Series& x, double s) { return s * x; }
inline Series operator+(const Series& x, double s) {
  Series r = x;
  r.a[0] += s;
  return r;
}
inline Series operator+(double s, const Series& x) { return x + s; }
inline Series operator-(const Series& x, double s) { return x + (-s); }
inline Series operator-(double s, const Series& x) { return -x + s; }

inline Series operator*(const Series& x, const Series& y) {
  Series r;
  for (int k = 0; k <= kSeriesOrder; ++k) {
    double s = 0;
    for (int j = 0; j <= k; ++j) s += x.a[j] * y.a[k - j];
    r.a[k] = s;
  }
  return r;
}

inline Series operator/(const Series& x, const Series& y) {
  Series r;
  for (int k = 0; k <= kSeriesOrder; ++k) {
    double s = x.a[k];
    for (int j = 0; j < k; ++j) s -= r.a[j] * y.a[k - j];
    r.a[k] = s / y.a[0];
  }
  return r;
}

// sin/cos share the coupled recurrence s' = c f', c' = -s f'
inline void sincos(const Series& f, Series& s, Series& c) {
  s.a[0] = std::sin(f.a[0]);
  c.a[0] = std::cos(f.a[0]);
  for (int k = 1; k <= kSeriesOrder; ++k) {
    double ss = 0, cc = 0;
    for (int j = 1; j <= k; ++j) {
      ss += j * f.a[j] * c.a[k - j];
      cc += j * f.a[j] * s.a[k - j];
    }
    s.a[k] = ss / k;
    c.a[k] = -cc / k;
  }
}

inline void sinhcosh(const Series& f, Series& sh, Series& ch) {
  sh.a[0] = std::sinh(f.a[0]);
  ch.a[0] = std::cosh(f.a[0]);
  for (int k = 1; k <= kSeriesOrder; ++k) {
    double ss = 0, cc = 0;
    for (int j = 1; j <= k; ++j) {
      ss += j * f.a[j] * ch.a[k - j];
      cc += j * f.a[j] * sh.a[k - j];
    }
    sh.a[k] = ss / k;
    ch.a[k] = cc / k;
  }
}

inline Series sin(const Series& f) { Series s, c; sincos(f, s, c); return s; }
inline Series cos(const Series& f) { Series s, c; sincos(f, s, c); return c; }
inline Series sinh(const Series& f) { Series s, c; sinhcosh(f, s, c); return s; }
inline Series cosh(const Series& f) { Series s, c; sinhcosh(f, s, c); return c; }

inline Series exp(const Series& f) {
  Series e;
  e.a[0] = std::exp(f.a[0]);
  for (int k = 1; k <= kSeriesOrder; ++k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += j * f.a[j] * e.a[k - j];
    e.a[k] = s / k;
  }
  return e;
}

inline Series sqrt(const Series& f) {
  Series r;
  r.a[0] = std::sqrt(f.a[0]);
  for (int k = 1; k <= kSeriesOrder; ++k) {
    double s = f.a[k];
    for (int j = 1; j < k; ++j) s -= r.a[j] * r.a[k - j];
    r.a[k] = s / (2.0 * r.a[0]);
  }
  return r;
}

// term-wise antiderivative with constant term c0
inline Series integrate(const Series& f, double c0) {
  Series r;
  r.a[0] = c0;
  for (int k = 1; k <= kSeriesOrder; ++k) r.a[k] = f.a[k - 1] / k;
  return r;
}

// Autonomous fixed-step Taylor integrator with dense, smooth output.
// RHS maps a state of series to the series of its derivative.
template <int M>
class TaylorPath {
 public:
  using State = std::array<double, M>;
  using SeriesState = std::array<Series, M>;
  using Rhs = std::function<SeriesState(const SeriesState&)>;

  TaylorPath(Rhs rhs, State y0, double step) : rhs_(std::move(rhs)), step_(step) {
    anchors_.push_back(y0);
    t0_ = 0.0;
    tmin_ = tmax_ = 0.0;
  }

  // Series expansion of the solution around anchor value y.
  SeriesState expand(const State& y) const {
    SeriesState ys;
    for (int m = 0; m < M; ++m) ys[m] = Series::constant(y[m]);
    for (int it = 0; it <= kSeriesOrder; ++it) {
      SeriesState f = rhs_(ys);
      for (int m = 0; m < M; ++m) ys[m] = integrate(f[m], y[m]);
    }
    return ys;
  }

  void extend_to(double t) {
    while (tmax_ < t) {
      const State& y = anchors_.back();
      SeriesState ys = expand(y);
      fwd_.push_back(ys);
      State yn;
      for (int m = 0; m < M; ++m) yn[m] = ys[m].eval(step_);
      anchors_.push_back(yn);
      tmax_ += step_;
    }
    while (tmin_ > t) {
      const State& y = anchors_front();
      SeriesState ys = expand(y);
      bwd_.push_back(ys);
      State yn;
      for (int m = 0; m < M; ++m) yn[m] = ys[m].eval(-step_);
      anchors_bwd_.push_back(yn);
      tmin_ -= step_;
    }
  }

  // Evaluate component m at parameter t (t may be a dual scalar whose value
  // lies inside the integrated range).
  template <class T>
  T eval(int m, const T& t) const {
    double tv = scalar_value(t);
    if (tv > tmax_ + 1e-12 || tv < tmin_ - 1e-12)
      throw std::runtime_error("TaylorPath: evaluation outside integrated range");
    if (tv >= 0.0 && fwd_.empty() && !bwd_.empty()) return bwd_[0][m].eval(t - t0_);
    if (tv >= 0.0) {
      int i = static_cast<int>(tv / step_);
      if (i >= static_cast<int>(fwd_.size())) i = static_cast<int>(fwd_.size()) - 1;
      return fwd_[i][m].eval(t - (t0_ + i * step_));
    }
    int i = static_cast<int>(-tv / step_);
    if (i >= static_cast<int>(bwd_.size())) i = static_cast<int>(bwd_.size()) - 1;
    // backward segments expand around t = -i*step_ and are evaluated at
    // negative local time
    return bwd_[i][m].eval(t + i * step_);
  }

  State state_at(double t) const {
    State y;
    for (int m = 0; m < M; ++m) y[m] = eval(m, t);
    return y;
  }

  double tmin() const { return tmin_; }
  double tmax() const { return tmax_; }

 private:
  static double scalar_value(double x) { return x; }
  template <class U>
  static double scalar_value(const U& x) { return value(x); }

  const State& anchors_front() const {
    return anchors_bwd_.empty() ? anchors_.front() : anchors_bwd_.back();
  }

  Rhs rhs_;
  double step_;
  double t0_;
  double tmin_, tmax_;
  std::vector<State> anchors_;       // forward anchors at t = 0, step, 2*step, ...
  std::vector<State> anchors_bwd_;   // backward anchors at t = -step, -2*step, ...
  std::vector<SeriesState> fwd_;     // series around forward anchors
  std::vector<SeriesState> bwd_;     // series around backward anchors
};

}  // namespace ektau
