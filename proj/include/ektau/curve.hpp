#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "ektau/arpair.hpp"

// Curves in a surface's parameter domain, their per-sample geometry, and the
// test for being a line of curvature of the traceless shape operator.

namespace ektau {

// s -> (u(s), v(s)) with derivative
class ParamCurve {
 public:
  virtual ~ParamCurve() = default;
  virtual void eval(double s, double& u, double& v, double& du, double& dv) const = 0;
};

using ParamCurvePtr = std::shared_ptr<const ParamCurve>;

// curve from a scalar-templated callable f(T s) -> Vec<T,2>
template <class F>
class AnalyticCurve final : public ParamCurve {
 public:
  explicit AnalyticCurve(F f) : f_(std::move(f)) {}
  void eval(double s, double& u, double& v, double& du, double& dv) const override {
    Vec<D1, 2> r = f_(seed_u1(s));
    u = r[0].v;
    v = r[1].v;
    du = r[0].du;
    dv = r[1].du;
  }

 private:
  F f_;
};

template <class F>
ParamCurvePtr make_curve(F f) {
  return std::make_shared<AnalyticCurve<F>>(std::move(f));
}

// curve known only at discrete parameter values, with tangents supplied
// (used by the intersection tracer, whose tangents are exact)
class SampledParamCurve final : public ParamCurve {
 public:
  SampledParamCurve(std::vector<double> s, std::vector<Vec<double, 2>> uv,
                    std::vector<Vec<double, 2>> tangent)
      : s_(std::move(s)), uv_(std::move(uv)), tan_(std::move(tangent)) {}

  void eval(double s, double& u, double& v, double& du, double& dv) const override {
    for (size_t i = 0; i < s_.size(); ++i)
      if (std::abs(s_[i] - s) < 1e-12) {
        u = uv_[i][0];
        v = uv_[i][1];
        du = tan_[i][0];
        dv = tan_[i][1];
        return;
      }
    throw parameter_error("SampledParamCurve: parameter off the sample set");
  }

  const std::vector<double>& parameters() const { return s_; }

 private:
  std::vector<double> s_;
  std::vector<Vec<double, 2>> uv_, tan_;
};

struct CurveOnSurface {
  ImmersionPtr surface;
  ParamCurvePtr curve;
  std::vector<double> samples;  // parameter values, fixed order
};

inline CurveOnSurface curve_on_surface(ImmersionPtr surf, ParamCurvePtr curve,
                                       double s0, double s1, int n) {
  CurveOnSurface c{std::move(surf), std::move(curve), {}};
  for (int i = 0; i < n; ++i) c.samples.push_back(s0 + (s1 - s0) * i / (n - 1));
  return c;
}

struct CurveSample {
  double s = 0, u = 0, v = 0;
  Vec<double, 2> vel_coords;
  Vec4 pos, vel;       // ambient
  double speed2 = 0;   // |gamma'|^2 w.r.t. I
  PointGeometry pg;
  ARData ar;
};

inline CurveSample curve_sample(const CurveOnSurface& c, double s,
                                const GeometryOptions& opt = {}) {
  CurveSample cs;
  cs.s = s;
  double du, dv;
  c.curve->eval(s, cs.u, cs.v, du, dv);
  cs.vel_coords = Vec<double, 2>{du, dv};
  cs.pg = point_geometry(*c.surface, cs.u, cs.v, opt);
  cs.ar = ar_operator(c.surface->chart(), cs.pg);
  cs.pos = cs.pg.pos;
  cs.vel = du * cs.pg.phiu + dv * cs.pg.phiv;
  cs.speed2 = cs.pg.E * du * du + 2 * cs.pg.F * du * dv + cs.pg.G * dv * dv;
  if (cs.speed2 < 1e-16)
    throw numeric_error("curve sample: zero-speed point, curve is not regular");
  return cs;
}

// Residual of the line-of-curvature condition for the traceless operator:
// |II_AR(gamma', J gamma')| / |gamma'|^2, which vanishes exactly when
// gamma' is an eigenvector of S_AR.  Works in arbitrary coordinates.
inline double ar_locus_residual_at(const CurveSample& cs) {
  Mat<double, 2> J = rotation_J(cs.pg.E, cs.pg.F, cs.pg.G);
  Vec<double, 2> jg = J * cs.vel_coords;
  double ii = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ii += cs.ar.II(i, j) * cs.vel_coords[i] * jg[j];
  return std::abs(ii) / cs.speed2;
}

inline Cplx pair_hopf_of(const CurveSample& cs) {
  return Cplx(0.25 * (cs.ar.II(0, 0) - cs.ar.II(1, 1)), -0.5 * cs.ar.II(0, 1));
}

// equivalent eigen-form residual: sqrt(det I) |S gamma' x gamma'| / |gamma'|^2
inline double ar_locus_residual_eigenform(const CurveSample& cs) {
  Vec<double, 2> sg = cs.ar.S * cs.vel_coords;
  double cross = sg[0] * cs.vel_coords[1] - sg[1] * cs.vel_coords[0];
  double det = cs.pg.E * cs.pg.G - cs.pg.F * cs.pg.F;
  return std::sqrt(det) * std::abs(cross) / cs.speed2;
}

struct LocusReport {
  std::vector<double> s;
  std::vector<double> residual;        // coordinate-free form
  std::vector<double> im_qar;          // |Im(Q^AR dz(gamma')^2)|, isothermal only
  double max_residual = 0;
  bool isothermal = true;
};

inline LocusReport ar_locus_residual(const CurveOnSurface& c,
                                     const GeometryOptions& opt = {}) {
  LocusReport rep;
  for (double s : c.samples) {
    CurveSample cs = curve_sample(c, s, opt);
    double r = ar_locus_residual_at(cs);
    rep.s.push_back(s);
    rep.residual.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
    if (cs.pg.isothermal) {
      // |II_AR(g', Jg')| = 2 |Im(Q^AR dz(g')^2)| for tau = 0, and the same
      // with the pair coefficient in general; scaled to match `residual`
      Cplx q = pair_hopf_of(cs);
      Cplx dz(cs.vel_coords[0], cs.vel_coords[1]);
      rep.im_qar.push_back(2.0 * std::abs(std::imag(q * dz * dz)) / cs.speed2);
    } else {
      rep.isothermal = false;
    }
  }
  return rep;
}

struct CurveClass {
  bool horizontal = false;
  bool vertical = false;
  double horizontal_residual = 0;  // max |<xi, gamma'>| / |gamma'|
  double vertical_residual = 0;    // max |gamma' x T| / (|gamma'| |T|)
  double min_T = 1e30;
};

// horizontal: contained in a slice (tau = 0 charts only);
// vertical: integral curve of T
inline CurveClass classify_curve(const CurveOnSurface& c,
                                 const GeometryOptions& opt = {}) {
  const AmbientChart& chart = c.surface->chart();
  CurveClass cc;
  bool horizontal_supported = chart.params().tau == 0;
  for (double s : c.samples) {
    CurveSample cs = curve_sample(c, s, opt);
    double speed = std::sqrt(cs.speed2);
    Vec4 xi = chart.vertical_t<double>(cs.pos);
    if (horizontal_supported) {
      double hres = std::abs(chart.inner(cs.pos, xi, cs.vel)) / speed;
      cc.horizontal_residual = std::max(cc.horizontal_residual, hres);
    }
    double T2 = chart.inner(cs.pos, cs.pg.T, cs.pg.T);
    cc.min_T = std::min(cc.min_T, std::sqrt(T2));
    if (T2 > 1e-16) {
      Vec4 cr = chart.cross_t<double>(cs.pos, cs.vel, cs.pg.T);
      double vres = chart.norm(cs.pos, cr) / (speed * std::sqrt(T2));
      cc.vertical_residual = std::max(cc.vertical_residual, vres);
    } else {
      cc.vertical_residual = 1.0;
    }
  }
  cc.horizontal = horizontal_supported && cc.horizontal_residual <= 1e-8;
  cc.vertical = cc.vertical_residual <= 1e-8 && cc.min_T > 1e-8;
  return cc;
}

inline void require_horizontal_supported(const CurveOnSurface& c) {
  if (c.surface->chart().params().tau != 0)
    throw unsupported_error("horizontal curves exist only in product spaces (tau = 0)");
}

inline bool is_horizontal_curve(const CurveOnSurface& c,
                                const GeometryOptions& opt = {}) {
  require_horizontal_supported(c);
  return classify_curve(c, opt).horizontal;
}

inline bool is_vertical_curve(const CurveOnSurface& c, const GeometryOptions& opt = {}) {
  return classify_curve(c, opt).vertical;
}

}  // namespace ektau
