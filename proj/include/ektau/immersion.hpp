#pragma once

#include <memory>
#include <utility>

#include "ektau/chart.hpp"
#include "ektau/dual.hpp"

namespace ektau {

// Second-order jet of a parametrized map into an ambient chart.
struct Jet2 {
  Vec4 p, pu, pv, puu, puv, pvv;
};

// An immersed surface is anything that can produce second-order jets of its
// parametrization.  Analytic surfaces produce them exactly through nested
// duals; grid-sampled surfaces produce them from stencils.
class Immersion {
 public:
  explicit Immersion(AmbientChart chart) : chart_(std::move(chart)) {}
  virtual ~Immersion() = default;

  const AmbientChart& chart() const { return chart_; }
  virtual Jet2 jet(double u, double v) const = 0;
  virtual Vec4 position(double u, double v) const { return jet(u, v).p; }

 private:
  AmbientChart chart_;
};

using ImmersionPtr = std::shared_ptr<const Immersion>;

// exact jet of a map written as a template over the scalar type
template <class F>
Jet2 jet_of_map(const F& f, double u, double v) {
  Vec<D2, 4> r = f(seed_u2(u), seed_v2(v));
  Jet2 j;
  for (int i = 0; i < 4; ++i) {
    j.p[i] = r[i].v.v;
    j.pu[i] = r[i].du.v;
    j.pv[i] = r[i].dv.v;
    j.puu[i] = r[i].du.du;
    j.puv[i] = r[i].du.dv;
    j.pvv[i] = r[i].dv.dv;
  }
  return j;
}

template <class F>
class AnalyticImmersion final : public Immersion {
 public:
  AnalyticImmersion(AmbientChart chart, F f) : Immersion(std::move(chart)), f_(std::move(f)) {}

  Jet2 jet(double u, double v) const override { return jet_of_map(f_, u, v); }

  Vec4 position(double u, double v) const override {
    Vec<double, 4> r = f_(u, v);
    return r;
  }

 private:
  F f_;
};

// f must be callable as f(T u, T v) -> Vec<T,4> for T in {double, D1, D2}.
template <class F>
ImmersionPtr make_immersion(AmbientChart chart, F f) {
  return std::make_shared<AnalyticImmersion<F>>(std::move(chart), std::move(f));
}

// Jets from second-order central stencils over position samples only.  Used
// by the grid verification suites, where the stencil step is the grid step.
class FiniteDiffImmersion final : public Immersion {
 public:
  FiniteDiffImmersion(ImmersionPtr base, double step)
      : Immersion(base->chart()), base_(std::move(base)), h_(step) {}

  Jet2 jet(double u, double v) const override {
    const double h = h_;
    Vec4 fc = base_->position(u, v);
    Vec4 fpu = base_->position(u + h, v), fmu = base_->position(u - h, v);
    Vec4 fpv = base_->position(u, v + h), fmv = base_->position(u, v - h);
    Vec4 fpp = base_->position(u + h, v + h), fpm = base_->position(u + h, v - h);
    Vec4 fmp = base_->position(u - h, v + h), fmm = base_->position(u - h, v - h);
    Jet2 j;
    j.p = fc;
    j.pu = (1.0 / (2 * h)) * (fpu - fmu);
    j.pv = (1.0 / (2 * h)) * (fpv - fmv);
    j.puu = (1.0 / (h * h)) * (fpu - 2.0 * fc + fmu);
    j.pvv = (1.0 / (h * h)) * (fpv - 2.0 * fc + fmv);
    j.puv = (1.0 / (4 * h * h)) * (fpp - fpm - fmp + fmm);
    return j;
  }

  Vec4 position(double u, double v) const override { return base_->position(u, v); }

 private:
  ImmersionPtr base_;
  double h_;
};

// Precomposition with the linear map (u,v) -> (a u + b v, c u + d v); exact
// chain rule on jets.  Covers the conformal reparametrizations z -> a z.
class LinearReparamImmersion final : public Immersion {
 public:
  LinearReparamImmersion(ImmersionPtr base, double a, double b, double c, double d)
      : Immersion(base->chart()), base_(std::move(base)), a_(a), b_(b), c_(c), d_(d) {}

  Jet2 jet(double u, double v) const override {
    Jet2 b = base_->jet(a_ * u + b_ * v, c_ * u + d_ * v);
    Jet2 j;
    j.p = b.p;
    j.pu = a_ * b.pu + c_ * b.pv;
    j.pv = b_ * b.pu + d_ * b.pv;
    j.puu = (a_ * a_) * b.puu + (2 * a_ * c_) * b.puv + (c_ * c_) * b.pvv;
    j.puv = (a_ * b_) * b.puu + (a_ * d_ + b_ * c_) * b.puv + (c_ * d_) * b.pvv;
    j.pvv = (b_ * b_) * b.puu + (2 * b_ * d_) * b.puv + (d_ * d_) * b.pvv;
    return j;
  }

  Vec4 position(double u, double v) const override {
    return base_->position(a_ * u + b_ * v, c_ * u + d_ * v);
  }

 private:
  ImmersionPtr base_;
  double a_, b_, c_, d_;
};

// z -> (re + i im) z as a linear reparametrization
inline ImmersionPtr conformal_reparam(ImmersionPtr base, double re, double im) {
  return std::make_shared<LinearReparamImmersion>(std::move(base), re, -im, im, re);
}

// Precomposition with z -> z + c z^2 (c real): a nonlinear conformal change
// of coordinates.  Useful to de-homogenize invariant surfaces, whose fields
// are otherwise constant along the coordinate lattice.
class HolomorphicQuadraticReparam final : public Immersion {
 public:
  HolomorphicQuadraticReparam(ImmersionPtr base, double c)
      : Immersion(base->chart()), base_(std::move(base)), c_(c) {}

  Jet2 jet(double u, double v) const override {
    double Uu = 1 + 2 * c_ * u, Uv = -2 * c_ * v;
    double Vu = 2 * c_ * v, Vv = 1 + 2 * c_ * u;
    double Uuu = 2 * c_, Uvv = -2 * c_, Uuv = 0;
    double Vuu = 0, Vvv = 0, Vuv = 2 * c_;
    Jet2 b = base_->jet(u + c_ * (u * u - v * v), v + 2 * c_ * u * v);
    Jet2 j;
    j.p = b.p;
    j.pu = Uu * b.pu + Vu * b.pv;
    j.pv = Uv * b.pu + Vv * b.pv;
    j.puu = (Uu * Uu) * b.puu + (2 * Uu * Vu) * b.puv + (Vu * Vu) * b.pvv +
            Uuu * b.pu + Vuu * b.pv;
    j.puv = (Uu * Uv) * b.puu + (Uu * Vv + Uv * Vu) * b.puv + (Vu * Vv) * b.pvv +
            Uuv * b.pu + Vuv * b.pv;
    j.pvv = (Uv * Uv) * b.puu + (2 * Uv * Vv) * b.puv + (Vv * Vv) * b.pvv +
            Uvv * b.pu + Vvv * b.pv;
    return j;
  }

  Vec4 position(double u, double v) const override {
    return base_->position(u + c_ * (u * u - v * v), v + 2 * c_ * u * v);
  }

 private:
  ImmersionPtr base_;
  double c_;
};

inline ImmersionPtr quadratic_reparam(ImmersionPtr base, double c) {
  return std::make_shared<HolomorphicQuadraticReparam>(std::move(base), c);
}

}  // namespace ektau
