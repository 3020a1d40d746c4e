#pragma once

#include <complex>

#include "ektau/geometry.hpp"

// The traceless shape operator whose quadratic form has the
// Abresch-Rosenberg differential as its Hopf coefficient, for both the
// product (tau = 0) and the fibered (tau != 0) cases, together with the
// classification verdict for complete surfaces with vanishing differential.

namespace ektau {

struct ARData {
  Mat<double, 2> S;    // S_AR in the (du, dv) coordinate basis
  Mat<double, 2> II;   // II_AR = I S_AR (symmetrized)
  double self_adjoint_residual = 0;  // max |I S - (I S)^T|
  double alpha = 0;    // (kappa - 4 tau^2) / (2 sqrt(H^2 + tau^2)), tau != 0 only
  double theta = 0;    // principal phase of (H - i tau)/sqrt(H^2+tau^2)
  Vec4 T_theta;        // ambient components, tau != 0 only
  bool tau_zero_route = true;
};

// Tangent-plane rotation by +pi/2 in the (du, dv) basis for metric I.
inline Mat<double, 2> rotation_J(double E, double F, double G) {
  double root = std::sqrt(E * G - F * F);
  Mat<double, 2> J;
  J(0, 0) = -F / root;
  J(0, 1) = -G / root;
  J(1, 0) = E / root;
  J(1, 1) = F / root;
  return J;
}

inline ARData ar_operator(const AmbientChart& chart, const PointGeometry& pg) {
  const SpaceParams& sp = chart.params();

  Mat<double, 2> I;
  I(0, 0) = pg.E;
  I(0, 1) = I(1, 0) = pg.F;
  I(1, 1) = pg.G;
  Mat<double, 2> II;
  II(0, 0) = pg.L;
  II(0, 1) = II(1, 0) = pg.M;
  II(1, 1) = pg.N2;
  Mat<double, 2> A = inverse2(I) * II;

  // tangent coordinates of T
  Vec<double, 2> Tc = solve2(I, Vec<double, 2>{chart.inner(pg.pos, pg.T, pg.phiu),
                                               chart.inner(pg.pos, pg.T, pg.phiv)});
  double T2 = chart.inner(pg.pos, pg.T, pg.T);

  auto outer = [&](const Vec<double, 2>& x) {
    // operator v -> I(v, x) x
    Vec<double, 2> xb{I(0, 0) * x[0] + I(0, 1) * x[1], I(1, 0) * x[0] + I(1, 1) * x[1]};
    Mat<double, 2> m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = x[i] * xb[j];
    return m;
  };

  ARData ar;
  if (sp.tau == 0.0) {
    // S x = 2H A x - kappa <x,T> T + (kappa |T|^2 / 2) x - 2 H^2 x
    ar.tau_zero_route = true;
    double H = pg.H, kappa = sp.kappa;
    Mat<double, 2> S = (2.0 * H) * A + (-kappa) * outer(Tc);
    double c = 0.5 * kappa * T2 - 2.0 * H * H;
    S(0, 0) += c;
    S(1, 1) += c;
    ar.S = S;
    ar.theta = (pg.H >= 0) ? 0.0 : M_PI / 2;
    ar.T_theta = pg.T;  // the product-space route uses T itself
  } else {
    // S x = A x - alpha <x,T_th> T_th + (alpha |T|^2 / 2) x - H x
    ar.tau_zero_route = false;
    double H = pg.H, tau = sp.tau;
    double w = std::sqrt(H * H + tau * tau);
    ar.alpha = sp.kappa4t2() / (2.0 * w);
    // e^{2 i theta} = (H - i tau) / w, principal half-angle
    ar.theta = 0.5 * std::atan2(-tau, H);
    // T_th = cos(theta) T - sin(theta) J T; the sign on J absorbs the
    // orientation so that the Hopf coefficient of (I, II_AR) stays
    // proportional to the Abresch-Rosenberg coefficient
    Mat<double, 2> J = rotation_J(pg.E, pg.F, pg.G);
    Vec<double, 2> JTc = J * Tc;
    Vec<double, 2> Tth{std::cos(ar.theta) * Tc[0] - std::sin(ar.theta) * JTc[0],
                       std::cos(ar.theta) * Tc[1] - std::sin(ar.theta) * JTc[1]};
    Mat<double, 2> S = A + (-ar.alpha) * outer(Tth);
    double c = 0.5 * ar.alpha * T2 - H;
    S(0, 0) += c;
    S(1, 1) += c;
    ar.S = S;
    for (int i = 0; i < 4; ++i)
      ar.T_theta[i] = Tth[0] * pg.phiu[i] + Tth[1] * pg.phiv[i];
  }

  Mat<double, 2> ISm = I * ar.S;
  ar.self_adjoint_residual = std::abs(ISm(0, 1) - ISm(1, 0));
  ar.II = ISm;
  ar.II(0, 1) = ar.II(1, 0) = 0.5 * (ISm(0, 1) + ISm(1, 0));
  return ar;
}

inline ARData ar_operator(const Immersion& imm, double u, double v,
                          const GeometryOptions& opt = {}) {
  return ar_operator(imm.chart(), point_geometry(imm, u, v, opt));
}

// Q^AR = 2 (H + i tau) Q - (kappa - 4 tau^2) t^2 in a conformal parameter.
inline Cplx ar_differential(const PointGeometry& pg, const SpaceParams& sp) {
  require_isothermal(pg);
  return 2.0 * Cplx(pg.H, sp.tau) * pg.Q - sp.kappa4t2() * pg.t * pg.t;
}

inline Cplx ar_differential(const Immersion& imm, double u, double v,
                            const GeometryOptions& opt = {}) {
  PointGeometry pg = point_geometry(imm, u, v, opt);
  return ar_differential(pg, imm.chart().params());
}

// Hopf coefficient of the pair (I, II_AR) in a conformal parameter.
inline Cplx pair_hopf(const Immersion& imm, double u, double v,
                      const GeometryOptions& opt = {}) {
  PointGeometry pg = point_geometry(imm, u, v, opt);
  require_isothermal(pg);
  ARData ar = ar_operator(imm, u, v, opt);
  return Cplx(0.25 * (ar.II(0, 0) - ar.II(1, 1)), -0.5 * ar.II(0, 1));
}

enum class ARVerdict { Slice, RotSphere, FlatVertical, SomewhereNegativeK };

struct ARClassification {
  ARVerdict verdict;
  bool sphere_exists = false;  // 4 H^2 + kappa > 0
  bool K_positive = false;     // the strict positive-curvature regime
};

// Classification of the complete surfaces with vanishing AR differential
// from the (kappa, tau, H) data plus whether the angle function vanishes.
inline ARClassification classify_ar(const SpaceParams& sp, double H, bool nu_zero) {
  ARClassification c{};
  double k4 = sp.kappa4t2();
  c.sphere_exists = 4.0 * H * H + sp.kappa > 1e-12;
  c.K_positive = (k4 > 0) ? (4.0 * (H * H + sp.tau * sp.tau) > k4)
                          : (H * H + sp.tau * sp.tau > -k4);
  if (H == 0.0 && sp.tau == 0.0) {
    c.verdict = ARVerdict::Slice;
  } else if (std::abs(4.0 * H * H + sp.kappa) <= 1e-12 && nu_zero) {
    c.verdict = ARVerdict::FlatVertical;
  } else if (c.sphere_exists) {
    c.verdict = ARVerdict::RotSphere;
  } else {
    c.verdict = ARVerdict::SomewhereNegativeK;
  }
  return c;
}

inline const char* to_string(ARVerdict v) {
  switch (v) {
    case ARVerdict::Slice: return "slice";
    case ARVerdict::RotSphere: return "rotational-sphere";
    case ARVerdict::FlatVertical: return "flat-vertical";
    default: return "somewhere-negative-K";
  }
}

}  // namespace ektau
