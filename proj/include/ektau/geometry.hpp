#pragma once

#include <complex>

#include "ektau/immersion.hpp"

// Per-point geometry of an immersed surface.  Everything is evaluated in
// Dual2 arithmetic seeded from the second-order jet, so first derivatives of
// all pointwise fields (normal, angle function, conformal factor, ...) come
// out exact relative to the supplied jet.

namespace ektau {

using Cplx = std::complex<double>;

struct GeometryOptions {
  double isothermal_tol = 1e-8;
  double rank_tol = 1e-8;
};

struct PointGeometry {
  Vec4 pos, phiu, phiv;
  double E, F, G;            // first fundamental form
  double L, M, N2;           // second fundamental form (M symmetrized)
  double II_asym;            // |II(du,dv) - II(dv,du)| before symmetrization
  Vec4 normal;               // unit normal, (phiu, phiv, N) positively oriented
  Vec4 cov_u_N, cov_v_N;     // ambient covariant derivatives of N
  double H = 0, Ke = 0;      // mean and extrinsic curvature
  double nu = 0;             // angle function <N, xi>
  double nu_u = 0, nu_v = 0;
  Vec4 T;                    // tangential part of xi
  bool isothermal = false;
  double lambda = 0;         // I = 2 lambda |dz|^2 when isothermal
  double lambda_u = 0, lambda_v = 0;
  Cplx t, t_u, t_v;          // t = <T, dz>, conformal coordinates only
  Cplx Q;                    // Hopf coefficient, conformal coordinates only
};

inline PointGeometry point_geometry(const Immersion& imm, double u, double v,
                                    const GeometryOptions& opt = {}) {
  const AmbientChart& chart = imm.chart();
  Jet2 j = imm.jet(u, v);
  chart.require_domain(j.p);

  Vec<D1, 4> P, XU, XV;
  for (int i = 0; i < 4; ++i) {
    P[i] = D1(j.p[i], j.pu[i], j.pv[i]);
    XU[i] = D1(j.pu[i], j.puu[i], j.puv[i]);
    XV[i] = D1(j.pv[i], j.puv[i], j.pvv[i]);
  }
  Mat<D1, 4> g = chart.metric_t(P);

  D1 E = form(g, XU, XU, 4), F = form(g, XU, XV, 4), G = form(g, XV, XV, 4);

  Vec<D1, 4> W = chart.cross_t(P, XU, XV);
  D1 Wn = sqrt(form(g, W, W, 4));
  if (Wn.v < opt.rank_tol)
    throw numeric_error("point_geometry: immersion condition fails (rank drop)");
  Vec<D1, 4> N = (1.0 / Wn) * W;

  Vec<D1, 4> xi = chart.vertical_t(P);
  D1 nu = form(g, N, xi, 4);
  Vec<D1, 4> T = xi - nu * N;

  PointGeometry pg;
  pg.pos = j.p;
  pg.phiu = j.pu;
  pg.phiv = j.pv;
  pg.E = E.v;
  pg.F = F.v;
  pg.G = G.v;
  for (int i = 0; i < 4; ++i) {
    pg.normal[i] = N[i].v;
    pg.T[i] = T[i].v;
  }
  pg.nu = nu.v;
  pg.nu_u = nu.du;
  pg.nu_v = nu.dv;

  // shape operator through the ambient derivative of the normal
  Vec4 dNdu, dNdv;
  for (int i = 0; i < 4; ++i) {
    dNdu[i] = N[i].du;
    dNdv[i] = N[i].dv;
  }
  pg.cov_u_N = chart.covariant_derivative(j.p, j.pu, pg.normal, dNdu);
  pg.cov_v_N = chart.covariant_derivative(j.p, j.pv, pg.normal, dNdv);
  double Luu = -chart.inner(j.p, pg.cov_u_N, j.pu);
  double Muv = -chart.inner(j.p, pg.cov_u_N, j.pv);
  double Mvu = -chart.inner(j.p, pg.cov_v_N, j.pu);
  double Nvv = -chart.inner(j.p, pg.cov_v_N, j.pv);
  pg.L = Luu;
  pg.N2 = Nvv;
  pg.M = 0.5 * (Muv + Mvu);
  pg.II_asym = std::abs(Muv - Mvu);

  double det = pg.E * pg.G - pg.F * pg.F;
  pg.H = (pg.G * pg.L - 2.0 * pg.F * pg.M + pg.E * pg.N2) / (2.0 * det);
  pg.Ke = (pg.L * pg.N2 - pg.M * pg.M) / det;

  double scale = E.v + G.v;
  pg.isothermal = std::abs(E.v - G.v) <= opt.isothermal_tol * scale &&
                  std::abs(F.v) <= opt.isothermal_tol * scale;
  pg.lambda = 0.25 * (E.v + G.v);
  pg.lambda_u = 0.25 * (E.du + G.du);
  pg.lambda_v = 0.25 * (E.dv + G.dv);

  D1 Tu = form(g, T, XU, 4), Tv = form(g, T, XV, 4);
  pg.t = 0.5 * Cplx(Tu.v, -Tv.v);
  pg.t_u = 0.5 * Cplx(Tu.du, -Tv.du);
  pg.t_v = 0.5 * Cplx(Tu.dv, -Tv.dv);
  pg.Q = Cplx(0.25 * (pg.L - pg.N2), -0.5 * pg.M);
  return pg;
}

inline void require_isothermal(const PointGeometry& pg) {
  if (!pg.isothermal)
    throw unsupported_error("operation requires isothermal coordinates");
}

inline Cplx hopf_Q(const Immersion& imm, double u, double v,
                   const GeometryOptions& opt = {}) {
  PointGeometry pg = point_geometry(imm, u, v, opt);
  require_isothermal(pg);
  return pg.Q;
}

inline Cplx vertical_t_coeff(const Immersion& imm, double u, double v,
                             const GeometryOptions& opt = {}) {
  PointGeometry pg = point_geometry(imm, u, v, opt);
  require_isothermal(pg);
  return pg.t;
}

struct IsothermalReport {
  double max_eg = 0;  // max |E-G| / (E+G)
  double max_f = 0;   // max |F| / (E+G)
  bool isothermal = false;
};

inline IsothermalReport isothermal_check(const Immersion& imm, double u0, double u1,
                                         double v0, double v1, int n = 9,
                                         const GeometryOptions& opt = {}) {
  IsothermalReport rep;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double u = u0 + (u1 - u0) * i / (n - 1);
      double v = v0 + (v1 - v0) * k / (n - 1);
      PointGeometry pg = point_geometry(imm, u, v, opt);
      double s = pg.E + pg.G;
      rep.max_eg = std::max(rep.max_eg, std::abs(pg.E - pg.G) / s);
      rep.max_f = std::max(rep.max_f, std::abs(pg.F) / s);
    }
  rep.isothermal = rep.max_eg <= opt.isothermal_tol && rep.max_f <= opt.isothermal_tol;
  return rep;
}

// Intrinsic Gauss curvature from the conformal factor,
//   K = -laplace(log 2 lambda) / (4 lambda),
// realized as central differences of the exact gradient of log(2 lambda).
inline double gauss_curvature(const Immersion& imm, double u, double v,
                              double step = 1e-3, int order = 4,
                              const GeometryOptions& opt = {}) {
  PointGeometry c = point_geometry(imm, u, v, opt);
  require_isothermal(c);
  auto dlog_u = [&](double uu, double vv) {
    PointGeometry pg = point_geometry(imm, uu, vv, opt);
    return pg.lambda_u / pg.lambda;
  };
  auto dlog_v = [&](double uu, double vv) {
    PointGeometry pg = point_geometry(imm, uu, vv, opt);
    return pg.lambda_v / pg.lambda;
  };
  double s = step;
  double lap;
  if (order == 2) {
    lap = (dlog_u(u + s, v) - dlog_u(u - s, v)) / (2 * s) +
          (dlog_v(u, v + s) - dlog_v(u, v - s)) / (2 * s);
  } else {
    lap = (-dlog_u(u + 2 * s, v) + 8 * dlog_u(u + s, v) - 8 * dlog_u(u - s, v) +
           dlog_u(u - 2 * s, v)) / (12 * s) +
          (-dlog_v(u, v + 2 * s) + 8 * dlog_v(u, v + s) - 8 * dlog_v(u, v - s) +
           dlog_v(u, v - 2 * s)) / (12 * s);
  }
  return -lap / (4.0 * c.lambda);
}

// |K - (K_e + tau^2 + (kappa - 4 tau^2) nu^2)|
inline double gauss_equation_residual(const Immersion& imm, double u, double v,
                                      double step = 1e-3,
                                      const GeometryOptions& opt = {}) {
  PointGeometry pg = point_geometry(imm, u, v, opt);
  require_isothermal(pg);
  double K = gauss_curvature(imm, u, v, step, 4, opt);
  const SpaceParams& sp = imm.chart().params();
  double rhs = pg.Ke + sp.tau * sp.tau + sp.kappa4t2() * pg.nu * pg.nu;
  return std::abs(K - rhs);
}

}  // namespace ektau
