#pragma once

#include <cmath>
#include <memory>

#include "ektau/geometry.hpp"
#include "ektau/immersion.hpp"
#include "ektau/taylor.hpp"

// Closed-form reference surfaces.  Every surface here is written as a
// template over the scalar so jets are exact to machine precision.

namespace ektau::gallery {

// Upper half-plane model (X, Y > 0) of H^2 onto the unit hyperboloid.
template <class T>
Vec<T, 4> halfplane_point(const T& X, const T& Y, const T& h) {
  T s = X * X + Y * Y;
  T inv2Y = 0.5 / Y;
  return Vec<T, 4>{(s + 1.0) * inv2Y, (s - 1.0) * inv2Y, X / Y, h};
}

// Horizontal slice z = z0 of M^2(kappa) x R in the Cartan chart (conformal
// coordinates) or, through `slice_polar`, in geodesic polar coordinates.
inline ImmersionPtr slice(const SpaceParams& params, double z0) {
  if (params.tau != 0) throw unsupported_error("slice: requires tau = 0");
  AmbientChart chart(params, ChartKind::CartanEktau);
  return make_immersion(chart, [z0](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    return Vec<T, 4>{u, v, T(z0), T(0)};
  });
}

inline ImmersionPtr slice_polar(const SpaceParams& params, double z0) {
  if (params.tau != 0) throw unsupported_error("slice: requires tau = 0");
  AmbientChart chart(params, ChartKind::PolarProduct);
  return make_immersion(chart, [z0](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    return Vec<T, 4>{u, v, T(z0), T(0)};
  });
}

// Totally geodesic vertical plane in H^2 x R, in the coordinates of the
// worked example: psi(x,y) = (cosh x, 0, sinh x, y).
inline ImmersionPtr vertical_plane_h2xr() {
  AmbientChart chart(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  return make_immersion(chart, [](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    return Vec<T, 4>{cosh(u), T(0), sinh(u), v};
  });
}

// Vertical plane in Nil3 (or any E(kappa=0, tau)) through the fiber over the
// origin, making angle beta with the x-axis.
inline ImmersionPtr vertical_plane_nil3(const SpaceParams& params, double beta = 0) {
  if (params.kappa != 0) throw unsupported_error("vertical_plane_nil3: requires kappa = 0");
  AmbientChart chart(params, ChartKind::CartanEktau);
  double cb = std::cos(beta), sb = std::sin(beta);
  return make_immersion(chart, [cb, sb](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    return Vec<T, 4>{u * cb, u * sb, v, T(0)};
  });
}

// Vertical cylinder over the complete curve of constant geodesic curvature
// k_g >= 0 in H^2 (circle, horocycle or equidistant), in unit-speed
// coordinates: u is arc length along the base curve, v is height.
inline ImmersionPtr vertical_cylinder_h2xr(double kg) {
  if (kg < 0) throw parameter_error("vertical_cylinder_h2xr: k_g must be >= 0");
  AmbientChart chart(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  if (kg > 1.0) {
    double rho = std::atanh(1.0 / kg);  // coth(rho) = k_g
    double sr = std::sinh(rho), cr = std::cosh(rho);
    // clockwise parametrization puts the normal on the concave side, so the
    // measured mean curvature is +k_g/2
    return make_immersion(chart, [sr, cr](auto u, auto v) {
      using T = std::decay_t<decltype(u)>;
      T a = u * (-1.0 / sr);
      return Vec<T, 4>{T(cr), sr * cos(a), sr * sin(a), v};
    });
  }
  if (kg == 1.0) {
    // horocycle Y = 1 in the half-plane model, unit speed
    return make_immersion(chart, [](auto u, auto v) {
      using T = std::decay_t<decltype(u)>;
      return halfplane_point(u, T(1), v);
    });
  }
  // equidistant curve at distance d = atanh(k_g) from a geodesic
  double d = std::atanh(kg);
  double cd = std::cosh(d), sd = std::sinh(d);
  return make_immersion(chart, [cd, sd](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    T a = u * (-1.0 / cd);
    return Vec<T, 4>{cosh(a) * cd, T(sd), sinh(a) * cd, v};
  });
}

// Vertical cylinder over the base circle of radius R in E(0, tau), in flat
// unit-speed coordinates: the fiber shear tau R u straightens the metric to
// du^2 + dv^2.  A flat CMC surface with H = 1/(2R), nu = 0 and nonvanishing
// Abresch-Rosenberg coefficient.
inline ImmersionPtr nil_cylinder(const SpaceParams& params, double R) {
  if (params.kappa != 0 || params.tau == 0)
    throw unsupported_error("nil_cylinder: requires kappa = 0, tau != 0");
  if (R <= 0) throw parameter_error("nil_cylinder: R must be positive");
  double tau = params.tau;
  AmbientChart chart(params, ChartKind::CartanEktau);
  return make_immersion(chart, [R, tau](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    T a = u * (-1.0 / R);
    return Vec<T, 4>{R * cos(a), R * sin(a), v - (tau * R) * u, T(0)};
  });
}

// Minimal plane z = 0 in E(0, tau) in conformal polar coordinates
//   r(s) = -1/(tau sinh s),  s < 0,
// a tilted (nu != 0) constant mean curvature surface used as the negative
// control for Codazzi tests on the ordinary second fundamental form.
inline ImmersionPtr nil_umbrella(const SpaceParams& params) {
  if (params.kappa != 0 || params.tau == 0)
    throw unsupported_error("nil_umbrella: requires kappa = 0, tau != 0");
  double tau = params.tau;
  AmbientChart chart(params, ChartKind::CartanEktau);
  return make_immersion(chart, [tau](auto s, auto phi) {
    using T = std::decay_t<decltype(s)>;
    T r = T(-1.0) / (tau * sinh(s));
    return Vec<T, 4>{r * cos(phi), r * sin(phi), T(0), T(0)};
  });
}

// The rotational CMC 1/sqrt(2) sphere of the worked example, in its printed
// coordinates (u in (-1,1), v the rotation angle):
//   phi(u,v) = (cosh r(u), sinh r(u) cos v, sinh r(u) sin v, h(u)),
//   r(u) = 2 asinh(sqrt(1-u^2)),  h(u) = (4/sqrt 2) asin(u/sqrt 2).
// These coordinates are not conformal; `example_sphere_conformal` below
// reparametrizes u = u(sigma) in closed form so that (sigma, v) is.
template <class T>
T example_sphere_r(const T& u) {
  return 2.0 * asinh(sqrt(1.0 - u * u));
}
template <class T>
T example_sphere_h(const T& u) {
  return (4.0 / std::sqrt(2.0)) * asin(u * (1.0 / std::sqrt(2.0)));
}

inline ImmersionPtr example_sphere_printed() {
  AmbientChart chart(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  return make_immersion(chart, [](auto u, auto v) {
    using T = std::decay_t<decltype(u)>;
    T r = example_sphere_r(u), h = example_sphere_h(u);
    return Vec<T, 4>{cosh(r), sinh(r) * cos(v), sinh(r) * sin(v), h};
  });
}

// u(sigma) = sqrt(2) sinh(sigma) / sqrt(cosh 2 sigma) solves the
// conformality condition for the printed sphere coordinates.
template <class T>
T example_sphere_u(const T& sigma) {
  return std::sqrt(2.0) * sinh(sigma) / sqrt(cosh(2.0 * sigma));
}

inline ImmersionPtr example_sphere_conformal() {
  AmbientChart chart(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  return make_immersion(chart, [](auto s, auto v) {
    using T = std::decay_t<decltype(s)>;
    T u = example_sphere_u(s);
    T r = example_sphere_r(u), h = example_sphere_h(u);
    return Vec<T, 4>{cosh(r), sinh(r) * cos(v), sinh(r) * sin(v), h};
  });
}

// Non-CMC control surface: a horocycle-invariant graph in H^2 x R whose
// profile is modulated, built directly in conformal coordinates.  The
// half-plane coordinate is Y = exp(w(s)) with w = eps sin(s); the horocycle
// orbit direction has squared length exp(-2w), so integrating
// h' = sqrt(exp(-2w) - w'^2) makes E = G exactly.
class BumpGraphH2xR final : public Immersion {
 public:
  explicit BumpGraphH2xR(double eps)
      : Immersion(AmbientChart(SpaceParams(-1, 0), ChartKind::HyperboloidProduct)),
        eps_(eps),
        path_(
            [eps](const std::array<Series, 2>& y) {
              Series w = eps * sin(y[0]);
              Series wp = eps * cos(y[0]);
              return std::array<Series, 2>{Series::constant(1.0),
                                           sqrt(exp(-2.0 * w) - wp * wp)};
            },
            {0.0, 0.0}, 0.05) {
    path_.extend_to(8.0);
    path_.extend_to(-8.0);
  }

  Jet2 jet(double u, double v) const override {
    return jet_of_map([this](auto s, auto x) { return map_t(s, x); }, u, v);
  }
  Vec4 position(double u, double v) const override { return map_t<double>(u, v); }

 private:
  template <class T>
  Vec<T, 4> map_t(const T& s, const T& x) const {
    T w = eps_ * sin(s);
    T h = path_.eval(1, s);
    return halfplane_point(x, exp(w), h);
  }

  double eps_;
  TaylorPath<2> path_;
};

inline ImmersionPtr bump_graph_h2xr(double eps) {
  return std::make_shared<BumpGraphH2xR>(eps);
}

}  // namespace ektau::gallery
