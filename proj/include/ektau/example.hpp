#pragma once

#include "ektau/curve.hpp"
#include "ektau/gallery.hpp"

// The worked configuration in H^2 x R: the totally geodesic vertical plane
//   psi(x, y) = (cosh x, 0, sinh x, y),
// the rotational CMC 1/sqrt(2) sphere phi, and their intersection curve
//   gamma(s) = (cosh r(s), 0, sinh r(s) sin t, h(s)),  t = pi/2 or 3 pi/2.
// The plane is minimal with |Q^AR| = 1/4; the sphere has Q^AR = 0; the two
// meet at constant angle <N_psi, N_phi> = 0, yet gamma is not an AR-line of
// curvature of the plane.

namespace ektau::gallery {

struct ExampleObjects {
  ImmersionPtr plane;             // psi, conformal (x, y)
  ImmersionPtr sphere;            // phi in its printed (u, v) coordinates
  ImmersionPtr sphere_conformal;  // equator-anchored conformal gauge
  double t = M_PI / 2;            // selects the branch of the curve
  ParamCurvePtr curve_on_plane;   // s -> (x, y) = (sin(t) r(s), h(s))
  ParamCurvePtr curve_on_sphere;  // s -> (u, v) = (s, t)
};

inline ExampleObjects example_objects(double t = M_PI / 2) {
  double st = std::sin(t);
  if (std::abs(std::abs(st) - 1.0) > 1e-12)
    throw parameter_error("example_objects: t must be pi/2 or 3 pi/2");
  ExampleObjects ex;
  ex.t = t;
  ex.plane = vertical_plane_h2xr();
  ex.sphere = example_sphere_printed();
  ex.sphere_conformal = example_sphere_conformal();
  ex.curve_on_plane = make_curve([st](auto s) {
    using T = std::decay_t<decltype(s)>;
    T r = example_sphere_r(s);
    T h = example_sphere_h(s);
    return Vec<T, 2>{st * r, h};
  });
  ex.curve_on_sphere = make_curve([t](auto s) {
    using T = std::decay_t<decltype(s)>;
    return Vec<T, 2>{s, T(t)};
  });
  return ex;
}

// The boundary of the disk cut out of the plane by the sphere, as a closed
// two-arc chain.  Each branch is unit-speed in w through s = sin(w/2), which
// stays regular across the junctions on the axis where ds/dr degenerates.
inline ParamCurvePtr example_disk_branch(double sign) {
  return make_curve([sign](auto w) {
    using T = std::decay_t<decltype(w)>;
    T s = sin(0.5 * w);
    T r = 2.0 * asinh(cos(0.5 * w));
    T h = example_sphere_h(s);
    return Vec<T, 2>{sign * r, h};
  });
}

}  // namespace ektau::gallery
