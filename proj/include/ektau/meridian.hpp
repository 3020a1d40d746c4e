#pragma once

#include <array>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "ektau/arpair.hpp"
#include "ektau/gallery.hpp"
#include "ektau/taylor.hpp"

// Rotationally and parabolically invariant CMC surfaces in M^2(kappa) x R,
// generated from the profile system
//
//   drho/ds = cos(psi),  dh/ds = sin(psi),  dpsi/ds = 2H - cg(rho) sin(psi)
//
// (cg the geodesic curvature of the orbit through rho), reparametrized by
// the conformal parameter sigma with ds/dsigma = f(rho), f the orbit length
// factor.  In sigma the right-hand side is polynomial in (sn, cs, sin psi,
// cos psi), hence regular through the axis, and (sigma, v) are isothermal
// coordinates of the generated surface.  The only correctness anchors are
// the self-checks: measured mean curvature == H and, for the families that
// claim it, a vanishing Abresch-Rosenberg coefficient.

namespace ektau::gallery {

enum class MeridianFamily { Sphere, DiskType, Catenoidal, Parabolic, Slice, Cylinder };

inline const char* to_string(MeridianFamily f) {
  switch (f) {
    case MeridianFamily::Sphere: return "sphere";
    case MeridianFamily::DiskType: return "disk-type";
    case MeridianFamily::Catenoidal: return "catenoidal";
    case MeridianFamily::Parabolic: return "parabolic";
    case MeridianFamily::Slice: return "slice";
    default: return "cylinder";
  }
}

struct MeridianSample {
  double s, rho, h, H_measured, qar_abs;
};

struct MeridianProfile {
  MeridianFamily family = MeridianFamily::Sphere;
  SpaceParams params;
  double H = 0;
  bool experimental = false;  // parabolic family: reconstruction
  std::vector<MeridianSample> samples;
  double closure_residual = std::numeric_limits<double>::quiet_NaN();
  double max_qar = 0;      // self-check: max |Q^AR| over the usable range
  double h_error = 0;      // self-check: max |H_measured - H|
  bool somewhere_negative_K = false;
};

// state layout: (rho-or-w, h, psi, s)
using ProfilePath = TaylorPath<4>;
using ProfileState = ProfilePath::State;

namespace detail {

inline ProfilePath::Rhs sigma_rhs_polar(double kappa, double H) {
  return [kappa, H](const std::array<Series, 4>& y) {
    Series sn, cs;
    if (kappa > 0) {
      double rk = std::sqrt(kappa);
      sincos(rk * y[0], sn, cs);
      sn = (1.0 / rk) * sn;
    } else if (kappa < 0) {
      double rk = std::sqrt(-kappa);
      sinhcosh(rk * y[0], sn, cs);
      sn = (1.0 / rk) * sn;
    } else {
      sn = y[0];
      cs = Series::constant(1.0);
    }
    Series sp, cp;
    sincos(y[2], sp, cp);
    // sigma-parametrized: ds/dsigma = sn, and 2H sn - cs sin(psi) stays
    // polynomial through the axis
    return std::array<Series, 4>{sn * cp, sn * sp, 2.0 * H * sn - cs * sp, sn};
  };
}

inline ProfilePath::Rhs sigma_rhs_halfplane(double H) {
  return [H](const std::array<Series, 4>& y) {
    Series f = exp(-y[0]);  // orbit length factor, Y = e^w in the half-plane
    Series sp, cp;
    sincos(y[2], sp, cp);
    return std::array<Series, 4>{f * cp, f * sp, f * (2.0 * H) + f * sp, f};
  };
}

// golden-section minimizer for shoots whose residual touches zero
template <class F>
double minimize_scalar(F f, double a, double b, double tol = 1e-7) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// extend the path in direction dir until rho crosses rho_cap (the conformal
// coordinate of an unbounded end blows up at finite sigma, so open families
// must be range-limited by geometry, not by a fixed span)
template <class Measure>
double march_to_cap(ProfilePath& path, double from, double dir, Measure m,
                    double cap, double tmax) {
  double t = from;
  while (std::abs(t - from) < tmax) {
    double next = t + dir * 0.25;
    path.extend_to(next);
    auto st = path.state_at(next);
    if (!std::isfinite(st[0]) || !std::isfinite(st[2]))
      return t;  // should not happen with a sane cap; stay on the safe side
    if (m(st) >= cap) {
      double a = t, b = next;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (a + b);
        if (m(path.state_at(mid)) >= cap) b = mid;
        else a = mid;
      }
      return a;
    }
    t = next;
  }
  return t;
}

inline double march_to_rho_cap(ProfilePath& path, double from, double dir,
                               double rho_cap, double tmax) {
  return march_to_cap(path, from, dir,
                      [](const ProfileState& y) { return y[0]; }, rho_cap, tmax);
}

// locate a zero of g(state(sigma)) by scan plus bisection
template <class G>
std::optional<double> find_event(const ProfilePath& path, double from, double to,
                                 double scan, G g) {
  double prev = g(path.state_at(from));
  double t = from;
  double dir = (to > from) ? 1.0 : -1.0;
  while ((to - t) * dir > 0) {
    double next = std::min(std::abs(to - t), scan) * dir + t;
    double val = g(path.state_at(next));
    if (prev == 0.0) return t;
    if (prev * val < 0) {
      double a = t, b = next;
      for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double gm = g(path.state_at(m));
        if (prev * gm <= 0) b = m;
        else a = m;
        if (std::abs(b - a) < 1e-14) break;
      }
      return 0.5 * (a + b);
    }
    prev = val;
    t = next;
  }
  return std::nullopt;
}

}  // namespace detail

// Immersion of a profile path: revolution in the polar chart, or parabolic
// translation through the half-plane model in the hyperboloid chart.
class ProfileImmersion final : public Immersion {
 public:
  enum class Mode { PolarRevolution, HalfplaneTranslation };

  ProfileImmersion(AmbientChart chart, std::shared_ptr<const ProfilePath> path,
                   Mode mode, double sigma_offset, double orbit_sign)
      : Immersion(std::move(chart)), path_(std::move(path)), mode_(mode),
        offset_(sigma_offset), sign_(orbit_sign) {}

  Jet2 jet(double u, double v) const override {
    return jet_of_map([this](auto a, auto b) { return map_t(a, b); }, u, v);
  }

  Vec4 position(double u, double v) const override { return map_t<double>(u, v); }

 private:
  template <class T>
  Vec<T, 4> map_t(const T& u, const T& v) const {
    T sig = u + offset_;
    T a = path_->eval(0, sig);
    T h = path_->eval(1, sig);
    if (mode_ == Mode::PolarRevolution) return Vec<T, 4>{a, sign_ * v, h, T(0)};
    return halfplane_point(sign_ * v, exp(a), h);
  }

  std::shared_ptr<const ProfilePath> path_;
  Mode mode_;
  double offset_;
  double sign_;
};

struct RotationalSurface {
  MeridianProfile profile;
  ImmersionPtr immersion;          // conformal (sigma, v) coordinates
  double sigma_min = 0, sigma_max = 0;  // usable immersion range
};

struct MeridianOptions {
  int sample_count = 201;       // meridian CSV rows
  double span = 2.0;            // sigma half-range for the open families
  double self_check_tol = 1e-6; // H and Q^AR gate
  double neck_min = 0.02, neck_max = 3.0;  // catenoid shooting bracket
};

namespace detail {

struct BuiltPath {
  std::shared_ptr<ProfilePath> path;
  double sig_lo = 0, sig_hi = 0;
};

inline ImmersionPtr profile_immersion(const SpaceParams& sp,
                                      std::shared_ptr<const ProfilePath> path,
                                      ProfileImmersion::Mode mode, double offset) {
  ChartKind kind = (mode == ProfileImmersion::Mode::PolarRevolution)
                       ? ChartKind::PolarProduct
                       : ChartKind::HyperboloidProduct;
  AmbientChart chart(sp, kind);
  auto probe = std::make_shared<ProfileImmersion>(chart, path, mode, offset, 1.0);
  // fix the orbit direction so the measured mean curvature is positive
  PointGeometry pg = point_geometry(*probe, 0.0, 0.0);
  if (pg.H >= 0) return probe;
  return std::make_shared<ProfileImmersion>(chart, path, mode, offset, -1.0);
}

// pole expansion of the axis-touching families, one analytic step of size s0
inline ProfileState pole_start(double kappa, double H, double s0) {
  double rho = s0 - H * H * s0 * s0 * s0 / 6.0;
  double h = 0.5 * H * s0 * s0 + (kappa * H / 48.0 - H * H * H / 24.0) * s0 * s0 * s0 * s0;
  double psi = H * s0 + kappa * H * s0 * s0 * s0 / 12.0;
  return ProfileState{rho, h, psi, s0};
}

}  // namespace detail

// Generator for the invariant CMC families.  Throws parameter_error for an
// inadmissible (kappa, H, family) request and numeric_error when the
// generated surface fails its own H / Q^AR self-checks.
inline RotationalSurface rotational_cmc(const SpaceParams& sp, double H,
                                        MeridianFamily family,
                                        const MeridianOptions& opt = {}) {
  if (sp.tau != 0) throw unsupported_error("rotational_cmc: requires tau = 0");
  const double kappa = sp.kappa;

  RotationalSurface out;
  out.profile.family = family;
  out.profile.params = sp;
  out.profile.H = H;

  std::shared_ptr<ProfilePath> path;
  ProfileImmersion::Mode mode = ProfileImmersion::Mode::PolarRevolution;
  double sig_lo = 0, sig_hi = 0, offset = 0;

  switch (family) {
    case MeridianFamily::Sphere: {
      if (!(4 * H * H + kappa > 1e-12))
        throw parameter_error("rotational_cmc: sphere requires 4H^2 + kappa > 0");
      if (H <= 0) throw parameter_error("rotational_cmc: sphere requires H > 0");
      path = std::make_shared<ProfilePath>(detail::sigma_rhs_polar(kappa, H),
                                           detail::pole_start(kappa, H, 1e-3), 0.05);
      // march past the equator and down to the second pole; in sigma the
      // axis is reached only asymptotically, so stop once the distance to
      // the axis has bottomed out
      double sig_end = 0;
      double prev_min = 1e30;
      double global_min = 1e30;
      for (double t = 1.0; t < 150.0; t += 1.0) {
        path->extend_to(t);
        double local_min = 1e30;
        bool past_eq = path->state_at(t)[2] > M_PI / 2;
        for (double x = t - 1.0; x <= t; x += 0.005)
          if (path->state_at(x)[2] > M_PI / 2)
            local_min = std::min(local_min, path->state_at(x)[0]);
        if (past_eq) {
          global_min = std::min(global_min, local_min);
          if (local_min > prev_min || global_min < 1e-12) {
            sig_end = t;
            break;
          }
          prev_min = local_min;
        }
      }
      if (sig_end == 0) throw numeric_error("rotational_cmc: sphere profile failed to close");
      auto eq = detail::find_event(*path, 0, sig_end, 0.05,
                                   [](const ProfileState& y) { return y[2] - M_PI / 2; });
      if (!eq) throw numeric_error("rotational_cmc: no equator event");
      out.profile.closure_residual = global_min;
      offset = *eq;  // sigma = 0 at the equator
      // usable conformal range: keep clear of both poles (rho >= 0.02)
      auto lo = detail::find_event(*path, *eq, 0.0, 0.02,
                                   [](const ProfileState& y) { return y[0] - 0.02; });
      auto hi = detail::find_event(*path, *eq, sig_end, 0.02,
                                   [](const ProfileState& y) { return y[0] - 0.02; });
      sig_lo = (lo ? *lo : 0.0) - *eq;
      sig_hi = (hi ? *hi : sig_end) - *eq;
      break;
    }
    case MeridianFamily::DiskType: {
      if (!(kappa < 0) || !(4 * H * H + kappa < -1e-12) || H <= 0)
        throw parameter_error("rotational_cmc: disk-type requires kappa < 0, 0 < H < sqrt(-kappa)/2");
      path = std::make_shared<ProfilePath>(detail::sigma_rhs_polar(kappa, H),
                                           detail::pole_start(kappa, H, 1e-3), 0.05);
      double cap = detail::march_to_rho_cap(*path, 0.0, +1.0, 3.0, 80.0);
      auto anchor = detail::find_event(*path, 0.0, cap, 0.05,
                                       [](const ProfileState& y) { return y[0] - 1.0; });
      offset = anchor ? *anchor : 0.5 * cap;
      sig_lo = -std::min(offset - 0.02, opt.span);
      sig_hi = std::min(opt.span, cap - offset - 0.05);
      break;
    }
    case MeridianFamily::Catenoidal: {
      if (!(kappa < 0) || !(4 * H * H + kappa < -1e-12) || H <= 0)
        throw parameter_error("rotational_cmc: catenoidal requires kappa < 0, 0 < H < sqrt(-kappa)/2");
      // shoot on the neck radius: zero the AR coefficient measured at the neck
      auto qar_at_neck = [&](double rho0) {
        auto p = std::make_shared<ProfilePath>(
            detail::sigma_rhs_polar(kappa, H),
            ProfileState{rho0, 0.0, M_PI / 2, 0.0}, 0.05);
        p->extend_to(0.3);
        p->extend_to(-0.3);
        auto imm = detail::profile_immersion(sp, p, ProfileImmersion::Mode::PolarRevolution, 0.0);
        return ar_differential(*imm, 0.0, 0.0).real();
      };
      double a = opt.neck_min, b = a;
      double fa = qar_at_neck(a), fb = fa;
      bool bracketed = false;
      for (double x = opt.neck_min; x <= opt.neck_max; x += 0.1) {
        double fx = qar_at_neck(x);
        if (fa * fx < 0) {
          b = x;
          fb = fx;
          bracketed = true;
          break;
        }
        a = x;
        fa = fx;
      }
      if (!bracketed)
        throw numeric_error("rotational_cmc: no AR catenoid neck in the bracket");
      for (int it = 0; it < 100; ++it) {
        double m = 0.5 * (a + b);
        double fm = qar_at_neck(m);
        if (fa * fm <= 0) {
          b = m;
          fb = fm;
        } else {
          a = m;
          fa = fm;
        }
        if (b - a < 1e-13) break;
      }
      (void)fb;
      double neck = 0.5 * (a + b);
      path = std::make_shared<ProfilePath>(detail::sigma_rhs_polar(kappa, H),
                                           ProfileState{neck, 0.0, M_PI / 2, 0.0}, 0.05);
      double cap_hi = detail::march_to_rho_cap(*path, 0.0, +1.0, 3.0, 80.0);
      double cap_lo = detail::march_to_rho_cap(*path, 0.0, -1.0, 3.0, 80.0);
      sig_hi = std::min(opt.span, cap_hi - 0.05);
      sig_lo = std::max(-opt.span, cap_lo + 0.05);
      break;
    }
    case MeridianFamily::Parabolic: {
      if (!(kappa == -1.0) || !(4 * H * H + kappa < -1e-12) || H <= 0)
        throw parameter_error("rotational_cmc: parabolic requires kappa = -1, 0 < H < 1/2");
      mode = ProfileImmersion::Mode::HalfplaneTranslation;
      // shoot on the apex angle; the equilibrium profile sin(psi) = -2H is
      // the expected root
      auto qar_at_apex = [&](double psi0) {
        auto p = std::make_shared<ProfilePath>(
            detail::sigma_rhs_halfplane(H), ProfileState{0.0, 0.0, psi0, 0.0}, 0.05);
        p->extend_to(0.3);
        p->extend_to(-0.3);
        auto imm = detail::profile_immersion(sp, p, mode, 0.0);
        return ar_differential(*imm, 0.0, 0.0).real();
      };
      // |Q^AR| touches zero quadratically in the apex angle, so the shoot
      // is a minimization rather than a sign change
      double center = -std::asin(2 * H);
      double psi0 = detail::minimize_scalar(
          [&](double x) { return std::abs(qar_at_apex(x)); }, center - 0.4,
          center + 0.4, 1e-8);
      path = std::make_shared<ProfilePath>(detail::sigma_rhs_halfplane(H),
                                           ProfileState{0.0, 0.0, psi0, 0.0}, 0.02);
      // the half-plane coordinate blows up at finite sigma as w -> -infinity
      auto depth = [](const ProfileState& y) { return -y[0]; };
      double cap_hi = detail::march_to_cap(*path, 0.0, +1.0, depth, 2.0, 40.0);
      double cap_lo = detail::march_to_cap(*path, 0.0, -1.0, depth, 2.0, 40.0);
      sig_hi = std::min(opt.span, cap_hi - 0.1);
      sig_lo = std::max(-opt.span, cap_lo + 0.1);
      out.profile.experimental = true;
      break;
    }
    default:
      throw parameter_error("rotational_cmc: slice/cylinder profiles are closed forms");
  }

  out.immersion = detail::profile_immersion(sp, path, mode, offset);
  out.sigma_min = sig_lo + 0.0;
  out.sigma_max = sig_hi - 0.0;

  // meridian samples at uniform arc length via the s-state, plus the
  // self-check columns measured on the immersion
  double s_lo = path->eval(3, offset + sig_lo), s_hi = path->eval(3, offset + sig_hi);
  int n = std::max(3, opt.sample_count);
  for (int i = 0; i < n; ++i) {
    double s = s_lo + (s_hi - s_lo) * i / (n - 1);
    auto hit = detail::find_event(*path, offset + sig_lo, offset + sig_hi, 0.05,
                                  [s](const ProfileState& y) { return y[3] - s; });
    double sig = hit ? *hit : offset + sig_lo;
    ProfileState y = path->state_at(sig);
    MeridianSample row;
    row.s = y[3];
    row.rho = y[0];
    row.h = y[1];
    PointGeometry pg = point_geometry(*out.immersion, sig - offset, 0.0);
    row.H_measured = pg.H;
    row.qar_abs = std::abs(ar_differential(pg, sp));
    out.profile.samples.push_back(row);
    out.profile.h_error = std::max(out.profile.h_error, std::abs(pg.H - H));
    SpaceParams spp = sp;
    double K = pg.Ke + spp.tau * spp.tau + spp.kappa4t2() * pg.nu * pg.nu;
    if (K < 0) out.profile.somewhere_negative_K = true;
    out.profile.max_qar = std::max(out.profile.max_qar, row.qar_abs);
  }

  if (out.profile.h_error > opt.self_check_tol) {
    std::ostringstream msg;
    msg << "rotational_cmc: mean-curvature self-check failed, max |H - target| = "
        << out.profile.h_error;
    throw numeric_error(msg.str());
  }
  if (out.profile.max_qar > opt.self_check_tol) {
    std::ostringstream msg;
    msg << "rotational_cmc: AR self-check failed, max |Q^AR| = " << out.profile.max_qar;
    throw numeric_error(msg.str());
  }
  return out;
}

}  // namespace ektau::gallery
