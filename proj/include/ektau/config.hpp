#pragma once

#include <json.hpp>

#include "ektau/example.hpp"
#include "ektau/intersect.hpp"
#include "ektau/meridian.hpp"

// Structured-text (JSON) specifications: gallery surfaces by name with
// their parameters, inline curves as polynomial/trigonometric coefficient
// tables, and intersection jobs pairing the two.

namespace ektau {

using nlohmann::json;

// u(s) = sum a_k s^k + sum amp cos(w s) + sum amp sin(w s), per component
class PolyTrigCurve final : public ParamCurve {
 public:
  struct Component {
    std::vector<double> poly;
    std::vector<std::pair<double, double>> cos_terms;  // (frequency, amplitude)
    std::vector<std::pair<double, double>> sin_terms;
  };

  PolyTrigCurve(Component u, Component v) : u_(std::move(u)), v_(std::move(v)) {}

  void eval(double s, double& u, double& v, double& du, double& dv) const override {
    eval_component(u_, s, u, du);
    eval_component(v_, s, v, dv);
  }

  static Component parse(const json& j) {
    Component c;
    if (j.contains("poly")) c.poly = j["poly"].get<std::vector<double>>();
    if (j.contains("cos"))
      for (const auto& t : j["cos"]) c.cos_terms.emplace_back(t[0], t[1]);
    if (j.contains("sin"))
      for (const auto& t : j["sin"]) c.sin_terms.emplace_back(t[0], t[1]);
    return c;
  }

 private:
  static void eval_component(const Component& c, double s, double& val, double& der) {
    val = 0;
    der = 0;
    double p = 1;
    for (size_t k = 0; k < c.poly.size(); ++k) {
      val += c.poly[k] * p;
      if (k + 1 < c.poly.size()) der += (k + 1) * c.poly[k + 1] * p;
      p *= s;
    }
    for (auto [w, a] : c.cos_terms) {
      val += a * std::cos(w * s);
      der += -a * w * std::sin(w * s);
    }
    for (auto [w, a] : c.sin_terms) {
      val += a * std::sin(w * s);
      der += a * w * std::cos(w * s);
    }
  }

  Component u_, v_;
};

inline ParamCurvePtr parse_curve_spec(const json& j) {
  if (!j.contains("u") || !j.contains("v"))
    throw parameter_error("curve spec: needs 'u' and 'v' coefficient tables");
  return std::make_shared<PolyTrigCurve>(PolyTrigCurve::parse(j["u"]),
                                         PolyTrigCurve::parse(j["v"]));
}

struct SurfaceSpec {
  ImmersionPtr immersion;
  // default verification window in parameter space
  double u0 = -0.5, u1 = 0.5, v0 = -0.5, v1 = 0.5;
  std::string name;
};

// Named gallery surfaces.  Parameters: kappa, tau, H, kg, R, eps, z0, beta
// as applicable.
inline SurfaceSpec make_gallery_surface(const std::string& name, const json& p) {
  auto get = [&](const char* key, double fallback) {
    return p.contains(key) ? p[key].get<double>() : fallback;
  };
  SurfaceSpec s;
  s.name = name;
  if (name == "slice") {
    SpaceParams sp(get("kappa", -1), 0);
    std::string chart = p.contains("chart") ? p["chart"].get<std::string>() : "cartan";
    s.immersion = (chart == "polar") ? gallery::slice_polar(sp, get("z0", 0.0))
                                     : gallery::slice(sp, get("z0", 0.0));
    if (chart == "polar") {
      s.u0 = 0.4; s.u1 = 1.2; s.v0 = 0.0; s.v1 = 0.8;
    }
  } else if (name == "plane") {
    s.immersion = gallery::vertical_plane_h2xr();
    s.u0 = -0.8; s.u1 = 0.8; s.v0 = -0.8; s.v1 = 0.8;
  } else if (name == "nil-plane") {
    SpaceParams sp(0, get("tau", 0.5));
    s.immersion = gallery::vertical_plane_nil3(sp, get("beta", 0.0));
    s.u0 = -0.8; s.u1 = 0.8; s.v0 = -0.8; s.v1 = 0.8;
  } else if (name == "cyl") {
    s.immersion = gallery::vertical_cylinder_h2xr(get("kg", 1.0));
    s.u0 = -0.8; s.u1 = 0.8; s.v0 = -0.8; s.v1 = 0.8;
  } else if (name == "nil-cylinder") {
    SpaceParams sp(0, get("tau", 0.5));
    s.immersion = gallery::nil_cylinder(sp, get("R", 1.0));
    s.u0 = -0.8; s.u1 = 0.8; s.v0 = -0.8; s.v1 = 0.8;
  } else if (name == "umbrella") {
    SpaceParams sp(0, get("tau", 0.5));
    s.immersion = gallery::nil_umbrella(sp);
    s.u0 = -1.8; s.u1 = -0.6; s.v0 = 0.0; s.v1 = 1.2;
  } else if (name == "example-sphere") {
    s.immersion = gallery::example_sphere_conformal();
    s.u0 = -0.9; s.u1 = 0.9; s.v0 = 0.0; s.v1 = 1.2;
  } else if (name == "rotsphere" || name == "catenoid" || name == "disktype" ||
             name == "parabolic") {
    SpaceParams sp(get("kappa", -1), 0);
    gallery::MeridianFamily fam = gallery::MeridianFamily::Sphere;
    if (name == "catenoid") fam = gallery::MeridianFamily::Catenoidal;
    if (name == "disktype") fam = gallery::MeridianFamily::DiskType;
    if (name == "parabolic") fam = gallery::MeridianFamily::Parabolic;
    gallery::RotationalSurface rs =
        gallery::rotational_cmc(sp, get("H", 0.5), fam);
    s.immersion = rs.immersion;
    double lo = rs.sigma_min + 0.05, hi = rs.sigma_max - 0.05;
    s.u0 = lo; s.u1 = hi;
    s.v0 = 0.0;
    s.v1 = (fam == gallery::MeridianFamily::Parabolic) ? 1.0 : 1.2;
  } else if (name == "bump") {
    s.immersion = gallery::bump_graph_h2xr(get("eps", 0.1));
    s.u0 = -1.0; s.u1 = 1.0; s.v0 = -0.5; s.v1 = 0.5;
  } else {
    throw parameter_error("unknown gallery surface: " + name);
  }
  return s;
}

inline SurfaceSpec parse_surface_spec(const json& j) {
  if (j.contains("gallery")) return make_gallery_surface(j["gallery"], j);
  throw parameter_error("surface spec: expected a 'gallery' name");
}

struct IntersectionSpec {
  IntersectionData data;
};

inline IntersectionData parse_intersection_spec(const json& j) {
  if (j.contains("case")) {
    const std::string c = j["case"];
    int n = j.contains("samples") ? j["samples"].get<int>() : 41;
    if (c == "example") {
      gallery::ExampleObjects ex = gallery::example_objects();
      double s0 = -0.9, s1 = 0.9;
      if (j.contains("range")) {
        s0 = j["range"][0];
        s1 = j["range"][1];
      }
      return make_intersection(curve_on_surface(ex.plane, ex.curve_on_plane, s0, s1, n),
                               curve_on_surface(ex.sphere, ex.curve_on_sphere, s0, s1, n));
    }
    if (c == "nil-fiber") {
      double beta = j.contains("beta") ? j["beta"].get<double>() : 1.0;
      SpaceParams nil(0, j.contains("tau") ? j["tau"].get<double>() : 0.5);
      auto p1 = gallery::vertical_plane_nil3(nil, 0.0);
      auto p2 = gallery::vertical_plane_nil3(nil, beta);
      auto fiber = make_curve([](auto s) {
        using T = std::decay_t<decltype(s)>;
        return Vec<T, 2>{T(0), s};
      });
      return make_intersection(curve_on_surface(p1, fiber, -0.8, 0.8, n),
                               curve_on_surface(p2, fiber, -0.8, 0.8, n));
    }
    if (c == "mirrored-caps") {
      double sigma0 = j.contains("sigma0") ? j["sigma0"].get<double>() : 0.6;
      auto sphere = gallery::example_sphere_conformal();
      double h0 = sphere->position(sigma0, 0.0)[3];
      AmbientChart chart(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
      auto mirrored = make_immersion(chart, [h0](auto s, auto v) {
        using T = std::decay_t<decltype(s)>;
        T u = gallery::example_sphere_u(s);
        T r = gallery::example_sphere_r(u), h = gallery::example_sphere_h(u);
        return Vec<T, 4>{cosh(r), sinh(r) * cos(-v), sinh(r) * sin(-v), 2.0 * h0 - h};
      });
      auto c1 = make_curve([sigma0](auto s) {
        using T = std::decay_t<decltype(s)>;
        return Vec<T, 2>{T(sigma0), s};
      });
      auto c2 = make_curve([sigma0](auto s) {
        using T = std::decay_t<decltype(s)>;
        return Vec<T, 2>{T(sigma0), -s};
      });
      return make_intersection(curve_on_surface(sphere, c1, 0.0, 2.0, n),
                               curve_on_surface(mirrored, c2, 0.0, 2.0, n));
    }
    if (c == "tangent-planes") {
      SpaceParams nil(0, j.contains("tau") ? j["tau"].get<double>() : 0.5);
      double beta = j.contains("beta") ? j["beta"].get<double>() : 0.7;
      auto p1 = gallery::vertical_plane_nil3(nil, beta);
      double cb = std::cos(beta), sb = std::sin(beta);
      AmbientChart chart(nil, ChartKind::CartanEktau);
      auto p2 = make_immersion(chart, [cb, sb](auto u, auto v) {
        using T = std::decay_t<decltype(u)>;
        return Vec<T, 4>{u * cb, u * sb, v + 0.3, T(0)};
      });
      auto f1 = make_curve([](auto s) {
        using T = std::decay_t<decltype(s)>;
        return Vec<T, 2>{T(0), s};
      });
      auto f2 = make_curve([](auto s) {
        using T = std::decay_t<decltype(s)>;
        return Vec<T, 2>{T(0), s - 0.3};
      });
      return make_intersection(curve_on_surface(p1, f1, -0.8, 0.8, n),
                               curve_on_surface(p2, f2, -0.8, 0.8, n));
    }
    throw parameter_error("unknown intersection case: " + c);
  }
  // fully inline specification
  SurfaceSpec s1 = parse_surface_spec(j.at("surface1"));
  SurfaceSpec s2 = parse_surface_spec(j.at("surface2"));
  ParamCurvePtr c1 = parse_curve_spec(j.at("curve1"));
  ParamCurvePtr c2 = parse_curve_spec(j.at("curve2"));
  int n = j.contains("samples") ? j["samples"].get<int>() : 41;
  double s0 = j.at("range")[0], s1r = j.at("range")[1];
  double tol = j.contains("trace_tol") ? j["trace_tol"].get<double>() : 1e-8;
  return make_intersection(curve_on_surface(s1.immersion, c1, s0, s1r, n),
                           curve_on_surface(s2.immersion, c2, s0, s1r, n), tol);
}

}  // namespace ektau
