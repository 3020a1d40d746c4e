#pragma once

#include <cmath>
#include <functional>

#include "ektau/dual.hpp"
#include "ektau/space.hpp"
#include "ektau/vec.hpp"

// Coordinate models of E(kappa, tau).  Points and tangent vectors are kept
// as 4-component arrays; the 3-dimensional charts use the leading three.
//
//  CartanEktau        ds^2 = L^2(dx^2+dy^2) + (tau L (y dx - x dy) + dz)^2,
//                     L = (1 + kappa (x^2+y^2)/4)^-1, covers every (kappa,tau)
//  PolarProduct       ds^2 = drho^2 + sn_k(rho)^2 dphi^2 + dz^2,  tau = 0
//  HyperboloidProduct H^2 x R inside R^4 with the bilinear form
//                     diag(-1,1,1,1); constraint -x0^2+x1^2+x2^2 = -1, x0 > 0
//
// Correctness of all three is certified downstream by the Killing identity
// for the vertical field rather than by the coordinate formulas themselves.

namespace ektau {

using Vec4 = Vec<double, 4>;
using Mat4 = Mat<double, 4>;

template <class T>
T sn_kappa(double kappa, const T& rho) {
  if (kappa > 0) {
    double rk = std::sqrt(kappa);
    return sin(rho * rk) * (1.0 / rk);
  }
  if (kappa < 0) {
    double rk = std::sqrt(-kappa);
    return sinh(rho * rk) * (1.0 / rk);
  }
  return rho;
}

template <class T>
T cs_kappa(double kappa, const T& rho) {  // d/drho of sn_kappa
  if (kappa > 0) return cos(rho * std::sqrt(kappa));
  if (kappa < 0) return cosh(rho * std::sqrt(-kappa));
  return T(1);
}

struct Christoffels {
  double g[3][3][3] = {};  // g[k][i][j] = Gamma^k_ij
};

class AmbientChart {
 public:
  AmbientChart(SpaceParams params, ChartKind kind) : params_(params), kind_(kind) {
    if (kind_ == ChartKind::PolarProduct && params_.tau != 0.0)
      throw parameter_error("PolarProduct chart requires tau = 0");
    if (kind_ == ChartKind::HyperboloidProduct &&
        (params_.kappa != -1.0 || params_.tau != 0.0))
      throw parameter_error("HyperboloidProduct chart requires kappa = -1, tau = 0");
  }

  const SpaceParams& params() const { return params_; }
  ChartKind kind() const { return kind_; }
  int dim() const { return kind_ == ChartKind::HyperboloidProduct ? 4 : 3; }

  bool in_domain(const Vec4& p) const {
    switch (kind_) {
      case ChartKind::CartanEktau:
        return 1.0 + params_.kappa * (p[0] * p[0] + p[1] * p[1]) / 4.0 > 1e-9;
      case ChartKind::PolarProduct:
        if (p[0] <= 0.0) return false;
        if (params_.kappa > 0) return p[0] < M_PI / std::sqrt(params_.kappa);
        return true;
      default:
        return std::abs(-p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + 1.0) <= 1e-8 &&
               p[0] > 0.0;
    }
  }

  void require_domain(const Vec4& p) const {
    if (!in_domain(p)) throw domain_error("point outside chart domain");
  }

  template <class T>
  Mat<T, 4> metric_t(const Vec<T, 4>& p) const {
    Mat<T, 4> g;
    switch (kind_) {
      case ChartKind::CartanEktau: {
        const double kappa = params_.kappa, tau = params_.tau;
        T lam = 1.0 / (1.0 + kappa * (p[0] * p[0] + p[1] * p[1]) * 0.25);
        T l2 = lam * lam;
        // connection 1-form of the fibration: w = tau*lam*(y dx - x dy) + dz
        T wx = tau * (lam * p[1]);
        T wy = -tau * (lam * p[0]);
        g(0, 0) = l2 + wx * wx;
        g(1, 1) = l2 + wy * wy;
        g(0, 1) = g(1, 0) = wx * wy;
        g(0, 2) = g(2, 0) = wx;
        g(1, 2) = g(2, 1) = wy;
        g(2, 2) = T(1);
        g(3, 3) = T(1);
        break;
      }
      case ChartKind::PolarProduct: {
        T sn = sn_kappa(params_.kappa, p[0]);
        g(0, 0) = T(1);
        g(1, 1) = sn * sn;
        g(2, 2) = T(1);
        g(3, 3) = T(1);
        break;
      }
      default: {
        g(0, 0) = T(-1);
        g(1, 1) = T(1);
        g(2, 2) = T(1);
        g(3, 3) = T(1);
        break;
      }
    }
    return g;
  }

  Mat4 metric(const Vec4& p) const {
    require_domain(p);
    return metric_t<double>(p);
  }

  template <class T>
  T inner_t(const Vec<T, 4>& p, const Vec<T, 4>& x, const Vec<T, 4>& y) const {
    return form(metric_t(p), x, y, 4);
  }

  double inner(const Vec4& p, const Vec4& x, const Vec4& y) const {
    return inner_t<double>(p, x, y);
  }

  double norm(const Vec4& p, const Vec4& x) const { return std::sqrt(inner(p, x, x)); }

  template <class T>
  Vec<T, 4> vertical_t(const Vec<T, 4>&) const {
    Vec<T, 4> xi;
    if (kind_ == ChartKind::HyperboloidProduct) xi[3] = T(1);
    else xi[2] = T(1);
    return xi;
  }

  Vec4 vertical(const Vec4& p) const {
    require_domain(p);
    return vertical_t<double>(p);
  }

  // Metric cross product, oriented so the coordinate frame (respectively the
  // frame adapted to the Lorentz constraint) is positive.
  template <class T>
  Vec<T, 4> cross_t(const Vec<T, 4>& p, const Vec<T, 4>& x, const Vec<T, 4>& y) const {
    Vec<T, 4> w;
    if (kind_ != ChartKind::HyperboloidProduct) {
      Mat<T, 3> g;
      {
        Mat<T, 4> g4 = metric_t(p);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) g(i, j) = g4(i, j);
      }
      T vol = sqrt(det3(g));
      Vec<T, 3> c{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                  x[0] * y[1] - x[1] * y[0]};
      Mat<T, 3> gi = inverse3(g);
      for (int k = 0; k < 3; ++k) {
        T s{};
        for (int l = 0; l < 3; ++l) s += gi(k, l) * c[l];
        w[k] = vol * s;
      }
    } else {
      // w_a = det4(P, x, y, e_a) with P the Lorentz normal of the constraint;
      // raising the index with diag(-1,1,1,1) keeps w tangent automatically.
      Vec<T, 4> P{p[0], p[1], p[2], T(0)};
      for (int a = 0; a < 4; ++a) {
        Mat<T, 4> m;
        for (int r = 0; r < 4; ++r) {
          m(r, 0) = P[r];
          m(r, 1) = x[r];
          m(r, 2) = y[r];
          m(r, 3) = T(r == a ? 1 : 0);
        }
        w[a] = det4(m);
      }
      w[0] = -w[0];
    }
    return w;
  }

  Vec4 cross(const Vec4& p, const Vec4& x, const Vec4& y) const {
    require_domain(p);
    return cross_t<double>(p, x, y);
  }

  // Gamma^k_ij for the coordinate charts; the constrained chart has no
  // coordinate connection and uses the projection form of the derivative.
  Christoffels christoffels(const Vec4& p) const {
    if (kind_ == ChartKind::HyperboloidProduct)
      throw unsupported_error("christoffels: not a coordinate chart; use covariant_derivative");
    require_domain(p);
    // the fiber coordinate never enters the metric, so two dual slots cover
    // all nonzero partials
    Vec<D1, 4> pd{D1(p[0], 1, 0), D1(p[1], 0, 1), D1(p[2]), D1(p[3])};
    Mat<D1, 4> gd = metric_t(pd);
    double dg[3][3][3];  // dg[l][i][j] = d_l g_ij
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        dg[0][i][j] = gd(i, j).du;
        dg[1][i][j] = gd(i, j).dv;
        dg[2][i][j] = 0.0;
      }
    Mat<double, 3> g3, gi;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g3(i, j) = gd(i, j).v;
    gi = inverse3(g3);
    Christoffels c;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double s = 0;
          for (int l = 0; l < 3; ++l)
            s += gi(k, l) * 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
          c.g[k][i][j] = s;
        }
    return c;
  }

  // Covariant derivative of a vector field V along direction X at p, given
  // the directional derivative dV of V's components along X.
  Vec4 covariant_derivative(const Vec4& p, const Vec4& x, const Vec4& v,
                            const Vec4& dv) const {
    if (kind_ == ChartKind::HyperboloidProduct) {
      Vec4 P{p[0], p[1], p[2], 0.0};
      double s = -dv[0] * P[0] + dv[1] * P[1] + dv[2] * P[2];
      return dv + s * P;
    }
    Christoffels c = christoffels(p);
    Vec4 r = dv;
    for (int k = 0; k < 3; ++k) {
      double s = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += c.g[k][i][j] * x[i] * v[j];
      r[k] += s;
    }
    return r;
  }

  // Convenience form differentiating a coordinate field numerically.
  Vec4 covariant_derivative(const Vec4& p, const Vec4& x,
                            const std::function<Vec4(const Vec4&)>& field,
                            double step = 1e-6) const {
    Vec4 dv;
    Vec4 pp = p, pm = p;
    for (int i = 0; i < 4; ++i) {
      pp[i] += step * x[i];
      pm[i] -= step * x[i];
    }
    Vec4 fp = field(pp), fm = field(pm);
    for (int i = 0; i < 4; ++i) dv[i] = (fp[i] - fm[i]) / (2.0 * step);
    return covariant_derivative(p, x, field(p), dv);
  }

 private:
  template <class T>
  static T det4(const Mat<T, 4>& m) {
    T d{};
    for (int c = 0; c < 4; ++c) {
      Mat<T, 3> sub;
      for (int r = 1; r < 4; ++r) {
        int cc = 0;
        for (int j = 0; j < 4; ++j) {
          if (j == c) continue;
          sub(r - 1, cc++) = m(r, j);
        }
      }
      T term = m(0, c) * det3(sub);
      d += (c % 2 == 0) ? term : -term;
    }
    return d;
  }

  SpaceParams params_;
  ChartKind kind_;
};

// Isometry between the two models of H^2 x R, used to cross-validate them.
inline Vec4 polar_to_hyperboloid(const Vec4& p) {
  return Vec4{std::cosh(p[0]), std::sinh(p[0]) * std::cos(p[1]),
              std::sinh(p[0]) * std::sin(p[1]), p[2]};
}

}  // namespace ektau
