#pragma once

#include <cmath>

// Forward-mode dual numbers carrying two tangent directions at once
// (d/du and d/dv).  Nesting Dual2<Dual2<double>> yields exact second
// parameter derivatives of anything written as a template over the scalar.

namespace ektau {

template <class T>
struct Dual2 {
  T v{};
  T du{};
  T dv{};

  Dual2() = default;
  Dual2(T value) : v(value) {}
  Dual2(T value, T d_u, T d_v) : v(value), du(d_u), dv(d_v) {}

  Dual2& operator+=(const Dual2& o) { v += o.v; du += o.du; dv += o.dv; return *this; }
  Dual2& operator-=(const Dual2& o) { v -= o.v; du -= o.du; dv -= o.dv; return *this; }
  Dual2& operator*=(const Dual2& o) {
    du = du * o.v + v * o.du;
    dv = dv * o.v + v * o.dv;
    v = v * o.v;
    return *this;
  }
};

template <class T> Dual2<T> operator+(Dual2<T> a, const Dual2<T>& b) { return a += b; }
template <class T> Dual2<T> operator-(Dual2<T> a, const Dual2<T>& b) { return a -= b; }
template <class T> Dual2<T> operator-(const Dual2<T>& a) { return {-a.v, -a.du, -a.dv}; }

template <class T>
Dual2<T> operator*(const Dual2<T>& a, const Dual2<T>& b) {
  return {a.v * b.v, a.du * b.v + a.v * b.du, a.dv * b.v + a.v * b.dv};
}
template <class T>
Dual2<T> operator/(const Dual2<T>& a, const Dual2<T>& b) {
  T inv = T(1) / b.v;
  T q = a.v * inv;
  return {q, (a.du - q * b.du) * inv, (a.dv - q * b.dv) * inv};
}

// mixed scalar forms
template <class T> Dual2<T> operator+(const Dual2<T>& a, double s) { return {a.v + T(s), a.du, a.dv}; }
template <class T> Dual2<T> operator+(double s, const Dual2<T>& a) { return a + s; }
template <class T> Dual2<T> operator-(const Dual2<T>& a, double s) { return {a.v - T(s), a.du, a.dv}; }
template <class T> Dual2<T> operator-(double s, const Dual2<T>& a) { return {T(s) - a.v, -a.du, -a.dv}; }
template <class T> Dual2<T> operator*(const Dual2<T>& a, double s) { return {a.v * T(s), a.du * T(s), a.dv * T(s)}; }
template <class T> Dual2<T> operator*(double s, const Dual2<T>& a) { return a * s; }
template <class T> Dual2<T> operator/(const Dual2<T>& a, double s) { return a * (1.0 / s); }
template <class T> Dual2<T> operator/(double s, const Dual2<T>& a) { return Dual2<T>(T(s)) / a; }

template <class T>
Dual2<T> chain(const Dual2<T>& x, T f, T fp) {
  return {f, fp * x.du, fp * x.dv};
}

using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;
using std::asin;
using std::acos;
using std::atan;
using std::asinh;
using std::acosh;
using std::atanh;

template <class T> Dual2<T> sin(const Dual2<T>& x) { return chain(x, sin(x.v), cos(x.v)); }
template <class T> Dual2<T> cos(const Dual2<T>& x) { return chain(x, cos(x.v), -sin(x.v)); }
template <class T> Dual2<T> tan(const Dual2<T>& x) { T c = cos(x.v); return chain(x, tan(x.v), T(1) / (c * c)); }
template <class T> Dual2<T> sinh(const Dual2<T>& x) { return chain(x, sinh(x.v), cosh(x.v)); }
template <class T> Dual2<T> cosh(const Dual2<T>& x) { return chain(x, cosh(x.v), sinh(x.v)); }
template <class T> Dual2<T> tanh(const Dual2<T>& x) { T t = tanh(x.v); return chain(x, t, T(1) - t * t); }
template <class T> Dual2<T> exp(const Dual2<T>& x) { T e = exp(x.v); return chain(x, e, e); }
template <class T> Dual2<T> log(const Dual2<T>& x) { return chain(x, log(x.v), T(1) / x.v); }
template <class T> Dual2<T> sqrt(const Dual2<T>& x) { T r = sqrt(x.v); return chain(x, r, T(0.5) / r); }
template <class T> Dual2<T> asin(const Dual2<T>& x) { return chain(x, asin(x.v), T(1) / sqrt(T(1) - x.v * x.v)); }
template <class T> Dual2<T> acos(const Dual2<T>& x) { return chain(x, acos(x.v), T(-1) / sqrt(T(1) - x.v * x.v)); }
template <class T> Dual2<T> atan(const Dual2<T>& x) { return chain(x, atan(x.v), T(1) / (T(1) + x.v * x.v)); }
template <class T> Dual2<T> asinh(const Dual2<T>& x) { return chain(x, asinh(x.v), T(1) / sqrt(T(1) + x.v * x.v)); }
template <class T> Dual2<T> acosh(const Dual2<T>& x) { return chain(x, acosh(x.v), T(1) / sqrt(x.v * x.v - T(1))); }
template <class T> Dual2<T> atanh(const Dual2<T>& x) { return chain(x, atanh(x.v), T(1) / (T(1) - x.v * x.v)); }

// plain value of an arbitrarily nested dual
inline double value(double x) { return x; }
template <class T> double value(const Dual2<T>& x) { return value(x.v); }

using D1 = Dual2<double>;
using D2 = Dual2<Dual2<double>>;

// seeds for evaluating f(u,v) with first (D1) or second (D2) order tracking
inline D1 seed_u1(double u) { return D1(u, 1.0, 0.0); }
inline D1 seed_v1(double v) { return D1(v, 0.0, 1.0); }
inline D2 seed_u2(double u) { return D2(D1(u, 1.0, 0.0), D1(1.0), D1(0.0)); }
inline D2 seed_v2(double v) { return D2(D1(v, 0.0, 1.0), D1(0.0), D1(1.0)); }

}  // namespace ektau
