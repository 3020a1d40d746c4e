#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>

// Small fixed-size vectors and matrices, templated on the scalar type so
// dual numbers propagate through every geometric formula unchanged.

namespace ektau {

template <class T, int N>
struct Vec {
  std::array<T, N> c{};

  Vec() = default;
  Vec(std::initializer_list<T> init) {
    int i = 0;
    for (const T& x : init) c[i++] = x;
  }

  T& operator[](int i) { return c[i]; }
  const T& operator[](int i) const { return c[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (int i = 0; i < N; ++i) c[i] *= s;
    return *this;
  }
};

template <class T, int N>
Vec<T, N> operator+(Vec<T, N> a, const Vec<T, N>& b) { return a += b; }
template <class T, int N>
Vec<T, N> operator-(Vec<T, N> a, const Vec<T, N>& b) { return a -= b; }
template <class T, int N>
Vec<T, N> operator*(Vec<T, N> a, const T& s) { return a *= s; }
template <class T, int N>
Vec<T, N> operator*(const T& s, Vec<T, N> a) { return a *= s; }
template <class T, int N>
Vec<T, N> operator-(const Vec<T, N>& a) {
  Vec<T, N> r;
  for (int i = 0; i < N; ++i) r[i] = -a[i];
  return r;
}

template <class T, int N>
struct Mat {
  std::array<T, static_cast<size_t>(N) * N> c{};

  T& operator()(int i, int j) { return c[static_cast<size_t>(i) * N + j]; }
  const T& operator()(int i, int j) const { return c[static_cast<size_t>(i) * N + j]; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = T(1);
    return m;
  }
};

template <class T, int N>
Mat<T, N> operator+(const Mat<T, N>& a, const Mat<T, N>& b) {
  Mat<T, N> r;
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}
template <class T, int N>
Mat<T, N> operator*(const T& s, const Mat<T, N>& a) {
  Mat<T, N> r;
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = s * a.c[i];
  return r;
}
template <class T, int N>
Vec<T, N> operator*(const Mat<T, N>& m, const Vec<T, N>& v) {
  Vec<T, N> r;
  for (int i = 0; i < N; ++i) {
    T s{};
    for (int j = 0; j < N; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}
template <class T, int N>
Mat<T, N> operator*(const Mat<T, N>& a, const Mat<T, N>& b) {
  Mat<T, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      T s{};
      for (int k = 0; k < N; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

// Bilinear form value x^T g y over the leading dim components.
template <class T, int N>
T form(const Mat<T, N>& g, const Vec<T, N>& x, const Vec<T, N>& y, int dim = N) {
  T s{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s += x[i] * g(i, j) * y[j];
  return s;
}

template <class T>
T det2(const Mat<T, 2>& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

template <class T>
Mat<T, 2> inverse2(const Mat<T, 2>& m) {
  T d = det2(m);
  Mat<T, 2> r;
  r(0, 0) = m(1, 1) / d;
  r(1, 1) = m(0, 0) / d;
  r(0, 1) = -m(0, 1) / d;
  r(1, 0) = -m(1, 0) / d;
  return r;
}

template <class T>
T det3(const Mat<T, 3>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

template <class T>
Mat<T, 3> inverse3(const Mat<T, 3>& m) {
  T d = det3(m);
  Mat<T, 3> r;
  r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
  r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
  r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
  r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
  r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
  r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
  r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
  r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
  r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
  return r;
}

// Solve [a b; c d] x = r.
template <class T>
Vec<T, 2> solve2(const Mat<T, 2>& m, const Vec<T, 2>& r) {
  T d = det2(m);
  return Vec<T, 2>{(m(1, 1) * r[0] - m(0, 1) * r[1]) / d,
                   (m(0, 0) * r[1] - m(1, 0) * r[0]) / d};
}

}  // namespace ektau
