#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "ektau/chart.hpp"
#include "ektau/space.hpp"

using namespace ektau;

namespace {

Vec4 random_point(const AmbientChart& chart, std::mt19937& rng) {
  std::uniform_real_distribution<double> box(-0.8, 0.8);
  for (;;) {
    Vec4 p;
    if (chart.kind() == ChartKind::HyperboloidProduct) {
      double a = box(rng), b = box(rng);
      p = Vec4{std::sqrt(1 + a * a + b * b), a, b, box(rng)};
    } else if (chart.kind() == ChartKind::PolarProduct) {
      p = Vec4{0.2 + std::abs(box(rng)), box(rng), box(rng), 0};
    } else {
      p = Vec4{box(rng), box(rng), box(rng), 0};
    }
    if (chart.in_domain(p)) return p;
  }
}

Vec4 random_tangent(const AmbientChart& chart, const Vec4& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> box(-1, 1);
  Vec4 x{box(rng), box(rng), box(rng), 0};
  if (chart.kind() == ChartKind::HyperboloidProduct) {
    x[3] = box(rng);
    // project onto the constraint tangent space
    double s = -x[0] * p[0] + x[1] * p[1] + x[2] * p[2];
    Vec4 P{p[0], p[1], p[2], 0};
    x = x + s * P;
  }
  return x;
}

}  // namespace

TEST_CASE("space params validation") {
  CHECK_THROWS_AS(SpaceParams(1.0, 0.5), parameter_error);   // kappa = 4 tau^2
  CHECK_THROWS_AS(SpaceParams(2.0, 0.0), parameter_error);   // kappa not in {-1,0,1}
  CHECK_NOTHROW(SpaceParams(2.0, 0.0, Validation::Permissive));
  CHECK_NOTHROW(SpaceParams(0.0, 0.5));
  CHECK(SpaceParams(-1, 0).kappa4t2() == -1.0);
}

TEST_CASE("space config parsing") {
  auto cfg = parse_space_config("kappa = -1\ntau = 0\nchart = hyperboloid\nvalidation_mode = standard\n");
  CHECK(cfg.params.kappa == -1.0);
  CHECK(cfg.chart == ChartKind::HyperboloidProduct);
  CHECK_THROWS_AS(parse_space_config("kappa=1\nbogus=2\n"), parameter_error);
  auto perm = parse_space_config("kappa = 0.25\ntau = 0\nchart = cartan\nvalidation_mode = permissive\n");
  CHECK(perm.params.kappa == 0.25);
}

TEST_CASE("cartan metric closed-form values") {
  AmbientChart flat(SpaceParams(0, 0, Validation::Permissive), ChartKind::CartanEktau);
  Mat4 g = flat.metric(Vec4{0, 0, 0, 0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(g(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));

  AmbientChart h2r(SpaceParams(-1, 0), ChartKind::CartanEktau);
  Mat4 g2 = h2r.metric(Vec4{1, 0, 0, 0});
  CHECK(g2(0, 0) == Catch::Approx(16.0 / 9.0).margin(1e-14));
  CHECK(g2(1, 1) == Catch::Approx(16.0 / 9.0).margin(1e-14));
  CHECK_THROWS_AS(h2r.metric(Vec4{2.5, 0, 0, 0}), domain_error);  // 1 - r^2/4 <= 0
}

TEST_CASE("hyperboloid vertex frame is orthonormal") {
  AmbientChart hy(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  Vec4 p{1, 0, 0, 0};
  Vec4 e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{0, 0, 0, 1};
  CHECK(hy.inner(p, e1, e1) == Catch::Approx(1.0));
  CHECK(hy.inner(p, e2, e2) == Catch::Approx(1.0));
  CHECK(hy.inner(p, e3, e3) == Catch::Approx(1.0));
  CHECK(hy.inner(p, e1, e2) == Catch::Approx(0.0).margin(1e-15));
  CHECK(hy.inner(p, e1, e3) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("metric is symmetric positive definite at random points") {
  std::mt19937 rng(12345);
  for (auto kind : {ChartKind::CartanEktau, ChartKind::PolarProduct, ChartKind::HyperboloidProduct}) {
    SpaceParams sp = (kind == ChartKind::CartanEktau) ? SpaceParams(1, 0.25) : SpaceParams(-1, 0);
    AmbientChart chart(sp, kind);
    for (int it = 0; it < 400; ++it) {
      Vec4 p = random_point(chart, rng);
      Mat4 g = chart.metric(p);
      for (int i = 0; i < chart.dim(); ++i)
        for (int j = 0; j < chart.dim(); ++j)
          CHECK(std::abs(g(i, j) - g(j, i)) < 1e-15);
      Vec4 x = random_tangent(chart, p, rng);
      double q = chart.inner(p, x, x);
      double n2 = 0;
      for (int i = 0; i < 4; ++i) n2 += x[i] * x[i];
      if (n2 > 1e-12) CHECK(q > 0.0);
    }
  }
}

TEST_CASE("christoffels: flat chart vanishes, metric compatibility holds") {
  AmbientChart flat(SpaceParams(0, 0, Validation::Permissive), ChartKind::CartanEktau);
  Christoffels c = flat.christoffels(Vec4{0.3, -0.2, 0.7, 0});
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(c.g[k][i][j]) < 1e-14);

  // d_l g_ij = Gamma^m_li g_mj + Gamma^m_lj g_im against a central-difference
  // oracle on the metric (step 1e-4)
  std::mt19937 rng(77);
  for (auto spec : {std::pair{SpaceParams(0, 0.5), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0.3), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0), ChartKind::PolarProduct},
                    std::pair{SpaceParams(1, 0), ChartKind::PolarProduct}}) {
    AmbientChart chart(spec.first, spec.second);
    for (int it = 0; it < 40; ++it) {
      Vec4 p = random_point(chart, rng);
      Christoffels c2 = chart.christoffels(p);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            CHECK(c2.g[k][i][j] == Catch::Approx(c2.g[k][j][i]).margin(1e-13));
      const double h = 1e-4;
      Mat4 g0 = chart.metric(p);
      for (int l = 0; l < 3; ++l) {
        Vec4 pp = p, pm = p;
        pp[l] += h;
        pm[l] -= h;
        Mat4 gp = chart.metric(pp), gm = chart.metric(pm);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double dg = (gp(i, j) - gm(i, j)) / (2 * h);
            double contraction = 0;
            for (int m = 0; m < 3; ++m)
              contraction += c2.g[m][l][i] * g0(m, j) + c2.g[m][l][j] * g0(i, m);
            CHECK(dg == Catch::Approx(contraction).margin(1e-6));
          }
      }
    }
  }
}

TEST_CASE("christoffels unsupported on the constrained chart") {
  AmbientChart hy(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  CHECK_THROWS_AS(hy.christoffels(Vec4{1, 0, 0, 0}), unsupported_error);
}

TEST_CASE("vertical field is unit and Killing") {
  std::mt19937 rng(99);
  for (auto spec : {std::pair{SpaceParams(0, 0.5), ChartKind::CartanEktau},
                    std::pair{SpaceParams(1, 0.25), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0), ChartKind::PolarProduct},
                    std::pair{SpaceParams(-1, 0), ChartKind::HyperboloidProduct}}) {
    AmbientChart chart(spec.first, spec.second);
    for (int it = 0; it < 50; ++it) {
      Vec4 p = random_point(chart, rng);
      Vec4 xi = chart.vertical(p);
      CHECK(chart.norm(p, xi) == Catch::Approx(1.0).margin(1e-12));
      // Lie derivative of g along xi by finite differences: the fiber
      // coordinate is cyclic, so shifting p along xi must preserve g(X,Y)
      Vec4 x = random_tangent(chart, p, rng);
      Vec4 y = random_tangent(chart, p, rng);
      double h = 1e-5;
      Vec4 pp = p, pm = p;
      int fiber = (chart.kind() == ChartKind::HyperboloidProduct) ? 3 : 2;
      pp[fiber] += h;
      pm[fiber] -= h;
      double lie = (chart.inner(pp, x, y) - chart.inner(pm, x, y)) / (2 * h);
      CHECK(std::abs(lie) < 1e-7);
    }
  }
}

TEST_CASE("cross product: euclidean case, antisymmetry, gram identity") {
  AmbientChart flat(SpaceParams(0, 0, Validation::Permissive), ChartKind::CartanEktau);
  Vec4 e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0};
  Vec4 w = flat.cross(Vec4{0, 0, 0, 0}, e1, e2);
  CHECK(w[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(w[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(w[2] == Catch::Approx(1.0).margin(1e-15));

  std::mt19937 rng(4242);
  for (auto spec : {std::pair{SpaceParams(0, 0.5), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0), ChartKind::PolarProduct},
                    std::pair{SpaceParams(-1, 0), ChartKind::HyperboloidProduct}}) {
    AmbientChart chart(spec.first, spec.second);
    for (int it = 0; it < 400; ++it) {
      Vec4 p = random_point(chart, rng);
      Vec4 x = random_tangent(chart, p, rng);
      Vec4 y = random_tangent(chart, p, rng);
      Vec4 xy = chart.cross(p, x, y);
      Vec4 yx = chart.cross(p, y, x);
      Vec4 xx = chart.cross(p, x, x);
      for (int i = 0; i < 4; ++i) {
        CHECK(xy[i] == Catch::Approx(-yx[i]).margin(1e-12));
        CHECK(std::abs(xx[i]) < 1e-12);
      }
      CHECK(std::abs(chart.inner(p, xy, x)) < 1e-11);
      CHECK(std::abs(chart.inner(p, xy, y)) < 1e-11);
      double gram = chart.inner(p, x, x) * chart.inner(p, y, y) -
                    chart.inner(p, x, y) * chart.inner(p, x, y);
      CHECK(chart.inner(p, xy, xy) == Catch::Approx(gram).margin(1e-10));
    }
  }

  // Nil3 point from the worked examples
  AmbientChart nil(SpaceParams(0, 0.5), ChartKind::CartanEktau);
  Vec4 p{0.3, -0.2, 0.1, 0};
  std::mt19937 rng2(7);
  for (int it = 0; it < 20; ++it) {
    Vec4 x = random_tangent(nil, p, rng2), y = random_tangent(nil, p, rng2);
    Vec4 xy = nil.cross(p, x, y);
    double gram = nil.inner(p, x, x) * nil.inner(p, y, y) -
                  nil.inner(p, x, y) * nil.inner(p, x, y);
    CHECK(nil.inner(p, xy, xy) == Catch::Approx(gram).margin(1e-10));
  }
}

TEST_CASE("covariant derivative: flat constant field and product rule") {
  AmbientChart flat(SpaceParams(0, 0, Validation::Permissive), ChartKind::CartanEktau);
  Vec4 p{0.1, 0.2, 0.3, 0};
  Vec4 x{1, 2, 3, 0};
  Vec4 v{0.5, -0.25, 1, 0};
  Vec4 dv{0, 0, 0, 0};
  Vec4 r = flat.covariant_derivative(p, x, v, dv);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r[i]) < 1e-15);

  // product rule d<V,W>(X) = <DV,W> + <V,DW> with a numeric directional
  // derivative of the inner product
  AmbientChart nil(SpaceParams(0, 0.5), ChartKind::CartanEktau);
  auto fieldV = [](const Vec4& q) { return Vec4{q[1], q[0] * q[2], 1.0, 0}; };
  auto fieldW = [](const Vec4& q) { return Vec4{std::sin(q[0]), q[1], q[2] * q[2], 0}; };
  std::mt19937 rng(31);
  for (int it = 0; it < 30; ++it) {
    Vec4 q = random_point(nil, rng);
    Vec4 dir = random_tangent(nil, q, rng);
    Vec4 DV = nil.covariant_derivative(q, dir, fieldV);
    Vec4 DW = nil.covariant_derivative(q, dir, fieldW);
    double h = 1e-5;
    Vec4 qp = q, qm = q;
    for (int i = 0; i < 4; ++i) {
      qp[i] += h * dir[i];
      qm[i] -= h * dir[i];
    }
    double dip = (nil.inner(qp, fieldV(qp), fieldW(qp)) - nil.inner(qm, fieldV(qm), fieldW(qm))) / (2 * h);
    double rhs = nil.inner(q, DV, fieldW(q)) + nil.inner(q, fieldV(q), DW);
    CHECK(dip == Catch::Approx(rhs).margin(1e-7));
  }
}

TEST_CASE("killing identity for the vertical field") {
  // covariant derivative of xi along X equals tau X ^ xi in every chart
  std::mt19937 rng(2024);
  for (auto spec : {std::pair{SpaceParams(0, 0.5), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0.5), ChartKind::CartanEktau},
                    std::pair{SpaceParams(1, 0.25), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0), ChartKind::CartanEktau},
                    std::pair{SpaceParams(-1, 0), ChartKind::PolarProduct},
                    std::pair{SpaceParams(-1, 0), ChartKind::HyperboloidProduct}}) {
    AmbientChart chart(spec.first, spec.second);
    double tau = spec.first.tau;
    for (int it = 0; it < 120; ++it) {
      Vec4 p = random_point(chart, rng);
      Vec4 x = random_tangent(chart, p, rng);
      Vec4 xi = chart.vertical(p);
      Vec4 dxi{0, 0, 0, 0};  // constant components in every chart
      Vec4 lhs = chart.covariant_derivative(p, x, xi, dxi);
      Vec4 rhs = tau * chart.cross(p, x, xi);
      Vec4 diff = lhs - rhs;
      CHECK(chart.norm(p, diff) < 1e-7);
      if (tau == 0) CHECK(chart.norm(p, lhs) < 1e-8);
    }
  }
}

TEST_CASE("polar and hyperboloid models of H2xR are isometric") {
  AmbientChart polar(SpaceParams(-1, 0), ChartKind::PolarProduct);
  AmbientChart hyper(SpaceParams(-1, 0), ChartKind::HyperboloidProduct);
  const double h = 1e-6;
  for (double rho : {0.3, 0.8, 1.4}) {
    for (double phi : {0.0, 0.9, 2.2}) {
      Vec4 p{rho, phi, 0.5, 0};
      // push the polar coordinate frame forward through the diffeomorphism
      Vec4 q = polar_to_hyperboloid(p);
      Mat4 gp = polar.metric(p);
      Vec4 J[3];
      for (int i = 0; i < 3; ++i) {
        Vec4 pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        Vec4 qp = polar_to_hyperboloid(pp), qm = polar_to_hyperboloid(pm);
        J[i] = (1.0 / (2 * h)) * (qp - qm);
      }
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(hyper.inner(q, J[i], J[j]) == Catch::Approx(gp(i, j)).margin(1e-8));
    }
  }
}
