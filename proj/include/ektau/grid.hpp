#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ektau/arpair.hpp"
#include "ektau/parallel.hpp"

// Rectangular sample lattices with cached per-node geometry, and the grid
// residual suites: the structure equations in a conformal parameter, the
// holomorphy of the Abresch-Rosenberg coefficient, and the Codazzi
// criterion Q(I,II)_zb = lambda H(I,II)_z for fundamental pairs.

namespace ektau {

enum class JetSupply { Analytic, GridStencil };

struct GridSpec {
  double u0 = 0, v0 = 0;
  int nu = 0, nv = 0;  // node counts per axis (>= 3 each for stencils)
  double h = 0;        // spacing, equal in both directions

  double u(int i) const { return u0 + i * h; }
  double v(int j) const { return v0 + j * h; }
};

inline GridSpec grid_over(double u0, double u1, double v0, double v1, double h) {
  GridSpec g;
  g.u0 = u0;
  g.v0 = v0;
  g.h = h;
  g.nu = static_cast<int>(std::floor((u1 - u0) / h + 1e-9)) + 1;
  g.nv = static_cast<int>(std::floor((v1 - v0) / h + 1e-9)) + 1;
  return g;
}

class SurfaceGrid {
 public:
  SurfaceGrid(ImmersionPtr imm, GridSpec spec, JetSupply supply = JetSupply::Analytic,
              GeometryOptions opt = {})
      : base_(std::move(imm)), spec_(spec), opt_(opt) {
    if (spec_.nu < 3 || spec_.nv < 3)
      throw parameter_error("SurfaceGrid: need at least 3 nodes per axis");
    eval_ = base_;
    GeometryOptions node_opt = opt_;
    if (supply == JetSupply::GridStencil) {
      eval_ = std::make_shared<FiniteDiffImmersion>(base_, spec_.h);
      // stencil jets carry O(h^2) truncation, so conformality is certified
      // on the underlying immersion instead of gated on the sampled jets
      node_opt.isothermal_tol = 1e9;
    }
    nodes_.resize(static_cast<size_t>(spec_.nu) * spec_.nv);
    ars_.resize(nodes_.size());
    std::vector<char> iso(nodes_.size(), 1);
    parallel_for(spec_.nu * spec_.nv, [&](int idx) {
      int i = idx / spec_.nv, j = idx % spec_.nv;
      nodes_[idx] = point_geometry(*eval_, spec_.u(i), spec_.v(j), node_opt);
      ars_[idx] = ar_operator(eval_->chart(), nodes_[idx]);
      if (supply == JetSupply::GridStencil) {
        PointGeometry certify = point_geometry(*base_, spec_.u(i), spec_.v(j), opt_);
        iso[idx] = certify.isothermal ? 1 : 0;
        nodes_[idx].isothermal = certify.isothermal;
      }
    });
    for (char ok : iso)
      if (!ok) certified_ = false;
  }

  const GridSpec& spec() const { return spec_; }
  const Immersion& immersion() const { return *base_; }
  const GeometryOptions& options() const { return opt_; }

  const PointGeometry& pg(int i, int j) const { return nodes_[idx(i, j)]; }
  const ARData& ar(int i, int j) const { return ars_[idx(i, j)]; }

  Cplx qar(int i, int j) const {
    return ar_differential(pg(i, j), base_->chart().params());
  }

  bool all_isothermal() const {
    if (!certified_) return false;
    for (const auto& n : nodes_)
      if (!n.isothermal) return false;
    return true;
  }

  // max - min of the mean curvature over the grid
  double h_variation() const {
    double lo = nodes_[0].H, hi = nodes_[0].H;
    for (const auto& n : nodes_) {
      lo = std::min(lo, n.H);
      hi = std::max(hi, n.H);
    }
    return hi - lo;
  }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * spec_.nv + j; }

  ImmersionPtr base_, eval_;
  GridSpec spec_;
  GeometryOptions opt_;
  bool certified_ = true;
  std::vector<PointGeometry> nodes_;
  std::vector<ARData> ars_;
};

// ---- field stencils over cached node values ------------------------------

template <class T>
struct Field {
  const SurfaceGrid* grid;
  std::function<T(const SurfaceGrid&, int, int)> get;
  T operator()(int i, int j) const { return get(*grid, i, j); }
};

template <class T>
T stencil_du(const Field<T>& f, int i, int j, double h, int order) {
  if (order == 2) return (f(i + 1, j) - f(i - 1, j)) * (1.0 / (2 * h));
  return (-f(i + 2, j) + 8.0 * f(i + 1, j) - 8.0 * f(i - 1, j) + f(i - 2, j)) *
         (1.0 / (12 * h));
}
template <class T>
T stencil_dv(const Field<T>& f, int i, int j, double h, int order) {
  if (order == 2) return (f(i, j + 1) - f(i, j - 1)) * (1.0 / (2 * h));
  return (-f(i, j + 2) + 8.0 * f(i, j + 1) - 8.0 * f(i, j - 1) + f(i, j - 2)) *
         (1.0 / (12 * h));
}
template <class T>
T stencil_d2u(const Field<T>& f, int i, int j, double h, int order) {
  if (order == 2) return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * (1.0 / (h * h));
  return (-f(i + 2, j) + 16.0 * f(i + 1, j) - 30.0 * f(i, j) + 16.0 * f(i - 1, j) -
          f(i - 2, j)) * (1.0 / (12 * h * h));
}
template <class T>
T stencil_d2v(const Field<T>& f, int i, int j, double h, int order) {
  if (order == 2) return (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) * (1.0 / (h * h));
  return (-f(i, j + 2) + 16.0 * f(i, j + 1) - 30.0 * f(i, j) + 16.0 * f(i, j - 1) -
          f(i, j - 2)) * (1.0 / (12 * h * h));
}

// d/dz = (d/du - i d/dv)/2 and conjugate, realized with central differences
template <class T>
Cplx stencil_dz(const Field<T>& f, int i, int j, double h, int order) {
  return 0.5 * (Cplx(stencil_du(f, i, j, h, order)) -
                Cplx(0, 1) * Cplx(stencil_dv(f, i, j, h, order)));
}
template <class T>
Cplx stencil_dzb(const Field<T>& f, int i, int j, double h, int order) {
  return 0.5 * (Cplx(stencil_du(f, i, j, h, order)) +
                Cplx(0, 1) * Cplx(stencil_dv(f, i, j, h, order)));
}

struct ResidualStats {
  double max = 0, mean = 0;
  long count = 0;
  void add(double r) {
    max = std::max(max, r);
    mean += r;
    ++count;
  }
  void finish() {
    if (count) mean /= count;
  }
};

struct StructureRow {
  double u, v;
  double eq3, eq4, eq5, eq6, eq7, eq8, unit_T, qar_abs;
};

struct StructureReport {
  std::vector<StructureRow> rows;
  ResidualStats eq3, eq4, eq5, eq6, eq7, eq8, unit_T;
  bool h_constant = true;
  double h_variation = 0;
};

// Residuals of the structure equations in a conformal parameter at every
// interior node.  The z-derivatives are central differences of the cached
// fields (order 2 or 4); the curvature identity uses a second-difference
// Laplacian of log(2 lambda) at the same order.
inline StructureReport structure_residuals(const SurfaceGrid& grid, int order = 2) {
  if (!grid.all_isothermal())
    throw unsupported_error("structure_residuals: grid is not isothermal");
  const GridSpec& gs = grid.spec();
  int margin = (order == 2) ? 1 : 2;
  if (gs.nu < 2 * margin + 1 || gs.nv < 2 * margin + 1)
    throw parameter_error("structure_residuals: grid too small for stencils");

  StructureReport rep;
  rep.h_variation = grid.h_variation();
  rep.h_constant = rep.h_variation <= 1e-6;

  const SpaceParams& sp = grid.immersion().chart().params();
  double k4 = sp.kappa4t2();

  Field<Cplx> Qf{&grid, [](const SurfaceGrid& g, int i, int j) { return g.pg(i, j).Q; }};
  Field<Cplx> tf{&grid, [](const SurfaceGrid& g, int i, int j) { return g.pg(i, j).t; }};
  Field<double> nf{&grid, [](const SurfaceGrid& g, int i, int j) { return g.pg(i, j).nu; }};
  Field<double> lf{&grid, [](const SurfaceGrid& g, int i, int j) { return g.pg(i, j).lambda; }};
  Field<double> loglf{&grid, [](const SurfaceGrid& g, int i, int j) {
                        return std::log(2.0 * g.pg(i, j).lambda);
                      }};

  for (int i = margin; i < gs.nu - margin; ++i)
    for (int j = margin; j < gs.nv - margin; ++j) {
      const PointGeometry& pg = grid.pg(i, j);
      const AmbientChart& chart = grid.immersion().chart();
      StructureRow row{};
      row.u = gs.u(i);
      row.v = gs.v(j);

      Cplx Hc(pg.H, sp.tau);   // H + i tau
      Cplx Hcb(pg.H, -sp.tau); // H - i tau

      Cplx Qzb = stencil_dzb(Qf, i, j, gs.h, order);
      row.eq4 = std::abs(Qzb - pg.lambda * k4 * pg.nu * pg.t);

      Cplx tz = stencil_dz(tf, i, j, gs.h, order);
      Cplx lz = stencil_dz(lf, i, j, gs.h, order);
      row.eq5 = std::abs(tz - (lz / pg.lambda) * pg.t - pg.Q * pg.nu);

      Cplx tzb = stencil_dzb(tf, i, j, gs.h, order);
      row.eq6 = std::abs(tzb - pg.lambda * Hc * pg.nu);

      Cplx nz = stencil_dz(nf, i, j, gs.h, order);
      row.eq7 = std::abs(nz + Hcb * pg.t + (pg.Q / pg.lambda) * std::conj(pg.t));

      row.eq8 = std::abs(std::norm(pg.t) - 0.5 * pg.lambda * (1.0 - pg.nu * pg.nu));

      double T2 = chart.inner(pg.pos, pg.T, pg.T);
      row.unit_T = std::abs(T2 + pg.nu * pg.nu - 1.0);

      double lap = stencil_d2u(loglf, i, j, gs.h, order) +
                   stencil_d2v(loglf, i, j, gs.h, order);
      double Kintr = -lap / (4.0 * pg.lambda);
      row.eq3 = std::abs(Kintr - (pg.Ke + sp.tau * sp.tau + k4 * pg.nu * pg.nu));

      row.qar_abs = std::abs(grid.qar(i, j));

      rep.rows.push_back(row);
      rep.eq3.add(row.eq3);
      rep.eq4.add(row.eq4);
      rep.eq5.add(row.eq5);
      rep.eq6.add(row.eq6);
      rep.eq7.add(row.eq7);
      rep.eq8.add(row.eq8);
      rep.unit_T.add(row.unit_T);
    }
  rep.eq3.finish();
  rep.eq4.finish();
  rep.eq5.finish();
  rep.eq6.finish();
  rep.eq7.finish();
  rep.eq8.finish();
  rep.unit_T.finish();
  return rep;
}

struct HolomorphyReport {
  std::vector<StructureRow> rows;  // reuses u, v; residual in eq4 slot
  ResidualStats residual;
  bool h_constant = true;
};

// |d/dzb of the Abresch-Rosenberg coefficient| per interior node.
inline HolomorphyReport holomorphy_residual(const SurfaceGrid& grid, int order = 2) {
  if (!grid.all_isothermal())
    throw unsupported_error("holomorphy_residual: grid is not isothermal");
  const GridSpec& gs = grid.spec();
  int margin = (order == 2) ? 1 : 2;
  if (gs.nu < 2 * margin + 1 || gs.nv < 2 * margin + 1)
    throw parameter_error("holomorphy_residual: grid too small for stencils");
  HolomorphyReport rep;
  rep.h_constant = grid.h_variation() <= 1e-6;
  Field<Cplx> qf{&grid, [](const SurfaceGrid& g, int i, int j) { return g.qar(i, j); }};
  for (int i = margin; i < gs.nu - margin; ++i)
    for (int j = margin; j < gs.nv - margin; ++j) {
      StructureRow row{};
      row.u = gs.u(i);
      row.v = gs.v(j);
      row.eq4 = std::abs(stencil_dzb(qf, i, j, gs.h, order));
      row.qar_abs = std::abs(grid.qar(i, j));
      rep.rows.push_back(row);
      rep.residual.add(row.eq4);
    }
  rep.residual.finish();
  return rep;
}

// ---- fundamental pairs ----------------------------------------------------

// An abstract pair of quadratic forms over a parameter domain; I must be a
// Riemannian metric.  Surfaces provide their (I, II) or (I, II_AR) pairs
// through `surface_pair`.
struct FundamentalPair {
  std::function<Mat<double, 2>(double, double)> I;
  std::function<Mat<double, 2>(double, double)> II;
};

enum class PairKind { Ordinary, AbreschRosenberg };

inline FundamentalPair surface_pair(ImmersionPtr imm, PairKind kind,
                                    GeometryOptions opt = {}) {
  FundamentalPair p;
  p.I = [imm, opt](double u, double v) {
    PointGeometry pg = point_geometry(*imm, u, v, opt);
    Mat<double, 2> I;
    I(0, 0) = pg.E;
    I(0, 1) = I(1, 0) = pg.F;
    I(1, 1) = pg.G;
    return I;
  };
  if (kind == PairKind::Ordinary) {
    p.II = [imm, opt](double u, double v) {
      PointGeometry pg = point_geometry(*imm, u, v, opt);
      Mat<double, 2> II;
      II(0, 0) = pg.L;
      II(0, 1) = II(1, 0) = pg.M;
      II(1, 1) = pg.N2;
      return II;
    };
  } else {
    p.II = [imm, opt](double u, double v) {
      return ar_operator(imm->chart(), point_geometry(*imm, u, v, opt)).II;
    };
  }
  return p;
}

struct PairNode {
  double lambda;  // I = 2 lambda |dz|^2 (requires conformal I)
  Cplx Q;         // Hopf coefficient of the pair
  double H;       // mean curvature of the pair
};

class PairGrid {
 public:
  PairGrid(const FundamentalPair& pair, GridSpec spec, double isothermal_tol = 1e-8)
      : spec_(spec) {
    nodes_.resize(static_cast<size_t>(spec_.nu) * spec_.nv);
    parallel_for(spec_.nu * spec_.nv, [&](int k) {
      int i = k / spec_.nv, j = k % spec_.nv;
      Mat<double, 2> I = pair.I(spec_.u(i), spec_.v(j));
      Mat<double, 2> II = pair.II(spec_.u(i), spec_.v(j));
      double E = I(0, 0), F = I(0, 1), G = I(1, 1);
      if (std::abs(E - G) > isothermal_tol * (E + G) ||
          std::abs(F) > isothermal_tol * (E + G))
        bad_ = true;
      double det = E * G - F * F;
      PairNode n;
      n.lambda = 0.25 * (E + G);
      n.Q = Cplx(0.25 * (II(0, 0) - II(1, 1)), -0.5 * II(0, 1));
      n.H = (G * II(0, 0) - 2 * F * II(0, 1) + E * II(1, 1)) / (2 * det);
      nodes_[static_cast<size_t>(i) * spec_.nv + j] = n;
    });
    if (bad_) throw unsupported_error("PairGrid: metric is not conformal");
  }

  const GridSpec& spec() const { return spec_; }
  const PairNode& node(int i, int j) const {
    return nodes_[static_cast<size_t>(i) * spec_.nv + j];
  }

 private:
  GridSpec spec_;
  std::vector<PairNode> nodes_;
  bool bad_ = false;
};

struct CodazziReport {
  std::vector<StructureRow> rows;  // residual in eq4 slot
  ResidualStats residual;
  double h_variation = 0;
};

// |Q(I,II)_zb - lambda H(I,II)_z| per interior node: the conformal scalar
// form of the Codazzi equation for the pair.
inline CodazziReport codazzi_residual(const PairGrid& grid, int order = 2) {
  const GridSpec& gs = grid.spec();
  int margin = (order == 2) ? 1 : 2;
  if (gs.nu < 2 * margin + 1 || gs.nv < 2 * margin + 1)
    throw parameter_error("codazzi_residual: grid too small for stencils");
  CodazziReport rep;
  double lo = grid.node(0, 0).H, hi = lo;
  auto Q = [&grid](int i, int j) { return grid.node(i, j).Q; };
  auto H = [&grid](int i, int j) { return grid.node(i, j).H; };
  for (int i = 0; i < gs.nu; ++i)
    for (int j = 0; j < gs.nv; ++j) {
      lo = std::min(lo, grid.node(i, j).H);
      hi = std::max(hi, grid.node(i, j).H);
    }
  rep.h_variation = hi - lo;
  auto du = [&](auto f, int i, int j) {
    if (order == 2) return (f(i + 1, j) - f(i - 1, j)) * (1.0 / (2 * gs.h));
    return (-f(i + 2, j) + 8.0 * f(i + 1, j) - 8.0 * f(i - 1, j) + f(i - 2, j)) *
           (1.0 / (12 * gs.h));
  };
  auto dv = [&](auto f, int i, int j) {
    if (order == 2) return (f(i, j + 1) - f(i, j - 1)) * (1.0 / (2 * gs.h));
    return (-f(i, j + 2) + 8.0 * f(i, j + 1) - 8.0 * f(i, j - 1) + f(i, j - 2)) *
           (1.0 / (12 * gs.h));
  };
  for (int i = margin; i < gs.nu - margin; ++i)
    for (int j = margin; j < gs.nv - margin; ++j) {
      Cplx Qzb = 0.5 * (du(Q, i, j) + Cplx(0, 1) * dv(Q, i, j));
      Cplx Hz = 0.5 * (Cplx(du(H, i, j)) - Cplx(0, 1) * Cplx(dv(H, i, j)));
      StructureRow row{};
      row.u = gs.u(i);
      row.v = gs.v(j);
      row.eq4 = std::abs(Qzb - grid.node(i, j).lambda * Hz);
      rep.rows.push_back(row);
      rep.residual.add(row.eq4);
    }
  rep.residual.finish();
  return rep;
}

struct MilnorReport {
  bool codazzi = false;
  bool h_const = false;
  bool q_holomorphic = false;
  double codazzi_max = 0, h_variation = 0, holo_max = 0;
  // implication-table violations: entries name the flag that failed while
  // the other two held
  std::vector<std::string> violations;
};

// Threshold evaluation of the three trichotomy conditions plus the
// implication table (any two imply the third).
inline MilnorReport milnor_check(const PairGrid& grid, int order = 2,
                                 double tol = 1e-5, double h_tol = 1e-6) {
  CodazziReport cod = codazzi_residual(grid, order);
  MilnorReport rep;
  rep.codazzi_max = cod.residual.max;
  rep.h_variation = cod.h_variation;
  rep.codazzi = cod.residual.max <= tol;
  rep.h_const = cod.h_variation <= h_tol;

  const GridSpec& gs = grid.spec();
  int margin = (order == 2) ? 1 : 2;
  auto Q = [&grid](int i, int j) { return grid.node(i, j).Q; };
  for (int i = margin; i < gs.nu - margin; ++i)
    for (int j = margin; j < gs.nv - margin; ++j) {
      Cplx duq, dvq;
      if (order == 2) {
        duq = (Q(i + 1, j) - Q(i - 1, j)) * (1.0 / (2 * gs.h));
        dvq = (Q(i, j + 1) - Q(i, j - 1)) * (1.0 / (2 * gs.h));
      } else {
        duq = (-Q(i + 2, j) + 8.0 * Q(i + 1, j) - 8.0 * Q(i - 1, j) + Q(i - 2, j)) *
              (1.0 / (12 * gs.h));
        dvq = (-Q(i, j + 2) + 8.0 * Q(i, j + 1) - 8.0 * Q(i, j - 1) + Q(i, j - 2)) *
              (1.0 / (12 * gs.h));
      }
      rep.holo_max = std::max(rep.holo_max, std::abs(0.5 * (duq + Cplx(0, 1) * dvq)));
    }
  rep.q_holomorphic = rep.holo_max <= tol;

  if (rep.codazzi && rep.h_const && !rep.q_holomorphic)
    rep.violations.push_back("holomorphy fails while codazzi and constant-H hold");
  if (rep.codazzi && rep.q_holomorphic && !rep.h_const)
    rep.violations.push_back("constant-H fails while codazzi and holomorphy hold");
  if (rep.h_const && rep.q_holomorphic && !rep.codazzi)
    rep.violations.push_back("codazzi fails while constant-H and holomorphy hold");
  return rep;
}

}  // namespace ektau
