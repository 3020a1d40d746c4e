#pragma once

#include <string>
#include <vector>

#include "ektau/grid.hpp"
#include "ektau/intersect.hpp"

// Hypothesis bookkeeping for compact disks with piecewise-regular boundary:
// vertex angles, AR-line-of-curvature checks on every boundary arc, contact
// conditions against companion surfaces with vanishing AR differential, and
// the measured |Q^AR| statistics that let the predicted conclusion be
// checked empirically.

namespace ektau {

struct DiskBoundarySpec {
  std::vector<CurveOnSurface> arcs;   // chained in order, closing up
  std::vector<double> vertex_angles;  // interior angle after each arc (w.r.t. I)
};

inline void validate_boundary(const DiskBoundarySpec& spec, double chain_tol = 1e-8) {
  if (spec.arcs.empty()) throw parameter_error("disk boundary: no arcs");
  if (!spec.vertex_angles.empty() && spec.vertex_angles.size() != spec.arcs.size())
    throw parameter_error("disk boundary: need one vertex angle per junction");
  for (double a : spec.vertex_angles)
    if (!(a > 0) || !(a < 2 * M_PI))
      throw parameter_error("disk boundary: vertex angles must lie in (0, 2 pi)");
  for (size_t k = 0; k < spec.arcs.size(); ++k) {
    const CurveOnSurface& cur = spec.arcs[k];
    const CurveOnSurface& nxt = spec.arcs[(k + 1) % spec.arcs.size()];
    CurveSample end = curve_sample(cur, cur.samples.back());
    CurveSample start = curve_sample(nxt, nxt.samples.front());
    Vec4 gap = end.pos - start.pos;
    double g = 0;
    for (int i = 0; i < 4; ++i) g = std::max(g, std::abs(gap[i]));
    if (g > chain_tol)
      throw parameter_error("disk boundary: arcs do not chain into a closed loop");
  }
}

struct DiskContact {
  bool companion_is_ar = false;     // max |Q^AR| along the curve on the companion
  double companion_qar = 0;
  bool transversal = false;
  bool angle_constant = false;
  double angle_variation = 0;
  std::vector<ContactCase> matched;
  bool satisfied = false;
};

struct DiskReport {
  int vertices_lt_pi = 0;
  bool vertex_count_lenient = true;  // <= 3 vertices with angle < pi
  bool vertex_count_strict = true;   // <  3, the stricter published variant
  std::vector<double> arc_locus_max;
  double boundary_locus_max = 0;
  bool boundary_is_ar_locus = false;
  std::vector<DiskContact> contacts;
  double interior_max_qar = 0;
  double interior_mean_qar = 0;
  bool hypotheses_satisfied = false;
  std::vector<std::string> violated;
  std::string verdict;
};

// Contact conditions differ between the product and fibered cases; the
// companion enters through a matched intersection along the boundary arc.
inline DiskContact evaluate_contact(const IntersectionData& ix, bool disk_minimal,
                                    double ar_tol = 1e-6) {
  DiskContact c;
  double q = 0;
  bool conformal = true;
  for (const CurveSample& cs : ix.s2) {
    if (!cs.pg.isothermal) {
      conformal = false;
      continue;
    }
    q = std::max(q, std::abs(ar_differential(cs.pg, ix.side2.surface->chart().params())));
  }
  // fall back to the traceless-pair coefficient magnitude off conformal charts
  if (!conformal)
    for (const CurveSample& cs : ix.s2)
      q = std::max(q, std::abs(Cplx(0.25 * (cs.ar.II(0, 0) - cs.ar.II(1, 1)),
                                    -0.5 * cs.ar.II(0, 1))) / (2 * cs.pg.lambda));
  c.companion_qar = q;
  c.companion_is_ar = q <= ar_tol;

  AngleReport ang = intersection_angle(ix);
  c.transversal = ix.transversal;
  c.angle_constant = ang.is_constant;
  c.angle_variation = ang.max - ang.min;

  ContactConfigReport cfg = corollary_config(ix);
  c.matched = cfg.matched;
  bool tau_zero = ix.side1.surface->chart().params().tau == 0;
  bool type_ok = false;
  for (ContactCase cc : cfg.matched) {
    if (tau_zero && (cc == ContactCase::Horizontal || cc == ContactCase::VerticalBoth ||
                     cc == ContactCase::OppositeNuEqualH))
      type_ok = true;
    if (!tau_zero && (cc == ContactCase::TangentSameNormal ||
                      cc == ContactCase::TransversalOppositeNu))
      type_ok = true;
  }
  bool needs_transversal = true;
  for (ContactCase cc : cfg.matched)
    if (cc == ContactCase::TangentSameNormal) needs_transversal = false;
  c.satisfied = c.companion_is_ar && c.angle_constant && type_ok &&
                (!needs_transversal || c.transversal) && !(tau_zero && disk_minimal);
  return c;
}

inline DiskReport disk_report(ImmersionPtr disk, const DiskBoundarySpec& boundary,
                              const std::vector<IntersectionData>& companions,
                              const GridSpec& interior, double locus_tol = 1e-5,
                              bool strict_vertex_rule = false) {
  validate_boundary(boundary);
  DiskReport rep;

  for (double a : boundary.vertex_angles)
    if (a < M_PI - 1e-12) ++rep.vertices_lt_pi;
  rep.vertex_count_lenient = rep.vertices_lt_pi <= 3;
  rep.vertex_count_strict = rep.vertices_lt_pi < 3;

  for (const CurveOnSurface& arc : boundary.arcs) {
    LocusReport lr = ar_locus_residual(arc);
    rep.arc_locus_max.push_back(lr.max_residual);
    rep.boundary_locus_max = std::max(rep.boundary_locus_max, lr.max_residual);
  }
  rep.boundary_is_ar_locus = rep.boundary_locus_max <= locus_tol;

  bool disk_minimal = true;
  {
    PointGeometry pg = point_geometry(*disk, interior.u(interior.nu / 2),
                                      interior.v(interior.nv / 2));
    disk_minimal = std::abs(pg.H) <= 1e-10;
  }
  for (const IntersectionData& ix : companions)
    rep.contacts.push_back(evaluate_contact(ix, disk_minimal));

  // measured |Q^AR| over the interior: the empirical check of the predicted
  // conclusion, not part of the hypotheses
  double sum = 0;
  long cnt = 0;
  for (int i = 0; i < interior.nu; ++i)
    for (int j = 0; j < interior.nv; ++j) {
      PointGeometry pg = point_geometry(*disk, interior.u(i), interior.v(j));
      double q = std::abs(ar_differential(pg, disk->chart().params()));
      rep.interior_max_qar = std::max(rep.interior_max_qar, q);
      sum += q;
      ++cnt;
    }
  if (cnt) rep.interior_mean_qar = sum / cnt;

  bool vertex_ok = strict_vertex_rule ? rep.vertex_count_strict : rep.vertex_count_lenient;
  if (!vertex_ok) rep.violated.push_back("more than the admissible number of vertices with angle < pi");
  if (!rep.boundary_is_ar_locus)
    rep.violated.push_back("a boundary arc is not an AR-line of curvature");
  for (size_t k = 0; k < rep.contacts.size(); ++k) {
    const DiskContact& c = rep.contacts[k];
    if (!c.satisfied) {
      std::string why = "contact conditions fail on companion " + std::to_string(k);
      if (!c.companion_is_ar) why += " (companion differential does not vanish)";
      if (!c.angle_constant) why += " (contact angle not constant)";
      if (c.matched.empty()) why += " (no admissible configuration matched)";
      if (disk_minimal && disk->chart().params().tau == 0)
        why += " (disk is minimal)";
      rep.violated.push_back(why);
    }
  }

  rep.hypotheses_satisfied = rep.violated.empty();
  rep.verdict = rep.hypotheses_satisfied
                    ? "hypotheses satisfied: expected to be part of an "
                      "Abresch-Rosenberg surface"
                    : "hypotheses violated: no conclusion";
  return rep;
}

}  // namespace ektau
