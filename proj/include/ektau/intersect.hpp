#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ektau/curve.hpp"

// Intersections of two surfaces along a shared curve: the contact angle,
// both conditions of the Joachimsthal-type criterion for AR-lines of
// curvature, the geometric configurations that imply them, and a
// predictor-corrector tracer for intersection curves.

namespace ektau {

struct IntersectionData {
  CurveOnSurface side1, side2;        // same ambient trace at matched samples
  std::vector<CurveSample> s1, s2;    // cached per-sample geometry
  std::vector<double> d;              // <N1, N2> per sample
  double trace_mismatch = 0;          // max ambient distance between sides
  bool transversal = true;            // |d| < 1 - 1e-8 at all samples
  std::vector<int> tangential;        // samples excluded from condition b
};

inline IntersectionData make_intersection(CurveOnSurface a, CurveOnSurface b,
                                          double trace_tol = 1e-8,
                                          const GeometryOptions& opt = {}) {
  if (a.samples.size() != b.samples.size())
    throw parameter_error("make_intersection: mismatched sample counts");
  IntersectionData ix;
  ix.side1 = std::move(a);
  ix.side2 = std::move(b);
  const AmbientChart& chart = ix.side1.surface->chart();
  for (size_t k = 0; k < ix.side1.samples.size(); ++k) {
    CurveSample c1 = curve_sample(ix.side1, ix.side1.samples[k], opt);
    CurveSample c2 = curve_sample(ix.side2, ix.side2.samples[k], opt);
    Vec4 diff = c1.pos - c2.pos;
    double dist = 0;
    for (int i = 0; i < 4; ++i) dist = std::max(dist, std::abs(diff[i]));
    ix.trace_mismatch = std::max(ix.trace_mismatch, dist);
    double dk = chart.inner(c1.pos, c1.pg.normal, c2.pg.normal);
    ix.d.push_back(dk);
    if (std::abs(dk) >= 1.0 - 1e-8) {
      ix.transversal = false;
      ix.tangential.push_back(static_cast<int>(k));
    }
    ix.s1.push_back(std::move(c1));
    ix.s2.push_back(std::move(c2));
  }
  if (ix.trace_mismatch > trace_tol)
    throw numeric_error("make_intersection: ambient traces do not coincide");
  return ix;
}

struct AngleReport {
  std::vector<double> d;
  double max = -1e30, min = 1e30;
  bool is_constant = false;  // max - min <= 1e-7
};

inline AngleReport intersection_angle(const IntersectionData& ix) {
  AngleReport rep;
  rep.d = ix.d;
  for (double dk : ix.d) {
    rep.max = std::max(rep.max, dk);
    rep.min = std::min(rep.min, dk);
  }
  rep.is_constant = (rep.max - rep.min) <= 1e-7;
  return rep;
}

// One side's raw projection product for condition b, evaluated two ways:
// the literal inner products <T_th, X><J T_th, X> against the other normal,
// and the oriented-angle form C^2 sin(2(beta + theta)) / 2, where (C, beta)
// are the polar coordinates of (<T, X>, <JT, X>).
struct ConditionBTerm {
  double inner_form = 0;
  double angle_form = 0;
};

inline ConditionBTerm condition_b_term(const CurveSample& self, const Vec4& other_normal,
                                       const AmbientChart& chart) {
  ConditionBTerm t;
  Vec4 Tth = self.ar.T_theta;
  Vec4 JTth = chart.cross_t<double>(self.pos, self.pg.normal, Tth);
  t.inner_form = chart.inner(self.pos, Tth, other_normal) *
                 chart.inner(self.pos, JTth, other_normal);
  Vec4 JT = chart.cross_t<double>(self.pos, self.pg.normal, self.pg.T);
  double P = chart.inner(self.pos, self.pg.T, other_normal);
  double R = chart.inner(self.pos, JT, other_normal);
  double C2 = P * P + R * R;
  double beta = std::atan2(R, P);
  // T_theta = cos(theta) T - sin(theta) J T;  the product-space route uses
  // T itself, i.e. theta = 0 here
  double theta = self.ar.tau_zero_route ? 0.0 : self.ar.theta;
  t.angle_form = 0.5 * C2 * std::sin(2.0 * (beta + theta));
  return t;
}

struct ConditionBReport {
  std::vector<double> s;
  std::vector<double> residual;        // |LHS - RHS| per transversal sample
  std::vector<double> form_agreement;  // |inner_form - angle_form| per side max
  double max_residual = 0;
  double max_form_disagreement = 0;
  std::vector<int> excluded;           // tangential samples, skipped with warning
};

inline ConditionBReport key_lemma_condition_b(const IntersectionData& ix) {
  ConditionBReport rep;
  rep.excluded = ix.tangential;
  const AmbientChart& chart = ix.side1.surface->chart();
  double tau = chart.params().tau;
  for (size_t k = 0; k < ix.s1.size(); ++k) {
    if (std::abs(ix.d[k]) >= 1.0 - 1e-8) continue;
    ConditionBTerm of2 = condition_b_term(ix.s2[k], ix.s1[k].pg.normal, chart);
    ConditionBTerm of1 = condition_b_term(ix.s1[k], ix.s2[k].pg.normal, chart);
    // sqrt(H1^2 + tau^2) weights the side-2 projections and vice versa
    double w1 = std::sqrt(ix.s1[k].pg.H * ix.s1[k].pg.H + tau * tau);
    double w2 = std::sqrt(ix.s2[k].pg.H * ix.s2[k].pg.H + tau * tau);
    rep.s.push_back(ix.s1[k].s);
    rep.residual.push_back(std::abs(w1 * of2.inner_form - w2 * of1.inner_form));
    rep.max_residual = std::max(rep.max_residual, rep.residual.back());
    double agree = std::max(std::abs(of2.inner_form - of2.angle_form),
                            std::abs(of1.inner_form - of1.angle_form));
    rep.form_agreement.push_back(agree);
    rep.max_form_disagreement = std::max(rep.max_form_disagreement, agree);
  }
  return rep;
}

enum class KeyLemmaVerdict { Verified, PreconditionsUnmet };

struct KeyLemmaReport {
  KeyLemmaVerdict verdict = KeyLemmaVerdict::PreconditionsUnmet;
  bool angle_constant = false;
  bool condition_b = false;
  bool side1_locus = false;
  bool side2_locus = false;
  double angle_variation = 0;
  double condition_b_max = 0;
  double locus1_max = 0;
  double locus2_max = 0;
  std::vector<std::string> unmet;
};

// If the contact angle is constant, condition b holds and one side is an
// AR-line of curvature, assert it for the other side.  Precondition
// failures only produce a report, never an assertion.
inline KeyLemmaReport key_lemma_verify(const IntersectionData& ix,
                                       double pre_tol = 1e-6, double post_tol = 1e-5) {
  KeyLemmaReport rep;
  AngleReport ang = intersection_angle(ix);
  rep.angle_variation = ang.max - ang.min;
  rep.angle_constant = rep.angle_variation <= 1e-7;
  if (!ix.transversal) rep.unmet.push_back("intersection is not transversal everywhere");
  if (!rep.angle_constant) rep.unmet.push_back("contact angle is not constant");

  ConditionBReport cb = key_lemma_condition_b(ix);
  rep.condition_b_max = cb.max_residual;
  rep.condition_b = cb.max_residual <= pre_tol;
  if (!rep.condition_b) rep.unmet.push_back("condition b residual exceeds tolerance");

  LocusReport l1 = ar_locus_residual(ix.side1);
  LocusReport l2 = ar_locus_residual(ix.side2);
  rep.locus1_max = l1.max_residual;
  rep.locus2_max = l2.max_residual;
  rep.side1_locus = l1.max_residual <= pre_tol;
  rep.side2_locus = l2.max_residual <= pre_tol;
  if (!rep.side1_locus && !rep.side2_locus)
    rep.unmet.push_back("neither side is an AR-line of curvature");

  if (!rep.unmet.empty()) return rep;
  double other = rep.side1_locus ? rep.locus2_max : rep.locus1_max;
  rep.verdict = (other <= post_tol) ? KeyLemmaVerdict::Verified
                                    : KeyLemmaVerdict::PreconditionsUnmet;
  if (rep.verdict != KeyLemmaVerdict::Verified)
    rep.unmet.push_back("conclusion violated: other side is not an AR-line of curvature");
  return rep;
}

enum class ContactCase {
  Horizontal,             // tau = 0: the trace lies in a slice
  VerticalBoth,           // integral curve of T on both sides
  OppositeNuEqualH,       // tau = 0: H1 = H2 != 0 and nu1 = -nu2
  TangentSameNormal,      // tau != 0: tangential contact with N1 = N2
  TransversalOppositeNu,  // tau != 0: transversal, H1 = H2, nu1 = -nu2
};

inline const char* to_string(ContactCase c) {
  switch (c) {
    case ContactCase::Horizontal: return "horizontal";
    case ContactCase::VerticalBoth: return "vertical-both";
    case ContactCase::OppositeNuEqualH: return "opposite-nu-equal-H";
    case ContactCase::TangentSameNormal: return "tangent-same-normal";
    default: return "transversal-opposite-nu";
  }
}

struct ContactConfigReport {
  std::vector<ContactCase> matched;
  double horizontal_residual = 1e30;
  double vertical_residual = 1e30;
  double nu_opposition = 1e30;   // max |nu1 + nu2|
  double h_mismatch = 1e30;      // |H1 - H2|
  double normal_mismatch = 1e30; // max |N1 - N2| (for the tangent case)
  double condition_b_max = 0;    // asserted <= 1e-6 whenever a case matches
  bool angle_constant = false;
};

inline ContactConfigReport corollary_config(const IntersectionData& ix,
                                            double tol = 1e-8) {
  ContactConfigReport rep;
  const AmbientChart& chart = ix.side1.surface->chart();
  bool tau_zero = chart.params().tau == 0;
  rep.angle_constant = intersection_angle(ix).is_constant;

  // horizontal: property of the ambient trace
  if (tau_zero) {
    double hres = 0;
    for (const auto& cs : ix.s1) {
      Vec4 xi = chart.vertical_t<double>(cs.pos);
      hres = std::max(hres, std::abs(chart.inner(cs.pos, xi, cs.vel)) /
                                std::sqrt(cs.speed2));
    }
    rep.horizontal_residual = hres;
  }

  double vres = 0, nuo = 0, hmis = 0, nmis = 0;
  for (size_t k = 0; k < ix.s1.size(); ++k) {
    const CurveSample& a = ix.s1[k];
    const CurveSample& b = ix.s2[k];
    for (const CurveSample* cs : {&a, &b}) {
      double T2 = chart.inner(cs->pos, cs->pg.T, cs->pg.T);
      if (T2 > 1e-16) {
        Vec4 cr = chart.cross_t<double>(cs->pos, cs->vel, cs->pg.T);
        vres = std::max(vres, chart.norm(cs->pos, cr) /
                                  (std::sqrt(cs->speed2) * std::sqrt(T2)));
      } else {
        vres = 1.0;
      }
    }
    nuo = std::max(nuo, std::abs(a.pg.nu + b.pg.nu));
    hmis = std::max(hmis, std::abs(a.pg.H - b.pg.H));
    Vec4 dn = a.pg.normal - b.pg.normal;
    double m = 0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(dn[i]));
    nmis = std::max(nmis, m);
  }
  rep.vertical_residual = vres;
  rep.nu_opposition = nuo;
  rep.h_mismatch = hmis;
  rep.normal_mismatch = nmis;

  bool h_nonzero = std::abs(ix.s1[0].pg.H) > 1e-10;
  if (tau_zero && rep.angle_constant && ix.transversal) {
    if (rep.horizontal_residual <= tol) rep.matched.push_back(ContactCase::Horizontal);
    if (rep.nu_opposition <= tol && rep.h_mismatch <= tol && h_nonzero)
      rep.matched.push_back(ContactCase::OppositeNuEqualH);
  }
  if (rep.angle_constant && ix.transversal && vres <= tol)
    rep.matched.push_back(ContactCase::VerticalBoth);
  if (!tau_zero) {
    if (!ix.transversal && rep.normal_mismatch <= tol && rep.h_mismatch <= tol)
      rep.matched.push_back(ContactCase::TangentSameNormal);
    if (ix.transversal && rep.angle_constant && rep.nu_opposition <= tol &&
        rep.h_mismatch <= tol)
      rep.matched.push_back(ContactCase::TransversalOppositeNu);
  }

  rep.condition_b_max = key_lemma_condition_b(ix).max_residual;
  return rep;
}

// ---- intersection tracer ---------------------------------------------------

struct TracerOptions {
  double step = 0.01;
  int steps = 100;        // samples on each side of the seed
  double seed_tol = 1e-10;
  double newton_tol = 1e-10;
};

namespace detail {

// one Newton correction of (u1,v1,u2,v2) toward phi1 = phi2, staying
// minimum-norm along the curve direction
inline void newton_correct(const Immersion& f1, const Immersion& f2, double& u1,
                           double& v1, double& u2, double& v2, double tol) {
  for (int it = 0; it < 40; ++it) {
    Jet2 j1 = f1.jet(u1, v1), j2 = f2.jet(u2, v2);
    Vec4 r = j1.p - j2.p;
    double rn = 0;
    for (int i = 0; i < 4; ++i) rn = std::max(rn, std::abs(r[i]));
    if (rn < tol) return;
    // residual Jacobian columns: d r / d(u1,v1,u2,v2)
    Vec4 cols[4] = {j1.pu, j1.pv, -1.0 * j2.pu, -1.0 * j2.pv};
    double JtJ[4][4], Jtr[4];
    for (int a = 0; a < 4; ++a) {
      Jtr[a] = 0;
      for (int i = 0; i < 4; ++i) Jtr[a] += cols[a][i] * r[i];
      for (int b = 0; b < 4; ++b) {
        JtJ[a][b] = 0;
        for (int i = 0; i < 4; ++i) JtJ[a][b] += cols[a][i] * cols[b][i];
      }
      JtJ[a][a] += 1e-12;
    }
    // solve JtJ dx = -Jtr by Gaussian elimination
    double dx[4];
    {
      double m[4][5];
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) m[a][b] = JtJ[a][b];
        m[a][4] = -Jtr[a];
      }
      for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int rix = c + 1; rix < 4; ++rix)
          if (std::abs(m[rix][c]) > std::abs(m[p][c])) p = rix;
        std::swap(m[c], m[p]);
        for (int rix = c + 1; rix < 4; ++rix) {
          double f = m[rix][c] / m[c][c];
          for (int b = c; b < 5; ++b) m[rix][b] -= f * m[c][b];
        }
      }
      for (int c = 3; c >= 0; --c) {
        double sum = m[c][4];
        for (int b = c + 1; b < 4; ++b) sum -= m[c][b] * dx[b];
        dx[c] = sum / m[c][c];
      }
    }
    u1 += dx[0];
    v1 += dx[1];
    u2 += dx[2];
    v2 += dx[3];
  }
  throw numeric_error("intersection tracer: Newton correction did not converge");
}

}  // namespace detail

// Predictor-corrector tracer seeded by a near-intersection point.  The
// ambient curve direction N1 ^ N2 is pulled back to both parameter planes,
// stepped, and corrected by Newton onto both surfaces.
inline IntersectionData trace_intersection(ImmersionPtr f1, ImmersionPtr f2, double u1,
                                           double v1, double u2, double v2,
                                           const TracerOptions& opt = {},
                                           const GeometryOptions& gopt = {}) {
  const AmbientChart& chart = f1->chart();
  {
    Vec4 p1 = f1->position(u1, v1), p2 = f2->position(u2, v2);
    double rn = 0;
    for (int i = 0; i < 4; ++i) rn = std::max(rn, std::abs(p1[i] - p2[i]));
    if (rn > opt.seed_tol)
      throw parameter_error("trace_intersection: seed is not on both surfaces");
  }

  auto pull_back = [&](const PointGeometry& pg, const Vec4& dir) {
    Vec<double, 2> rhs{chart.inner(pg.pos, dir, pg.phiu),
                       chart.inner(pg.pos, dir, pg.phiv)};
    Mat<double, 2> I;
    I(0, 0) = pg.E;
    I(0, 1) = I(1, 0) = pg.F;
    I(1, 1) = pg.G;
    return solve2(I, rhs);
  };

  struct Node {
    double s;
    Vec<double, 2> a, b, ta, tb;
  };
  std::vector<Node> nodes;

  auto tangent_at = [&](double cu1, double cv1, double cu2, double cv2,
                        Vec<double, 2>& t1, Vec<double, 2>& t2) {
    PointGeometry g1 = point_geometry(*f1, cu1, cv1, gopt);
    PointGeometry g2 = point_geometry(*f2, cu2, cv2, gopt);
    Vec4 tdir = chart.cross_t<double>(g1.pos, g1.normal, g2.normal);
    double n = chart.norm(g1.pos, tdir);
    if (n < 1e-10)
      throw numeric_error("trace_intersection: tangential point, no unique direction");
    tdir = (1.0 / n) * tdir;
    t1 = pull_back(g1, tdir);
    t2 = pull_back(g2, tdir);
  };

  // center node
  {
    Node n0;
    n0.s = 0;
    n0.a = Vec<double, 2>{u1, v1};
    n0.b = Vec<double, 2>{u2, v2};
    tangent_at(u1, v1, u2, v2, n0.ta, n0.tb);
    nodes.push_back(n0);
  }
  for (int dir : {+1, -1}) {
    double cu1 = u1, cv1 = v1, cu2 = u2, cv2 = v2;
    for (int k = 1; k <= opt.steps; ++k) {
      Vec<double, 2> t1, t2;
      tangent_at(cu1, cv1, cu2, cv2, t1, t2);
      cu1 += dir * opt.step * t1[0];
      cv1 += dir * opt.step * t1[1];
      cu2 += dir * opt.step * t2[0];
      cv2 += dir * opt.step * t2[1];
      detail::newton_correct(*f1, *f2, cu1, cv1, cu2, cv2, opt.newton_tol);
      Node n;
      n.s = dir * opt.step * k;
      n.a = Vec<double, 2>{cu1, cv1};
      n.b = Vec<double, 2>{cu2, cv2};
      tangent_at(cu1, cv1, cu2, cv2, n.ta, n.tb);
      if (dir > 0) nodes.push_back(n);
      else nodes.insert(nodes.begin(), n);
    }
  }

  std::vector<double> s;
  std::vector<Vec<double, 2>> uv1, uv2, tan1, tan2;
  for (const Node& n : nodes) {
    s.push_back(n.s);
    uv1.push_back(n.a);
    uv2.push_back(n.b);
    tan1.push_back(n.ta);
    tan2.push_back(n.tb);
  }
  CurveOnSurface c1{f1, std::make_shared<SampledParamCurve>(s, uv1, tan1), s};
  CurveOnSurface c2{f2, std::make_shared<SampledParamCurve>(s, uv2, tan2), s};
  return make_intersection(std::move(c1), std::move(c2), 1e-8, gopt);
}

}  // namespace ektau
