#include "qhyp/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "qhyp/gram.hpp"
#include "qhyp/pairs.hpp"
#include "qhyp/sampling.hpp"

namespace qhyp {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

HMatrix inv_member(const HermitianSpace& sp, const HMatrix& c) { return sp.H * c.adjoint() * sp.H; }

Isometry conj_by(const HermitianSpace& sp, const HMatrix& c, const Isometry& a) {
  return Isometry::make(sp, c * a.matrix() * inv_member(sp, c));
}

std::vector<HVector> transform(const HMatrix& c, const std::vector<HVector>& ps, Rng& rng, bool unit_only = false) {
  std::vector<HVector> out;
  for (const auto& p : ps) {
    Quaternion s = unit_only ? random_unit_quaternion(rng) : random_unit_quaternion(rng) * uniform(rng, 0.5, 2.0);
    out.push_back(c * p * s);
  }
  return out;
}

Classification random_kind(Rng& rng) {
  return rng() % 2 ? Classification::Hyperbolic : Classification::Elliptic;
}

Isometry random_regular(const HermitianSpace& sp, Classification kind, Rng& rng) {
  return random_semisimple(sp, random_regular_spec(kind, sp.n, rng), rng());
}

double matrix_rel_diff(const HMatrix& a, const HMatrix& b) { return (a - b).norm() / std::max(1.0, a.norm()); }

// lift-independent scalars used to certify that two configurations differ
std::vector<double> invariant_signature(const PointConfig& c) {
  const auto& sp = c.space;
  std::vector<double> s;
  int m = c.m();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      if (c.types[a] == VectorType::Negative && c.types[b] == VectorType::Negative)
        s.push_back(distance_invariant(sp, c.lifts[a], c.lifts[b]));
      for (int d = b + 1; d < m; ++d) s.push_back(angular_invariant(sp, c.lifts[a], c.lifts[b], c.lifts[d]));
    }
  for (int a = 0; a + 3 < m; ++a) {
    Quaternion x = cross_ratio(sp, c.lifts[a], c.lifts[a + 1], c.lifts[a + 2], c.lifts[a + 3]);
    s.push_back(x.w);
    s.push_back(x.norm());
  }
  for (int j = 3; j < m; ++j)
    if (c.types[j] == VectorType::Negative && c.i >= 3)
      s.push_back(radial_invariant(sp, c.lifts[0], c.lifts[1], c.lifts[2], c.lifts[j]));
  return s;
}

double signature_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double g = 0;
  for (size_t k = 0; k < a.size(); ++k) g = std::max(g, rel(a[k], b[k]));
  return g;
}

const std::vector<std::pair<int, int>> kShapes = {{3, 3}, {4, 4}, {4, 3}, {5, 5}, {5, 0}, {6, 3}, {4, 0}, {6, 6}, {5, 4}};

// ---- 1
CriterionResult invariance(Rng& rng) {
  Check trace{"real trace", 0, 0}, cls{"classification", 0, 0}, ang{"angular", 0, 0}, dist{"distance", 0, 0},
      xr{"cross-ratio class", 0, 0};
  double worst_tr = 0, worst_ang = 0, worst_d = 0, worst_x = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 1 + t % 4;
    auto sp = HermitianSpace::corner(n);
    HMatrix c = random_isometry(sp, rng);
    auto a = random_regular(sp, random_kind(rng), rng);
    auto b = conj_by(sp, c, a);
    double d = 0;
    for (size_t k = 0; k < a.real_trace().size(); ++k) d = std::max(d, rel(a.real_trace()[k], b.real_trace()[k]));
    worst_tr = std::max(worst_tr, d);
    ++trace.total, trace.passed += d < 1e-8;
    ++cls.total, cls.passed += a.classification() == b.classification();

    std::vector<HVector> ps = {random_null_vector(sp, rng), random_null_vector(sp, rng), random_null_vector(sp, rng),
                               random_null_vector(sp, rng), random_negative_vector(sp, rng),
                               random_negative_vector(sp, rng)};
    auto qs = transform(c, ps, rng);
    double da = std::max(rel(angular_invariant(sp, ps[0], ps[1], ps[2]), angular_invariant(sp, qs[0], qs[1], qs[2])),
                         rel(angular_invariant(sp, ps[0], ps[4], ps[5]), angular_invariant(sp, qs[0], qs[4], qs[5])));
    worst_ang = std::max(worst_ang, da);
    ++ang.total, ang.passed += da < 1e-8;
    double dd = rel(distance_invariant(sp, ps[4], ps[5]), distance_invariant(sp, qs[4], qs[5]));
    worst_d = std::max(worst_d, dd);
    ++dist.total, dist.passed += dd < 1e-8;
    auto x1 = SimilarityClass::of(cross_ratio(sp, ps[0], ps[1], ps[2], ps[3])).representative();
    auto x2 = SimilarityClass::of(cross_ratio(sp, qs[0], qs[1], qs[2], qs[3])).representative();
    double dx = std::abs(x1 - x2) / std::max(1.0, std::abs(x1));
    worst_x = std::max(worst_x, dx);
    ++xr.total, xr.passed += dx < 1e-8;
  }
  trace.detail = "max drift " + fmt(worst_tr);
  ang.detail = "max drift " + fmt(worst_ang);
  dist.detail = "max drift " + fmt(worst_d);
  xr.detail = "max drift " + fmt(worst_x);
  return {1, "invariance under 1000 conjugations/congruences", {trace, cls, ang, dist, xr}};
}

// ---- 2
CriterionResult embedding(Rng& rng) {
  Check real{"coefficients real", 0, 0}, pal{"palindromic", 0, 0};
  double worst_im = 0, worst_pal = 0;
  for (int t = 0; t < 500; ++t) {
    auto sp = HermitianSpace::corner(1 + t % 4);
    HMatrix a = t % 3 == 2 ? random_isometry(sp, rng) : random_regular(sp, random_kind(rng), rng).matrix();
    auto c = char_poly_complex_coeffs(a);
    double im = 0, p = 0;
    const size_t N = c.size() - 1;
    for (size_t j = 0; j <= N; ++j) {
      im = std::max(im, std::abs(c[j].imag()));
      p = std::max(p, std::abs(c[j].real() - c[N - j].real()));
    }
    worst_im = std::max(worst_im, im);
    worst_pal = std::max(worst_pal, p);
    ++real.total, real.passed += im < 1e-10;
    ++pal.total, pal.passed += p < 1e-9;
  }
  real.detail = "max |Im| " + fmt(worst_im);
  pal.detail = "max asymmetry " + fmt(worst_pal);
  return {2, "embedding characteristic polynomial on 500 members", {real, pal}};
}

// ---- 3
CriterionResult cross_ratio_relations(Rng& rng) {
  Check mod{"|X2| = |X1||X3|", 0, 0}, ineq{"inequality", 0, 0};
  double worst_mod = 0, worst_margin = 1e300;
  for (int t = 0; t < 500; ++t) {
    auto sp = HermitianSpace::corner(1 + t % 3);
    HVector z[4];
    for (auto& v : z) v = random_null_vector(sp, rng) * random_quaternion(rng);
    auto x = cross_ratio_triple(sp, z[0], z[1], z[2], z[3], 1e300);
    double e = x.modulus_relation_error() / std::max(1.0, x.X2.norm());
    worst_mod = std::max(worst_mod, e);
    ++mod.total, mod.passed += e < 1e-8;
    double g = x.inequality_margin();
    worst_margin = std::min(worst_margin, g);
    ++ineq.total, ineq.passed += g >= -1e-8;
  }
  mod.detail = "max rel error " + fmt(worst_mod);
  ineq.detail = "min margin " + fmt(worst_margin);
  return {3, "cross-ratio relations on 500 boundary quadruples", {mod, ineq}};
}

// ---- 4
// null lift with real coordinates
HVector real_null(const HermitianSpace& sp, Rng& rng) {
  HVector v(sp.dim());
  double s = 0;
  for (size_t k = 1; k + 1 < sp.dim(); ++k) {
    v[k] = uniform(rng, -1, 1);
    s += v[k].w * v[k].w;
  }
  double a = uniform(rng, 0.5, 1.5) * (rng() % 2 ? 1 : -1);
  v[0] = a;
  v[sp.dim() - 1] = -s / (2 * a);
  return v;
}

HVector real_negative(const HermitianSpace& sp, Rng& rng) {
  HVector v(sp.dim());
  double s = 0;
  for (size_t k = 1; k + 1 < sp.dim(); ++k) {
    v[k] = uniform(rng, -1, 1);
    s += v[k].w * v[k].w;
  }
  double a = uniform(rng, 0.5, 1.5);
  v[0] = a;
  v[sp.dim() - 1] = -(s + uniform(rng, 0.2, 2)) / (2 * a);
  return v;
}

PointConfig config(const HermitianSpace& sp, const std::vector<HVector>& lifts) { return gram_of(sp, lifts); }

CriterionResult triples(Rng& rng) {
  Check rightangle{"n=1 boundary triples A = pi/2", 0, 0}, flat{"totally real triples A = 0", 0, 0},
      equal{"equal A decided congruent", 0, 0};
  double worst_r = 0, worst_f = 0, worst_res = 0;
  auto sp1 = HermitianSpace::corner(1);
  for (int t = 0; t < 200; ++t) {
    double a = angular_invariant(sp1, random_null_vector(sp1, rng), random_null_vector(sp1, rng),
                                 random_null_vector(sp1, rng));
    double e = std::abs(a - std::numbers::pi / 2);
    worst_r = std::max(worst_r, e);
    ++rightangle.total, rightangle.passed += e < 1e-9;
  }
  for (int t = 0; t < 200; ++t) {
    auto sp = HermitianSpace::corner(2 + t % 3);
    std::vector<HVector> ps;
    for (int k = 0; k < 3; ++k) ps.push_back(rng() % 3 ? real_null(sp, rng) : real_negative(sp, rng));
    auto qs = transform(random_isometry(sp, rng), ps, rng);
    double a = angular_invariant(sp, qs[0], qs[1], qs[2]);
    worst_f = std::max(worst_f, a);
    ++flat.total, flat.passed += a < 1e-9;
  }
  for (int t = 0; t < 200; ++t) {
    int n = 1 + t % 4;
    auto sp = HermitianSpace::corner(n);
    std::vector<HVector> ps = {random_null_vector(sp, rng), random_null_vector(sp, rng), random_null_vector(sp, rng)};
    double A = angular_invariant(sp, ps[0], ps[1], ps[2]);
    // normal form (infinity, origin, z) with the same angular invariant
    const size_t N = sp.dim() - 1;
    HVector inf(sp.dim()), org(sp.dim()), z(sp.dim());
    inf[0] = 1;
    org[N] = 1;
    Quaternion dir = random_unit_quaternion(rng);
    dir.w = 0;
    dir = dir / dir.norm();
    if (n == 1) {
      z[0] = dir;
    } else {
      z[0] = Quaternion(-0.5) + dir * (0.5 * std::tan(A));
      z[1] = 1;
    }
    z[N] = 1;
    auto qs = transform(random_isometry(sp, rng), {inf, org, z}, rng);
    ++equal.total;
    try {
      auto d = congruent(config(sp, ps), config(sp, qs));
      bool ok = d.verdict == Verdict::Congruent && d.residual < 1e-7 && d.membership_error < 1e-8;
      if (d.verdict == Verdict::Congruent) worst_res = std::max(worst_res, d.residual);
      equal.passed += ok;
    } catch (const std::exception&) {
    }
  }
  rightangle.detail = "max |A - pi/2| " + fmt(worst_r);
  flat.detail = "max A " + fmt(worst_f);
  equal.detail = "max witness residual " + fmt(worst_res);
  return {4, "triple classification", {rightangle, flat, equal}};
}

// ---- 5
CriterionResult gauge(Rng& rng) {
  Check c{"orbit_equal after unit rescaling", 0, 0};
  for (int t = 0; t < 1000; ++t) {
    auto [m, i] = kShapes[t % kShapes.size()];
    auto sp = HermitianSpace::corner(1 + t % 3);
    auto lifts = random_config_lifts(sp, m, i, rng);
    auto rescaled = transform(HMatrix::identity(sp.dim()), lifts, rng, true);
    ++c.total;
    try {
      c.passed += orbit_equal(semi_normalize(config(sp, lifts)), semi_normalize(config(sp, rescaled))).has_value();
    } catch (const std::exception&) {
    }
  }
  return {5, "gauge: V_G in one Sp(1) orbit", {c}};
}

// ---- 6
double vg_residual(const SemiNormalizedGram& g1, const SemiNormalizedGram& g2, const Quaternion& mu) {
  double r = 0;
  for (size_t k = 0; k < g1.vg.size(); ++k) r = std::max(r, distance(mu.conj() * g2.vg[k] * mu, g1.vg[k]));
  return r;
}

CriterionResult round_trip(Rng& rng) {
  const std::vector<std::pair<int, int>> shapes = {{4, 4}, {4, 3}, {5, 5}, {5, 0}, {6, 3}};
  Check rt{"profile -> reconstruct -> orbit_equal", 0, 0}, dc{"d formula", 0, 0}, tc{"t formula", 0, 0};
  double worst = 0;
  std::string bad_d;
  for (int t = 0; t < 500; ++t) {
    auto [m, i] = shapes[t % shapes.size()];
    auto sp = HermitianSpace::corner(1 + (t / 5) % 3);
    auto cfg = config(sp, random_config_lifts(sp, m, i, rng));
    auto prof = profile(cfg);
    auto g = semi_normalize(cfg);
    auto r = reconstruct_gram(prof);
    auto mu = orbit_equal(g, r, 1e-7);
    ++rt.total;
    if (mu) {
      double res = vg_residual(g, r, *mu);
      worst = std::max(worst, res);
      rt.passed += res < 1e-7;
    }
    bool d_ok = prof.d() == InvariantProfile::d_formula(m, i);
    ++dc.total, dc.passed += d_ok;
    ++tc.total, tc.passed += prof.t() == InvariantProfile::t_formula(m, i, prof.l());
    std::string tag = "(" + std::to_string(m) + "," + std::to_string(i) + "): d=" + std::to_string(prof.d()) +
                      " vs " + std::to_string(InvariantProfile::d_formula(m, i));
    if (!d_ok && bad_d.find(tag) == std::string::npos) bad_d += (bad_d.empty() ? "" : "; ") + tag;
  }
  rt.detail = "max residual " + fmt(worst);
  dc.detail = bad_d.empty() ? "all shapes match" : "mismatch " + bad_d;
  return {6, "invariant profile round trip", {rt, dc, tc}};
}

// ---- 7
// near-identity member via the Cayley transform of a small algebra element
HMatrix near_identity(const HermitianSpace& sp, Rng& rng, double eps) {
  const size_t N = sp.dim();
  HMatrix r(N, N);
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b) r(a, b) = random_quaternion(rng) * eps;
  HMatrix x = sp.H * (r - r.adjoint());
  HMatrix id = HMatrix::identity(N);
  return inverse(id - x * 0.5) * (id + x * 0.5);
}

CriterionResult congruence_decider(Rng& rng) {
  Check pos{"congruent pairs accepted", 0, 0}, neg{"separated pairs rejected", 0, 0};
  double worst = 0, worst_mem = 0;
  int false_verdicts = 0;
  for (int t = 0; t < 500; ++t) {
    auto [m, i] = kShapes[t % kShapes.size()];
    auto sp = HermitianSpace::corner(1 + t % 3);
    auto lifts = random_config_lifts(sp, m, i, rng);
    auto cfg = config(sp, lifts);
    auto img = config(sp, transform(random_isometry(sp, rng), lifts, rng));
    auto d = congruent(cfg, img);
    ++pos.total;
    if (d.verdict == Verdict::Congruent) {
      worst = std::max(worst, d.residual);
      worst_mem = std::max(worst_mem, d.membership_error);
      pos.passed += d.residual < 1e-7 && d.membership_error < 1e-8;
    } else if (d.verdict == Verdict::NotCongruent) {
      ++false_verdicts;
    }
  }
  int skipped = 0;
  for (int t = 0, attempt = 0; t < 500; ++attempt) {
    // at n = 1 all boundary triples are congruent, so the draw index cycles shapes
    auto [m, i] = kShapes[attempt % kShapes.size()];
    auto sp = HermitianSpace::corner(1 + (attempt / kShapes.size()) % 3);
    auto lifts = random_config_lifts(sp, m, i, rng);
    auto moved = lifts;
    size_t k = rng() % moved.size();
    moved[k] = (t % 2 ? near_identity(sp, rng, 0.05) : random_isometry(sp, rng)) * moved[k];
    PointConfig a = config(sp, lifts), b;
    try {
      b = config(sp, moved);
    } catch (const std::exception&) {
      ++skipped;
      continue;
    }
    if (signature_gap(invariant_signature(a), invariant_signature(b)) < 1e-6) {
      ++skipped;
      continue;
    }
    ++t;
    auto d = congruent(a, config(sp, transform(random_isometry(sp, rng), moved, rng)));
    ++neg.total;
    neg.passed += d.verdict == Verdict::NotCongruent;
    false_verdicts += d.verdict == Verdict::Congruent;
  }
  pos.detail = "max residual " + fmt(worst) + ", max membership " + fmt(worst_mem);
  neg.detail = std::to_string(skipped) + " uncertified draws resampled";
  Check fv{"zero false verdicts", false_verdicts == 0 ? 1 : 0, 1, std::to_string(false_verdicts) + " false"};
  return {7, "congruence decider", {pos, neg, fv}};
}

// ---- 8
// swap moves the negative direction to another class (same real trace)
EigenSpec perturb_class(EigenSpec s, Rng& rng, bool swap = true) {
  switch (rng() % (swap ? 3 : 2)) {
    case 0:
      if (s.kind == Classification::Hyperbolic) {
        s.lead.modulus *= uniform(rng, 1.05, 1.3);
        break;
      }
      [[fallthrough]];
    case 1: {
      ClassSpec& c = s.positive.empty() || rng() % 2 ? s.lead : s.positive[rng() % s.positive.size()];
      double d = uniform(rng, 0.05, 0.2);
      c.angle = c.angle + d <= std::numbers::pi ? c.angle + d : c.angle - d;
      break;
    }
    default:
      if (s.kind == Classification::Elliptic && !s.positive.empty()) {
        std::swap(s.lead, s.positive[rng() % s.positive.size()]);
      } else {
        ClassSpec& c = s.lead;
        c.angle = c.angle > 0.3 ? c.angle - 0.1 : c.angle + 0.1;
      }
  }
  return s;
}

CriterionResult single_conjugacy(Rng& rng) {
  Check pos{"conjugates accepted", 0, 0}, neg{"class-perturbed rejected", 0, 0};
  for (int t = 0; t < 500; ++t) {
    auto sp = HermitianSpace::corner(1 + t % 4);
    auto kind = t % 2 ? Classification::Hyperbolic : Classification::Elliptic;
    auto spec = random_regular_spec(kind, sp.n, rng);
    auto a = random_semisimple(sp, spec, rng());
    ++pos.total, pos.passed += conjugate_single(a, conj_by(sp, random_isometry(sp, rng), a));
    auto b = random_semisimple(sp, perturb_class(spec, rng), rng());
    ++neg.total, neg.passed += !conjugate_single(a, b);
  }
  return {8, "single-element conjugacy (500 each)", {pos, neg}};
}

// ---- 9
CriterionResult pair_decider(Rng& rng) {
  Check pos{"conjugate pairs accepted", 0, 0}, tr{"trace-separated -> real trace", 0, 0},
      orb{"orbit-separated -> canonical orbit", 0, 0}, gr{"grassmannian-separated -> grassmannian", 0, 0},
      ver{"re-verification of Conjugate verdicts", 0, 0};
  double worst = 0;
  auto reverify = [&](const Decision& d, const Isometry& a, const Isometry& b, const Isometry& a2,
                      const Isometry& b2) {
    if (d.verdict != Verdict::Conjugate) return;
    ++ver.total;
    double r = conjugation_residual(a.space(), *d.witness, a.matrix(), b.matrix(), a2.matrix(), b2.matrix());
    ver.passed += r < 1e-7 && membership_error(a.space(), *d.witness) < 1e-8;
  };
  for (int t = 0; t < 500; ++t) {
    auto sp = HermitianSpace::corner(1 + t % 4);
    auto ka = t % 2 ? Classification::Hyperbolic : Classification::Elliptic;
    auto kb = (t / 2) % 2 ? Classification::Hyperbolic : Classification::Elliptic;
    auto sb = random_regular_spec(kb, sp.n, rng);
    auto a = random_regular(sp, ka, rng);
    auto b = random_semisimple(sp, sb, rng());
    HMatrix c = random_isometry(sp, rng);
    auto a2 = conj_by(sp, c, a), b2 = conj_by(sp, c, b);
    auto d = pair_conjugate(a, b, a2, b2);
    reverify(d, a, b, a2, b2);
    ++pos.total;
    if (d.verdict == Verdict::Conjugate) {
      worst = std::max(worst, d.residual);
      pos.passed += d.residual < 1e-7;
    }
    if (t % 3 == 0) {
      auto bt = conj_by(sp, c, random_semisimple(sp, perturb_class(sb, rng, false), rng()));
      auto e = pair_conjugate(a, b, a2, bt);
      reverify(e, a, b, a2, bt);
      ++tr.total, tr.passed += e.verdict == Verdict::NotConjugate && e.failed == FailedInvariant::RealTrace;
    } else if (t % 3 == 1) {
      auto bo = conj_by(sp, random_isometry(sp, rng), b);
      auto e = pair_conjugate(a, b, a, bo);
      reverify(e, a, b, a, bo);
      ++orb.total, orb.passed += e.verdict == Verdict::NotConjugate && e.failed == FailedInvariant::CanonicalOrbit;
    } else {
      auto fb = eigenframe(b);
      auto ev = fb.eigenvalues;
      if (kb == Classification::Elliptic || sp.n > 1) {
        ev[1] = ev[1].conj();
      } else {
        ev.front() = ev.front().conj();
        ev.back() = ev.back().conj();
      }
      auto bg = Isometry::make(sp, fb.matrix() * HMatrix::diagonal(ev) * fb.inverse(sp));
      auto e = pair_conjugate(a, b, a, bg);
      reverify(e, a, b, a, bg);
      ++gr.total, gr.passed += e.verdict == Verdict::NotConjugate && e.failed == FailedInvariant::Grassmannian;
    }
  }
  pos.detail = "max combined residual " + fmt(worst);
  return {9, "pair conjugacy decider on regular pairs", {pos, tr, orb, gr, ver}};
}

// ---- 10
CriterionResult prop_cross_check(Rng& rng) {
  Check agree{"equal_by_invariants == matrix equality", 0, 0};
  int equal = 0;
  for (int t = 0; t < 1000; ++t) {
    auto sp = HermitianSpace::corner(1 + t % 4);
    auto kind = random_kind(rng);
    auto spec = random_regular_spec(kind, sp.n, rng);
    auto a = random_semisimple(sp, spec, rng());
    auto f = eigenframe(a);
    HMatrix a2;
    switch (t % 5) {
      case 0: a2 = a.matrix(); break;
      case 1: {  // conjugation by an element of the centralizer
        std::vector<Quaternion> d;
        for (size_t k = 0; k < f.size(); ++k) d.push_back(Quaternion::from_complex(std::polar(1.0, uniform(rng, 0, 6.28))));
        if (kind == Classification::Hyperbolic) d.back() = d.front();
        HMatrix c = f.matrix() * HMatrix::diagonal(d) * f.inverse(sp);
        a2 = c * a.matrix() * inv_member(sp, c);
        break;
      }
      case 2: a2 = conj_by(sp, random_isometry(sp, rng), a).matrix(); break;
      case 3: a2 = random_semisimple(sp, perturb_class(spec, rng), rng()).matrix(); break;
      default: {
        auto ev = f.eigenvalues;
        size_t k = rng() % ev.size();
        ev[k] = ev[k].conj();
        if (kind == Classification::Hyperbolic && (k == 0 || k + 1 == ev.size())) {
          ev.front() = f.eigenvalues.front().conj();
          ev.back() = f.eigenvalues.back().conj();
        }
        a2 = f.matrix() * HMatrix::diagonal(ev) * f.inverse(sp);
      }
    }
    bool eq = matrix_rel_diff(a.matrix(), a2) < 1e-7;
    equal += eq;
    ++agree.total, agree.passed += eq == equal_by_invariants(a, Isometry::make(sp, a2));
  }
  agree.detail = std::to_string(equal) + " equal / " + std::to_string(1000 - equal) + " distinct";
  return {10, "invariant equality vs matrix equality on 1000 pairs", {agree}};
}

// ---- 11
Quaternion pure_with_norm(Rng& rng, double r) {
  Quaternion q = random_unit_quaternion(rng);
  q.w = 0;
  return q * (r / q.norm());
}

CriterionResult alignment_oracle(Rng& rng) {
  Check agree{"solvability agrees with brute force", 0, 0}, exact{"returned mu verified", 0, 0};
  std::vector<Quaternion> samples(100000);
  for (auto& s : samples) s = random_unit_quaternion(rng);
  const double kNear = 0.25;
  int solvable = 0;
  for (int t = 0; t < 200; ++t) {
    size_t len = 1 + t % 3;
    std::vector<Quaternion> w(len), v(len);
    for (auto& q : w) q = Quaternion(uniform(rng, -0.5, 0.5)) + pure_with_norm(rng, uniform(rng, 0.6, 1.0));
    Quaternion mu0 = random_unit_quaternion(rng);
    auto wt = w;
    if (t % 2) {
      if (len == 1) {
        wt[0].w += wt[0].w > 0 ? -0.5 : 0.5;
      } else {
        // rotate Im w[1] by 90 degrees in its plane with Im w[0], changing the angle between them by 90 degrees
        Quaternion a = wt[0], b = wt[1];
        a.w = b.w = 0;
        Quaternion axis = a * b;
        axis.w = 0;
        axis = axis / axis.norm();
        if ((a * b).w > 0) axis = -axis;  // angle above 90 degrees: rotate back toward Im w[0]
        Quaternion rot = (Quaternion(1) + axis) / std::sqrt(2.0);
        Quaternion rotated = rot * b * rot.conj();
        wt[1] = Quaternion(wt[1].w) + rotated;
      }
    }
    for (size_t k = 0; k < len; ++k) v[k] = mu0.conj() * wt[k] * mu0;
    double best = 1e300;
    for (const auto& s : samples) {
      double e = 0;
      for (size_t k = 0; k < len && e < best; ++k) e = std::max(e, (s.conj() * w[k] * s - v[k]).norm());
      best = std::min(best, e);
    }
    auto mu = sp1_align(v, w);
    bool oracle = best <= kNear;
    solvable += oracle;
    ++agree.total, agree.passed += oracle == mu.has_value();
    if (mu) {
      double e = 0;
      for (size_t k = 0; k < len; ++k) e = std::max(e, (mu->conj() * w[k] * *mu - v[k]).norm());
      ++exact.total, exact.passed += e <= kDefaultTol && std::abs(mu->norm() - 1) <= kDefaultTol;
    }
  }
  agree.detail = std::to_string(solvable) + " solvable by brute force";
  return {11, "Sp(1) alignment vs brute force on 200 instances", {agree, exact}};
}

}  // namespace

bool CriterionResult::pass() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

std::string CriterionResult::line() const {
  std::ostringstream out;
  out << (pass() ? "PASS" : "FAIL") << "  " << id << ". " << name << " |";
  for (size_t k = 0; k < checks.size(); ++k) {
    const auto& c = checks[k];
    out << (k ? ";" : "") << ' ' << c.name << ' ' << c.passed << '/' << c.total;
    if (!c.detail.empty()) out << " (" << c.detail << ')';
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, " [%.1fs]", seconds);
  return out.str() + buf;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  static const std::function<CriterionResult(Rng&)> table[kCriteria] = {
      invariance, embedding, cross_ratio_relations, triples,      gauge,           round_trip,
      congruence_decider, single_conjugacy, pair_decider, prop_cross_check, alignment_oracle};
  if (id < 1 || id > kCriteria) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(id));
  auto start = std::chrono::steady_clock::now();
  CriterionResult r = table[id - 1](rng);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed, int threads) {
  if (threads <= 0) {
    const char* env = std::getenv("QHYP_THREADS");
    threads = env ? std::atoi(env) : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, threads);
  }
  std::vector<CriterionResult> out(ids.size());
  for (size_t start = 0; start < ids.size(); start += threads) {
    std::vector<std::future<CriterionResult>> jobs;
    for (size_t k = start; k < std::min(ids.size(), start + threads); ++k)
      jobs.push_back(std::async(std::launch::async, run_criterion, ids[k], seed));
    for (size_t k = 0; k < jobs.size(); ++k) out[start + k] = jobs[k].get();
  }
  return out;
}

}  // namespace qhyp
