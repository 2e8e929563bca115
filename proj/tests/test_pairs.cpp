#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qhyp/pairs.hpp"
#include "qhyp/sampling.hpp"

using namespace qhyp;

namespace {

HMatrix diag(std::initializer_list<Quaternion> xs) { return HMatrix::diagonal(std::vector<Quaternion>(xs)); }

HMatrix inv_member(const HermitianSpace& sp, const HMatrix& c) { return sp.H * c.adjoint() * sp.H; }

Isometry conj_by(const HermitianSpace& sp, const HMatrix& c, const Isometry& a) {
  return Isometry::make(sp, c * a.matrix() * inv_member(sp, c));
}

Isometry regular(const HermitianSpace& sp, Classification kind, Rng& rng) {
  return random_semisimple(sp, random_regular_spec(kind, sp.n, rng), rng());
}

EigenSpec hyperbolic(double r, double theta, std::vector<double> positive = {}) {
  EigenSpec s;
  s.kind = Classification::Hyperbolic;
  s.lead = {r, theta, 1};
  for (double a : positive) s.positive.push_back({1, a, 1});
  return s;
}

const double kS = std::sqrt(2.0);

}  // namespace

TEST_SUITE("pairs") {
  TEST_CASE("eigenframes") {
    auto sp = HermitianSpace::corner(1);
    auto f = eigenframe(Isometry::make(sp, diag({2, 0.5})));
    REQUIRE(f.size() == 2);
    HVector e0(2), e1(2);
    e0[0] = 1;
    e1[1] = 1;
    CHECK(same_line(f.a(), e0));
    CHECK(same_line(f.r(), e1));
    CHECK(distance(herm(sp, f.a(), f.r()), Quaternion(1)) < 1e-14);

    Rng rng(1);
    for (int n = 1; n <= 4; ++n) {
      auto spn = HermitianSpace::corner(n);
      for (auto kind : {Classification::Hyperbolic, Classification::Elliptic}) {
        auto a = regular(spn, kind, rng);
        auto fr = eigenframe(a);
        CHECK(frame_normalization_error(spn, fr) < 1e-9);
        HMatrix back = fr.matrix() * fr.normal_form() * fr.inverse(spn);
        CHECK((back - a.matrix()).norm() < 1e-8 * std::max(1.0, a.matrix().norm()));
        for (size_t k = 0; k < fr.size(); ++k)
          CHECK((a.matrix() * fr.vectors[k] - fr.vectors[k] * fr.eigenvalues[k]).norm() < 1e-8 * a.matrix().norm());
      }
    }
  }

  TEST_CASE("associated points") {
    auto sp1 = HermitianSpace::corner(1);
    auto p = associated_points(eigenframe(Isometry::make(sp1, diag({2, 0.5}))));
    CHECK(p.size() == 2);

    Rng rng(2);
    auto sp2 = HermitianSpace::corner(2);
    auto h = associated_points(eigenframe(regular(sp2, Classification::Hyperbolic, rng)));
    REQUIRE(h.size() == 3);
    CHECK(herm(sp2, h[2], h[2]).norm() < 1e-10);

    auto e = associated_points(eigenframe(regular(sp1, Classification::Elliptic, rng)));
    REQUIRE(e.size() == 2);
    CHECK(herm(sp1, e[1], e[1]).w == doctest::Approx(-1));

    auto pts = associated_points(regular(sp2, Classification::Elliptic, rng));
    for (const auto& q : pts) CHECK(q.type == VectorType::Negative);
  }

  TEST_CASE("pairing constants on canonical tuples") {
    Rng rng(3);
    auto sp = HermitianSpace::corner(3);
    for (auto ka : {Classification::Hyperbolic, Classification::Elliptic})
      for (auto kb : {Classification::Hyperbolic, Classification::Elliptic}) {
        auto [fa, fb] = pair_frame(regular(sp, ka, rng), regular(sp, kb, rng));
        for (const auto* f : {&fa, &fb}) {
          auto q = associated_points(*f);
          auto pr = [&](size_t i, size_t j) { return herm(sp, q[i], q[j]); };
          if (f->kind == Classification::Hyperbolic) {
            CHECK(distance(pr(0, 1), Quaternion(1)) < 1e-9);
            for (size_t l = 2; l < q.size(); ++l) {
              CHECK(distance(pr(l, 0), Quaternion(-1 / kS)) < 1e-9);
              CHECK(distance(pr(l, 1), Quaternion(1 / kS)) < 1e-9);
              CHECK(pr(l, l).norm() < 1e-9);
              for (size_t k = 2; k < l; ++k) CHECK(distance(pr(l, k), Quaternion(-1)) < 1e-9);
            }
          } else {
            CHECK(distance(pr(0, 0), Quaternion(-1)) < 1e-9);
            for (size_t l = 1; l < q.size(); ++l) {
              CHECK(distance(pr(l, 0), Quaternion(-kS)) < 1e-9);
              CHECK(distance(pr(l, l), Quaternion(-1)) < 1e-9);
              for (size_t k = 1; k < l; ++k) CHECK(distance(pr(l, k), Quaternion(-2)) < 1e-9);
            }
          }
        }
      }
  }

  TEST_CASE("cross normalization") {
    Rng rng(4);
    auto sp = HermitianSpace::corner(2);
    auto H = Classification::Hyperbolic, E = Classification::Elliptic;
    {
      auto [fa, fb] = pair_frame(regular(sp, H, rng), regular(sp, H, rng));
      CHECK(distance(herm(sp, fa.r(), fb.a()), Quaternion(1)) < 1e-9);
      CHECK(frame_normalization_error(sp, fb) < 1e-9);
    }
    {
      auto [fa, fb] = pair_frame(regular(sp, H, rng), regular(sp, E, rng));
      CHECK(distance(herm(sp, fa.r(), fb.x(1)), Quaternion(1)) < 1e-9);
      CHECK(frame_normalization_error(sp, fa) < 1e-9);
    }
    {
      auto [fa, fb] = pair_frame(regular(sp, E, rng), regular(sp, H, rng));
      CHECK(distance(herm(sp, fa.x(1), fb.a()), Quaternion(1)) < 1e-9);
    }
    {
      auto [fa, fb] = pair_frame(regular(sp, E, rng), regular(sp, E, rng));
      Quaternion q = herm(sp, fa.x(1), fb.x(1));
      CHECK(q.im_norm() < 1e-9);
      CHECK(q.w > 1);
    }
    auto a = regular(sp, H, rng);
    CHECK(common_fixed_point(a, a));
    CHECK_THROWS_AS(pair_frame(a, a), HypothesisViolation);
  }

  TEST_CASE("eigenvalue grassmannian") {
    Rng rng(5);
    auto sp = HermitianSpace::corner(2);
    auto a = regular(sp, Classification::Elliptic, rng);
    const auto& cls = a.eigen().classes.front();
    auto p = grassmannian_point(a, cls.similarity());
    CHECK(p.basis.size() == 1);
    CHECK(grassmannian_equal(p, p));
    auto scaled = p;
    for (auto& v : scaled.basis) v = v * Quaternion::from_complex(std::polar(2.0, 0.7));
    CHECK(grassmannian_equal(p, scaled));
    auto moved = p;
    for (auto& v : moved.basis) v = v * kJ;
    CHECK_FALSE(grassmannian_equal(p, moved));

    EigenSpec s;
    s.kind = Classification::Elliptic;
    s.lead = {1, 0.6, 1};
    s.positive = {{1, 1.9, 2}};
    auto m = random_semisimple(sp, s, 9);
    CHECK(grassmannian_point(m, SimilarityClass::of(std::polar(1.0, 1.9))).basis.size() == 2);
  }

  TEST_CASE("canonical tuples") {
    Rng rng(6);
    auto sp2 = HermitianSpace::corner(2);
    auto t = canonical_tuple(regular(sp2, Classification::Hyperbolic, rng), regular(sp2, Classification::Hyperbolic, rng));
    CHECK(t.points.size() == 6);
    CHECK(t.type == 6);
    CHECK(t.repairs == 0);

    auto sp1 = HermitianSpace::corner(1);
    auto t1 = canonical_tuple(regular(sp1, Classification::Hyperbolic, rng), regular(sp1, Classification::Hyperbolic, rng));
    CHECK(t1.points.size() == 4);
    for (auto ty : t1.types) CHECK(ty == VectorType::Null);
  }

  TEST_CASE("collision repair") {
    Rng rng(7);
    auto sp = HermitianSpace::corner(2);
    auto a = regular(sp, Classification::Hyperbolic, rng);
    auto fa = eigenframe(a);
    HVector p3 = associated_points(fa)[2];
    // Heisenberg-type isometry fixing the null point p3
    Quaternion c{0, 0.3, -0.8, 0.5};
    HMatrix shear = HMatrix::identity(3);
    for (size_t r = 0; r < 3; ++r)
      for (size_t k = 0; k < 3; ++k) {
        HVector hp = sp.H * p3;
        shear(r, k) += p3[r] * c * hp[k].conj();
      }
    REQUIRE(is_member(sp, shear));
    EigenFrame fb = fa;
    for (auto& v : fb.vectors) v = shear * v;
    CHECK(same_line(associated_points(fb)[2], p3));
    auto t = canonical_tuple(sp, fa, fb);
    CHECK(t.repairs >= 1);
    CHECK(t.type == 6);
  }

  TEST_CASE("frame map of conjugate elements") {
    Rng rng(8);
    for (int n = 1; n <= 3; ++n) {
      auto sp = HermitianSpace::corner(n);
      for (auto kind : {Classification::Hyperbolic, Classification::Elliptic}) {
        auto a = regular(sp, kind, rng);
        HMatrix c = random_isometry(sp, rng);
        auto fa = eigenframe(a), fa2 = eigenframe(conj_by(sp, c, a));
        for (size_t k = 0; k < fa.size(); ++k) CHECK(same_line(c * fa.vectors[k], fa2.vectors[k], 1e-7));
        // the image frame has exactly the image associated points
        EigenFrame moved = fa;
        for (auto& v : moved.vectors) v = c * v;
        auto pa = associated_points(fa), pm = associated_points(moved);
        for (size_t k = 0; k < pa.size(); ++k) CHECK((c * pa[k] - pm[k]).norm() < 1e-9 * c.norm() * pa[k].norm());
        // F_{A'}^{-1} C F_A is diagonal with entries commuting with the eigenvalues
        HMatrix d = fa2.inverse(sp) * c * fa.matrix();
        for (size_t r = 0; r < d.rows(); ++r)
          for (size_t k = 0; k < d.cols(); ++k) {
            if (r != k) CHECK(d(r, k).norm() < 1e-7 * d.norm());
            else CHECK(distance(d(r, r) * fa.eigenvalues[r], fa.eigenvalues[r] * d(r, r)) < 1e-7 * d.norm());
          }
      }
    }
  }

  TEST_CASE("pair conjugacy decisions") {
    Rng rng(9);
    auto sp = HermitianSpace::corner(2);
    auto a = regular(sp, Classification::Hyperbolic, rng);
    auto b = regular(sp, Classification::Elliptic, rng);
    HMatrix c = random_isometry(sp, rng);
    auto d = pair_conjugate(a, b, conj_by(sp, c, a), conj_by(sp, c, b));
    CHECK(d.verdict == Verdict::Conjugate);
    CHECK(d.residual < 1e-7);
    CHECK(d.exit_code() == 0);

    auto sp1 = HermitianSpace::corner(1);
    auto h2 = random_semisimple(sp1, hyperbolic(2, 0.4), 1);
    auto h21 = random_semisimple(sp1, hyperbolic(2.1, 0.4), 1);
    auto other = random_semisimple(sp1, hyperbolic(1.5, 1.1), 2);
    d = pair_conjugate(h2, other, h21, other);
    CHECK(d.verdict == Verdict::NotConjugate);
    CHECK(d.failed == FailedInvariant::RealTrace);
    CHECK(d.exit_code() == 1);

    // n = 1: move the Grassmannian points of B's fixed points by j
    auto fb = eigenframe(other);
    auto ev = fb.eigenvalues;
    ev.front() = ev.front().conj();
    ev.back() = ev.back().conj();
    auto moved = Isometry::make(sp1, fb.matrix() * HMatrix::diagonal(ev) * fb.inverse(sp1));
    CHECK(conjugate_single(other, moved));
    d = pair_conjugate(h2, other, h2, moved);
    CHECK(d.verdict == Verdict::NotConjugate);
    CHECK(d.failed == FailedInvariant::Grassmannian);

    CHECK_THROWS_AS(pair_conjugate(h2, h2, h2, h2), HypothesisViolation);
  }

  TEST_CASE("higher multiplicity pairs are inconclusive") {
    auto sp = HermitianSpace::corner(2);
    EigenSpec s;
    s.kind = Classification::Elliptic;
    s.lead = {1, 0.6, 1};
    s.positive = {{1, 1.9, 2}};
    Rng rng(10);
    auto a = random_semisimple(sp, s, 3);
    auto b = regular(sp, Classification::Hyperbolic, rng);
    HMatrix c = random_isometry(sp, rng);
    auto d = pair_conjugate(a, b, conj_by(sp, c, a), conj_by(sp, c, b));
    CHECK(d.verdict == Verdict::Inconclusive);
    CHECK(d.exit_code() == 3);
  }
}
