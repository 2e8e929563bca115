#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qhyp/quat.hpp"
#include "qhyp/sampling.hpp"

using namespace qhyp;

TEST_SUITE("quat") {
  TEST_CASE("hamilton product") {
    CHECK(distance(kI * kJ, kK) == 0);
    CHECK(distance(kJ * kK, kI) == 0);
    CHECK(distance(kK * kI, kJ) == 0);
    CHECK(distance(kJ * kI, -kK) == 0);
    Quaternion q{1, 2, -3, 0.5};
    CHECK(distance(q * q.inverse(), Quaternion(1)) < 1e-15);
    CHECK((q * q.conj()).w == doctest::Approx(q.norm2()));
  }

  TEST_CASE("polar decomposition") {
    auto p = polar_decompose(1);
    CHECK(p.modulus == doctest::Approx(1));
    CHECK(p.angle == doctest::Approx(0));
    CHECK(p.axis.is_zero());

    p = polar_decompose(kI);
    CHECK(p.modulus == doctest::Approx(1));
    CHECK(p.angle == doctest::Approx(std::numbers::pi / 2));
    CHECK(distance(p.axis, kI) < 1e-15);

    Quaternion q{1, 1, 1, 1};
    p = polar_decompose(q);
    CHECK(p.modulus == doctest::Approx(2));
    CHECK(p.angle == doctest::Approx(std::numbers::pi / 3));
    CHECK(distance(p.axis, Quaternion(0, 1, 1, 1) / std::sqrt(3.0)) < 1e-15);
    CHECK(distance(p.reconstruct(), q) < 1e-14);
  }

  TEST_CASE("similarity") {
    CHECK(similar(kI, kJ));
    CHECK(similar(kI, -kI));
    CHECK_FALSE(similar({1, 1, 0, 0}, {1.001, -1, 0, 0}));
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      Quaternion a = random_quaternion(rng), mu = random_unit_quaternion(rng);
      CHECK(similar(a, mu.conj() * a * mu, 1e-12));
      auto c = SimilarityClass::of(a);
      CHECK(c.angle >= 0);
      CHECK(c.angle <= std::numbers::pi);
      CHECK(c.same(SimilarityClass::of(mu * a * mu.conj()), 1e-12));
    }
  }

  TEST_CASE("centralizer membership") {
    CHECK(centralizer_contains(kI, {3, 2, 0, 0}));
    CHECK_FALSE(centralizer_contains(kI, kJ));
    CHECK(centralizer_contains(kJ, {1, 0, -5, 0}));
    CHECK_THROWS_AS(centralizer_contains(2.0, kJ), std::domain_error);
  }

  TEST_CASE("sp1_align examples") {
    auto mu = sp1_align({kI, kJ}, {kI, kJ});
    REQUIRE(mu);
    CHECK(distance(*mu, Quaternion(1)) < 1e-12);

    // conj(mu) i mu = j and conj(mu) j mu = -i: a quarter turn about k
    mu = sp1_align({kJ, -kI}, {kI, kJ});
    REQUIRE(mu);
    CHECK(distance(mu->conj() * kI * *mu, kJ) < 1e-12);
    CHECK(distance(mu->conj() * kJ * *mu, -kI) < 1e-12);
    CHECK(distance(*mu, Quaternion(1, 0, 0, -1) / std::sqrt(2.0)) < 1e-12);
    // the cyclic unit (1+i+j+k)/2 sends i to k instead
    Quaternion cyc{0.5, 0.5, 0.5, 0.5};
    CHECK(distance(cyc.conj() * kI * cyc, kK) < 1e-12);

    CHECK_FALSE(sp1_align({kI, kI}, {kI, kJ}));
  }

  TEST_CASE("sp1_align recovers random rotations") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
      std::vector<Quaternion> w, v;
      Quaternion mu0 = random_unit_quaternion(rng);
      for (int k = 0; k < 1 + t % 4; ++k) {
        w.push_back(random_quaternion(rng));
        v.push_back(mu0.conj() * w.back() * mu0);
      }
      auto mu = sp1_align(v, w);
      REQUIRE(mu);
      for (size_t k = 0; k < w.size(); ++k) CHECK(distance(mu->conj() * w[k] * *mu, v[k]) < 1e-9);
      // a single rotation of one quaternion is absent once the real parts differ
      v[0].w += 0.1;
      CHECK_FALSE(sp1_align(v, w));
    }
  }

  TEST_CASE("rotation_between") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      Quaternion a = random_quaternion(rng).im().normalized(), b = random_quaternion(rng).im().normalized();
      Quaternion q = rotation_between(a, b);
      CHECK(distance(q * a * q.conj(), b) < 1e-12);
    }
    Quaternion q = rotation_between(kI, -kI);
    CHECK(distance(q * kI * q.conj(), -kI) < 1e-12);
  }
}
