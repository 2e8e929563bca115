#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qhyp/hlinalg.hpp"
#include "qhyp/sampling.hpp"

using namespace qhyp;

namespace {

HVector vec(std::initializer_list<Quaternion> xs) {
  HVector v(xs.size());
  size_t k = 0;
  for (const auto& x : xs) v[k++] = x;
  return v;
}

HMatrix diag(std::initializer_list<Quaternion> xs) { return HMatrix::diagonal(std::vector<Quaternion>(xs)); }

void check_coeffs(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (size_t k = 0; k < got.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
}

}  // namespace

TEST_SUITE("hlinalg") {
  TEST_CASE("hermitian form") {
    auto sp = HermitianSpace::corner(1);
    HVector o = vec({0, 1}), inf = vec({1, 0});
    CHECK(distance(herm(sp, o, inf), Quaternion(1)) == 0);
    CHECK(herm(sp, o, o).is_zero());
    HVector z = vec({-1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    CHECK(herm(sp, z, z).w == doctest::Approx(-1));

    Rng rng(5);
    auto sp3 = HermitianSpace::corner(3);
    for (int t = 0; t < 20; ++t) {
      HVector a = random_hvector(rng, 4), b = random_hvector(rng, 4);
      Quaternion l = random_quaternion(rng);
      // right-linear in the first slot, hermitian symmetric
      CHECK(distance(herm(sp3, a * l, b), herm(sp3, a, b) * l) < 1e-13);
      CHECK(distance(herm(sp3, a, b), herm(sp3, b, a).conj()) < 1e-13);
    }
  }

  TEST_CASE("vector types") {
    auto sp1 = HermitianSpace::corner(1);
    CHECK(classify_vector(sp1, vec({0, 1})) == VectorType::Null);
    CHECK(classify_vector(sp1, vec({-1, 1})) == VectorType::Negative);
    auto sp2 = HermitianSpace::corner(2);
    CHECK(classify_vector(sp2, vec({0, 1, 0})) == VectorType::Positive);
  }

  TEST_CASE("complex embedding") {
    CHECK((complex_embed(HMatrix::identity(2)) - Eigen::MatrixXcd::Identity(4, 4)).norm() == 0);
    HMatrix j(1, 1);
    j(0, 0) = kJ;
    Eigen::MatrixXcd want(2, 2);
    want << 0, -1, 1, 0;
    CHECK((complex_embed(j) - want).norm() == 0);

    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
      HMatrix a(3, 3), b(3, 3);
      for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 3; ++c) a(r, c) = random_quaternion(rng), b(r, c) = random_quaternion(rng);
      CHECK((complex_embed(a * b) - complex_embed(a) * complex_embed(b)).norm() < 1e-10);
      CHECK((from_complex_embedding(complex_embed(a)) - a).norm() < 1e-15);
      HVector v = random_hvector(rng, 3);
      CHECK((complex_embed(a * v) - complex_embed(a) * complex_embed(v)).norm() < 1e-10);
      CHECK((inverse(a) * a - HMatrix::identity(3)).norm() < 1e-10);
    }
  }

  TEST_CASE("characteristic polynomial") {
    check_coeffs(char_poly_real_coeffs(HMatrix::identity(2)), {-4, 6, -4});
    // (x^2 - 2.5x + 1)^2
    check_coeffs(char_poly_real_coeffs(diag({2, 0.5})), {-5, 8.25, -5});
    // diag(i, i) is the member; diag(i, -i) has the same embedding spectrum
    check_coeffs(char_poly_real_coeffs(diag({kI, kI})), {0, 2, 0});
    check_coeffs(char_poly_real_coeffs(diag({kI, -kI})), {0, 2, 0});
  }

  TEST_CASE("right eigenvalues of diagonal matrices") {
    auto sp = HermitianSpace::corner(1);
    auto e = right_eigen(sp, diag({2, 0.5}));
    REQUIRE(e.classes.size() == 2);
    CHECK(std::abs(e.classes[0].rep - 2.0) < 1e-12);
    CHECK(std::abs(e.classes[1].rep - 0.5) < 1e-12);
    for (const auto& c : e.classes) {
      CHECK(c.multiplicity == 1);
      CHECK(c.type == VectorType::Null);
    }
    // i and -i are similar: one class of multiplicity two
    e = right_eigen(sp, diag({kI, -kI}));
    REQUIRE(e.classes.size() == 1);
    CHECK(e.classes[0].multiplicity == 2);
    CHECK(std::abs(e.classes[0].rep - std::complex<double>(0, 1)) < 1e-12);
  }

  TEST_CASE("right eigenvalues of a conjugated normal form") {
    auto sp = HermitianSpace::corner(1);
    Rng rng(21);
    auto l1 = std::polar(2.0, std::numbers::pi / 3), l2 = std::polar(0.5, std::numbers::pi / 3);
    HMatrix E = diag({Quaternion::from_complex(l1), Quaternion::from_complex(l2)});
    for (int t = 0; t < 10; ++t) {
      HMatrix c = random_isometry(sp, rng);
      HMatrix a = c * E * (sp.H * c.adjoint() * sp.H);
      auto e = right_eigen(sp, a);
      REQUIRE(e.classes.size() == 2);
      CHECK(std::abs(e.classes[0].rep - l1) < 1e-8);
      CHECK(std::abs(e.classes[1].rep - l2) < 1e-8);
      for (const auto& cl : e.classes)
        for (const auto& v : cl.vectors) CHECK((a * v - v * Quaternion::from_complex(cl.rep)).norm() < 1e-8 * a.norm());
    }
  }

  TEST_CASE("defective matrices are rejected") {
    auto sp = HermitianSpace::corner(1);
    HMatrix t = HMatrix::identity(2);
    t(0, 1) = kI;
    CHECK_THROWS_AS(right_eigen(sp, t), NotSemisimple);
  }

  TEST_CASE("indefinite gram-schmidt") {
    auto sp1 = HermitianSpace::corner(1);
    std::vector<HVector> basis = {vec({1, 0}), vec({0, 1})};
    auto out = gram_schmidt_indefinite(sp1, basis, {0, 0});
    CHECK((out[0] - basis[0]).norm() < 1e-15);
    CHECK((out[1] - basis[1]).norm() < 1e-15);

    out = gram_schmidt_indefinite(sp1, {vec({1, 1}), vec({1, -1})}, {0, 0});
    CHECK(herm(sp1, out[0], out[0]).norm() < 1e-12);
    CHECK(herm(sp1, out[1], out[1]).norm() < 1e-12);
    CHECK(distance(herm(sp1, out[0], out[1]), Quaternion(1)) < 1e-12);

    auto sp2 = HermitianSpace::corner(2);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      std::vector<HVector> vs = {random_hvector(rng, 3), random_hvector(rng, 3), random_hvector(rng, 3)};
      out = gram_schmidt_indefinite(sp2, vs, {0, 0, 1});
      CHECK(herm(sp2, out[0], out[0]).norm() < 1e-10);
      CHECK(herm(sp2, out[1], out[1]).norm() < 1e-10);
      CHECK(distance(herm(sp2, out[0], out[1]), Quaternion(1)) < 1e-10);
      CHECK(distance(herm(sp2, out[2], out[2]), Quaternion(1)) < 1e-10);
      CHECK(herm(sp2, out[2], out[0]).norm() < 1e-10);
      CHECK(herm(sp2, out[2], out[1]).norm() < 1e-10);
      out = gram_schmidt_indefinite(sp2, vs, {-1, 1, 1});
      CHECK(herm(sp2, out[0], out[0]).w == doctest::Approx(-1));
      CHECK(herm(sp2, out[0], out[1]).norm() < 1e-10);
    }
  }

  TEST_CASE("hrank and same_line") {
    Rng rng(2);
    HVector a = random_hvector(rng, 3), b = random_hvector(rng, 3);
    CHECK(hrank({a, b, a * kJ + b * Quaternion(2, 0, 1, 0)}) == 2);
    CHECK(same_line(a, a * random_quaternion(rng)));
    CHECK_FALSE(same_line(a, b));
  }
}
