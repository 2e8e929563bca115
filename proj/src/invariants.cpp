#include "qhyp/invariants.hpp"

#include <algorithm>
#include <numbers>

namespace qhyp {

ProjPoint ProjPoint::make(const HermitianSpace& space, const HVector& lift, double tol) {
  return {lift, classify_vector(space, lift, tol)};
}

namespace {

Quaternion checked_inverse(const Quaternion& q, const HVector& a, const HVector& b) {
  if (q.norm() <= 1e-12 * a.norm() * b.norm()) throw DegenerateConfiguration("vanishing pairing in cross ratio");
  return q.inverse();
}

}  // namespace

Quaternion cross_ratio(const HermitianSpace& space, const HVector& z1, const HVector& z2, const HVector& z3,
                       const HVector& z4) {
  Quaternion p31 = herm(space, z3, z1), p32 = herm(space, z3, z2), p42 = herm(space, z4, z2),
             p41 = herm(space, z4, z1);
  if (p31.norm() <= 1e-12 * z3.norm() * z1.norm() || p42.norm() <= 1e-12 * z4.norm() * z2.norm())
    throw DegenerateConfiguration("vanishing pairing in cross ratio");
  return p31 * checked_inverse(p32, z3, z2) * p42 * checked_inverse(p41, z4, z1);
}

double CrossRatioTriple::inequality_margin() const {
  double a = X1.norm(), b = X2.norm();
  return 2 * a * X3.re() - (a * a + b * b - 2 * X1.re() - 2 * X2.re() + 1);
}

CrossRatioTriple cross_ratio_triple(const HermitianSpace& space, const HVector& z1, const HVector& z2,
                                    const HVector& z3, const HVector& z4, double tol) {
  CrossRatioTriple t{cross_ratio(space, z1, z2, z3, z4), cross_ratio(space, z1, z4, z3, z2),
                     cross_ratio(space, z2, z4, z3, z1)};
  bool boundary = true;
  for (const HVector* z : {&z1, &z2, &z3, &z4})
    if (classify_vector(space, *z, 1e-8) != VectorType::Null) boundary = false;
  if (boundary && t.modulus_relation_error() > tol * std::max(1.0, t.X2.norm()))
    throw std::runtime_error("cross_ratio_triple: |X2| = |X1||X3| violated");
  return t;
}

Quaternion triple_product(const HermitianSpace& space, const HVector& z1, const HVector& z2, const HVector& z3) {
  return herm(space, z1, z2) * herm(space, z3, z1) * herm(space, z2, z3);
}

double angular_invariant(const HermitianSpace& space, const HVector& z1, const HVector& z2, const HVector& z3) {
  Quaternion t = triple_product(space, z1, z2, z3);
  double scale = z1.norm() * z1.norm() * z2.norm() * z2.norm() * z3.norm() * z3.norm();
  if (t.norm() <= 1e-14 * scale) throw DegenerateConfiguration("angular invariant: vanishing triple product");
  return std::acos(std::clamp(-t.re() / t.norm(), -1.0, 1.0));
}

double distance_invariant(const HermitianSpace& space, const HVector& p, const HVector& q) {
  double pp = herm(space, p, p).re(), qq = herm(space, q, q).re();
  if (!(pp < 0 && qq < 0) || classify_vector(space, p, 1e-8) != VectorType::Negative ||
      classify_vector(space, q, 1e-8) != VectorType::Negative)
    throw std::invalid_argument("distance_invariant: points must be negative");
  return herm(space, q, p).norm2() / (pp * qq);
}

double bergman_distance(const HermitianSpace& space, const HVector& p, const HVector& q) {
  return 2 * std::acosh(std::sqrt(std::max(1.0, distance_invariant(space, p, q))));
}

Quaternion rotation_invariant(const Quaternion& g, double tol) {
  double s = g.im_norm();
  if (s <= tol * std::max(1.0, g.norm())) return {};
  return g.im() / s;
}

double radial_invariant(const HermitianSpace& space, const HVector& p1, const HVector& p2, const HVector& p3,
                        const HVector& pj) {
  double num = herm(space, pj, p1).norm2() * herm(space, p2, p3).norm();
  double den = std::abs(herm(space, pj, pj).re()) * herm(space, p1, p2).norm() * herm(space, p3, p1).norm();
  if (den == 0) throw DegenerateConfiguration("radial invariant: vanishing pairing");
  return num / den;
}

std::string CrossRatioSlot::label() const {
  return "X" + std::to_string(k) + "," + std::to_string(j);
}

int InvariantProfile::l() const {
  return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [](const PairSlot& p) { return p.u.is_zero(); }));
}

int InvariantProfile::t() const { return static_cast<int>(pairs.size()) - l(); }

std::vector<Quaternion> InvariantProfile::rotation_invariants() const {
  std::vector<Quaternion> out{u0};
  for (const auto& p : pairs)
    if (!p.u.is_zero()) out.push_back(p.u);
  return out;
}

int InvariantProfile::slot_count(int m, int i) {
  if (i < 3) return 0;
  int count = m - i;          // X_{1j'}
  count += 2 * (m - 3);       // X_{2j}, X_{3j}
  for (int k = 4; k <= i; ++k) count += m - k;
  return count;
}

}  // namespace qhyp
