#pragma once

#include <array>
#include <string>
#include <vector>

#include "qhyp/hlinalg.hpp"

namespace qhyp {

class DegenerateConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProjPoint {
  HVector lift;
  VectorType type = VectorType::Null;

  static ProjPoint make(const HermitianSpace& space, const HVector& lift, double tol = 1e-8);
};

// <z3,z1><z3,z2>^{-1}<z4,z2><z4,z1>^{-1}
Quaternion cross_ratio(const HermitianSpace& space, const HVector& z1, const HVector& z2, const HVector& z3,
                       const HVector& z4);

struct CrossRatioTriple {
  Quaternion X1, X2, X3;
  // 2|X1| Re(X3) - (|X1|^2 + |X2|^2 - 2 Re X1 - 2 Re X2 + 1)
  double inequality_margin() const;
  double modulus_relation_error() const { return std::abs(X2.norm() - X1.norm() * X3.norm()); }
};

// X1 = X(z1,z2,z3,z4), X2 = X(z1,z4,z3,z2), X3 = X(z2,z4,z3,z1);
// for boundary quadruples |X2| = |X1||X3| is asserted to tol (relative)
CrossRatioTriple cross_ratio_triple(const HermitianSpace& space, const HVector& z1, const HVector& z2,
                                    const HVector& z3, const HVector& z4, double tol = 1e-8);

// lift-invariant triple product <z1,z2><z3,z1><z2,z3>
Quaternion triple_product(const HermitianSpace& space, const HVector& z1, const HVector& z2, const HVector& z3);
double angular_invariant(const HermitianSpace& space, const HVector& z1, const HVector& z2, const HVector& z3);

double distance_invariant(const HermitianSpace& space, const HVector& p, const HVector& q);
// Bergman distance rho with cosh^2(rho/2) = distance invariant
double bergman_distance(const HermitianSpace& space, const HVector& p, const HVector& q);

constexpr double kZeroRotationTol = 1e-9;
Quaternion rotation_invariant(const Quaternion& g, double tol = kZeroRotationTol);

// |<pj,p1>|^2 |<p2,p3>| / (|<pj,pj>| |<p1,p2>| |<p3,p1>|); equals r_{1j}^2 in semi-normalized form
double radial_invariant(const HermitianSpace& space, const HVector& p1, const HVector& p2, const HVector& p3,
                        const HVector& pj);

enum class SlotKind { X1, X2, X3, Xk };

struct CrossRatioSlot {
  SlotKind kind = SlotKind::X2;
  int k = 0, j = 0;           // 1-based (k is 1, 2, 3 or the null index)
  std::array<int, 4> points;  // 1-based arguments of X
  Quaternion value;
  std::string label() const;
};

struct RadialSlot {
  int j = 0;
  double value = 0;
};

struct PairSlot {
  int a = 0, b = 0;  // 1-based, a < b, both negative
  double d = 1;
  double A = 0;
  Quaternion u;
};

struct InvariantProfile {
  int n = 1, m = 0, i = 0;
  Quaternion u0;
  double A23 = 0;
  std::vector<CrossRatioSlot> cross_ratios;
  std::vector<RadialSlot> radial;
  std::vector<PairSlot> pairs;

  int d() const { return static_cast<int>(cross_ratios.size()); }
  int l() const;  // zero rotation invariants among the pair slots
  int t() const;  // nonzero rotation invariants among the pair slots
  std::vector<Quaternion> rotation_invariants() const;  // u0 then the nonzero u's, row-major

  static int d_formula(int m, int i) { return i * (i - 3) / 2 + (m - i) * (m - i); }
  static int t_formula(int m, int i, int l) { return ((m - i) * (m - i) - (m - i)) / 2 - l; }
  // number of slots in the cross-ratio list for (m, i)
  static int slot_count(int m, int i);
};

struct PointConfig;
InvariantProfile profile(const PointConfig& config);

}  // namespace qhyp
