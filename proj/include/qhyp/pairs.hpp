#pragma once

#include <utility>
#include <vector>

#include "qhyp/decision.hpp"
#include "qhyp/invariants.hpp"
#include "qhyp/isom.hpp"

namespace qhyp {

class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenFrame {
  Classification kind = Classification::Elliptic;
  // hyperbolic: (a, x_1, ..., x_{n-1}, r); elliptic: (x_1 negative, x_2, ..., x_{n+1})
  std::vector<HVector> vectors;
  std::vector<Quaternion> eigenvalues;  // A v_k = v_k eigenvalues[k]

  size_t size() const { return vectors.size(); }
  const HVector& a() const { return vectors.front(); }
  const HVector& r() const { return vectors.back(); }
  // x-vectors are numbered from 1
  const HVector& x(size_t l) const { return kind == Classification::Hyperbolic ? vectors[l] : vectors[l - 1]; }
  HMatrix matrix() const { return HMatrix::from_columns(vectors); }
  HMatrix gram() const;
  HMatrix normal_form() const { return HMatrix::diagonal(eigenvalues); }
  HMatrix inverse(const HermitianSpace& space) const;
};

EigenFrame eigenframe(const Isometry& a);
// largest deviation from the normalization equations of the frame kind
double frame_normalization_error(const HermitianSpace& space, const EigenFrame& f);

// hyperbolic: a, r, (a - r)/sqrt2 + x_l; elliptic: x_1, sqrt2 x_1 + x_j
std::vector<HVector> associated_points(const EigenFrame& f);
std::vector<ProjPoint> associated_points(const Isometry& a);

struct GrassmannianPoint {
  std::complex<double> rep;
  std::vector<HVector> basis;
};

// throws std::invalid_argument for real or absent classes
GrassmannianPoint grassmannian_point(const Isometry& a, const SimilarityClass& cls, double tol = 1e-7);
bool grassmannian_equal(const GrassmannianPoint& p, const GrassmannianPoint& q, double tol = 1e-7);

bool common_fixed_point(const Isometry& a, const Isometry& b, double tol = 1e-8);

// individually normalized frames plus the cross-normalization
// (hyperbolic-hyperbolic <r_A,a_B> = 1, hyperbolic-elliptic <r_A,x_1B> = 1,
//  elliptic-hyperbolic <x_1A,a_B> = 1, elliptic-elliptic <x_1A,x_1B> > 0)
std::pair<EigenFrame, EigenFrame> pair_frame(const Isometry& a, const Isometry& b);

struct CanonicalTuple {
  std::vector<HVector> points;
  std::vector<VectorType> types;
  std::vector<int> multiplicities_a, multiplicities_b;
  int type = 0;     // number of distinct points
  int repairs = 0;  // x-vector rescalings needed to separate coincident points
};

CanonicalTuple canonical_tuple(const HermitianSpace& space, EigenFrame fa, EigenFrame fb);
CanonicalTuple canonical_tuple(const Isometry& a, const Isometry& b);

// ||C A C^-1 - A2|| + ||C B C^-1 - B2|| with C^-1 = H C* H
double conjugation_residual(const HermitianSpace& space, const HMatrix& c, const HMatrix& a, const HMatrix& b,
                            const HMatrix& a2, const HMatrix& b2);

Decision pair_conjugate(const Isometry& a, const Isometry& b, const Isometry& a2, const Isometry& b2,
                        double tol = 1e-7);

}  // namespace qhyp
