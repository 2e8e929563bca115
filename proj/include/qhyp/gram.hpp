#pragma once

#include <optional>
#include <vector>

#include "qhyp/decision.hpp"
#include "qhyp/invariants.hpp"

namespace qhyp {

struct PointConfig {
  HermitianSpace space;
  int i = 0;  // leading null points
  std::vector<HVector> lifts;
  std::vector<VectorType> types;
  HMatrix gram;  // gram(k, j) = <p_j, p_k>

  int m() const { return static_cast<int>(lifts.size()); }
};

// throws std::invalid_argument on ordering violations or positive points,
// DegenerateConfiguration on coincident points
PointConfig gram_of(const HermitianSpace& space, const std::vector<HVector>& lifts, double tol = 1e-8);

struct SemiNormalizedGram {
  int m = 0, i = 0;
  HMatrix gram;
  std::vector<Quaternion> vg;
  std::vector<std::pair<int, int>> vg_index;  // 1-based (1, j) for r_1j, (k, j) for g_kj
  std::vector<HVector> lifts;                 // empty when reconstructed from invariants
};

// (r_1j for negative j (all j >= 2 when i = 0), then g_kj for 2 <= k < j <= m)
void fill_vg(SemiNormalizedGram& g);

// throws std::invalid_argument for i in {1, 2} or m < 3
SemiNormalizedGram semi_normalize(const PointConfig& config);

// mu with conj(mu) V_{G2} mu = V_{G1}; tol is scaled by max(1, max |V_G|)
std::optional<Quaternion> orbit_equal(const SemiNormalizedGram& g1, const SemiNormalizedGram& g2,
                                      double tol = kDefaultTol);

Decision congruent(const PointConfig& a, const PointConfig& b, double tol = kDefaultTol);

// max over k of the distance between the lines C p_k and q_k (relative)
double projective_matching_error(const HMatrix& c, const std::vector<HVector>& p, const std::vector<HVector>& q);

SemiNormalizedGram reconstruct_gram(const InvariantProfile& profile);

}  // namespace qhyp
