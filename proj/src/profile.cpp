#include "qhyp/gram.hpp"
#include "qhyp/invariants.hpp"

namespace qhyp {

InvariantProfile profile(const PointConfig& config) {
  const int m = config.m(), i = config.i;
  if (m < 4) throw std::invalid_argument("profile: need at least four points");
  SemiNormalizedGram g = semi_normalize(config);
  const auto& sp = config.space;
  const auto& p = g.lifts;  // 0-based storage, 1-based naming below
  auto P = [&](int k) -> const HVector& { return p[k - 1]; };
  auto G = [&](int k, int j) { return g.gram(k - 1, j - 1); };

  InvariantProfile pr;
  pr.n = sp.n;
  pr.m = m;
  pr.i = i;

  auto pair_slot = [&](int a, int b) {
    PairSlot s;
    s.a = a;
    s.b = b;
    s.d = distance_invariant(sp, P(a), P(b));
    if (a == 1) return s;  // g_1b is real positive by construction
    s.A = angular_invariant(sp, P(1), P(a), P(b));
    s.u = rotation_invariant(G(a, b));
    return s;
  };

  if (i == 0) {
    for (int a = 1; a <= m; ++a)
      for (int b = a + 1; b <= m; ++b) pr.pairs.push_back(pair_slot(a, b));
    pr.A23 = angular_invariant(sp, P(1), P(2), P(3));
    pr.u0 = rotation_invariant(G(2, 3));
    return pr;
  }

  pr.A23 = angular_invariant(sp, P(1), P(2), P(3));
  pr.u0 = rotation_invariant(G(2, 3));
  auto add = [&](SlotKind kind, int k, int j, std::array<int, 4> idx) {
    CrossRatioSlot s;
    s.kind = kind;
    s.k = k;
    s.j = j;
    s.points = idx;
    s.value = cross_ratio(sp, P(idx[0]), P(idx[1]), P(idx[2]), P(idx[3]));
    pr.cross_ratios.push_back(s);
  };
  for (int j = i + 1; j <= m; ++j) add(SlotKind::X1, 1, j, {2, 1, 3, j});
  for (int j = 4; j <= m; ++j) add(SlotKind::X2, 2, j, {1, 2, 3, j});
  for (int j = 4; j <= m; ++j) add(SlotKind::X3, 3, j, {1, 3, 2, j});
  for (int k = 4; k <= i; ++k)
    for (int j = k + 1; j <= m; ++j) add(SlotKind::Xk, k, j, {1, k, 2, j});
  for (int j = i + 1; j <= m; ++j) pr.radial.push_back({j, radial_invariant(sp, P(1), P(2), P(3), P(j))});
  for (int a = i + 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) pr.pairs.push_back(pair_slot(a, b));
  return pr;
}

}  // namespace qhyp
