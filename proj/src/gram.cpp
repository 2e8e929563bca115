#include "qhyp/gram.hpp"

#include <algorithm>
#include <cmath>

namespace qhyp {

PointConfig gram_of(const HermitianSpace& space, const std::vector<HVector>& lifts, double tol) {
  PointConfig c;
  c.space = space;
  c.lifts = lifts;
  bool seen_negative = false;
  for (const auto& p : lifts) {
    if (p.size() != space.dim()) throw std::invalid_argument("gram_of: lift dimension mismatch");
    VectorType t = classify_vector(space, p, tol);
    if (t == VectorType::Positive) throw std::invalid_argument("gram_of: positive points are not supported");
    if (t == VectorType::Null) {
      if (seen_negative) throw std::invalid_argument("gram_of: null points must come first");
      ++c.i;
    } else {
      seen_negative = true;
    }
    c.types.push_back(t);
  }
  const size_t m = lifts.size();
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      if (same_line(lifts[a], lifts[b], 1e-9))
        throw DegenerateConfiguration("gram_of: points " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                      " coincide");
  c.gram = HMatrix(m, m);
  for (size_t k = 0; k < m; ++k)
    for (size_t j = 0; j < m; ++j) c.gram(k, j) = herm(space, lifts[j], lifts[k]);
  return c;
}

void fill_vg(SemiNormalizedGram& g) {
  g.vg.clear();
  g.vg_index.clear();
  for (int j = std::max(g.i, 1) + 1; j <= g.m; ++j) {
    g.vg.push_back(g.gram(0, j - 1));
    g.vg_index.push_back({1, j});
  }
  for (int k = 2; k <= g.m; ++k)
    for (int j = k + 1; j <= g.m; ++j) {
      g.vg.push_back(g.gram(k - 1, j - 1));
      g.vg_index.push_back({k, j});
    }
}

namespace {

bool nonreal(const Quaternion& q) { return q.im_norm() > 1e-9 * std::max(1.0, q.norm()); }

// residual Sp(1) gauge: first imaginary slot along +i, next independent one in the i-j plane (j > 0)
Quaternion gauge(const std::vector<Quaternion>& vg) {
  Quaternion mu(1);
  size_t first = vg.size();
  for (size_t k = 0; k < vg.size(); ++k)
    if (nonreal(vg[k])) {
      first = k;
      break;
    }
  if (first == vg.size()) return mu;
  mu = rotation_between(kI, vg[first].im().normalized());  // conj(mu) v mu is along +i
  for (size_t k = first + 1; k < vg.size(); ++k) {
    Quaternion v = mu.conj() * vg[k] * mu;
    double y = v.y, z = v.z;
    if (std::hypot(y, z) > 1e-9 * std::max(1.0, v.norm())) {
      double phi = std::atan2(z, y);
      // rotation by -phi about i, written as conj(nu) x nu
      Quaternion nu(std::cos(phi / 2), std::sin(phi / 2), 0, 0);
      mu = mu * nu;
      break;
    }
  }
  return mu;
}

}  // namespace

SemiNormalizedGram semi_normalize(const PointConfig& config) {
  const int m = config.m(), i = config.i;
  if (m < 3) throw std::invalid_argument("semi_normalize: need at least three points");
  if (i == 1 || i == 2) throw std::invalid_argument("semi_normalize: configurations with 1 or 2 null points are not covered");
  const auto& sp = config.space;
  const auto& p = config.lifts;
  std::vector<Quaternion> lambda(m);
  double l1;
  if (i >= 3) {
    double p21 = herm(sp, p[1], p[0]).norm(), p31 = herm(sp, p[2], p[0]).norm(), p32 = herm(sp, p[2], p[1]).norm();
    if (p21 == 0 || p31 == 0 || p32 == 0) throw DegenerateConfiguration("semi_normalize: vanishing pairing");
    l1 = std::sqrt(p32 / (p21 * p31));
    for (int j = 1; j < i; ++j) lambda[j] = herm(sp, p[j], p[0]).inverse() * (1.0 / l1);
  } else {
    l1 = 1.0 / std::sqrt(std::abs(herm(sp, p[0], p[0]).re()));
  }
  lambda[0] = l1;
  for (int j = std::max(i, 1); j < m; ++j) {
    Quaternion pj1 = herm(sp, p[j], p[0]);
    if (pj1.norm() == 0) throw DegenerateConfiguration("semi_normalize: vanishing pairing");
    double s = l1 * pj1.norm() / std::sqrt(std::abs(herm(sp, p[j], p[j]).re()));
    lambda[j] = pj1.inverse() * (s / l1);
  }

  SemiNormalizedGram g;
  g.m = m;
  g.i = i;
  for (int k = 0; k < m; ++k) g.lifts.push_back(p[k] * lambda[k]);
  auto build = [&] {
    g.gram = HMatrix(m, m);
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) g.gram(k, j) = herm(sp, g.lifts[j], g.lifts[k]);
    fill_vg(g);
  };
  build();
  Quaternion mu = gauge(g.vg);
  for (auto& l : g.lifts) l = l * mu;
  build();
  return g;
}

std::optional<Quaternion> orbit_equal(const SemiNormalizedGram& g1, const SemiNormalizedGram& g2, double tol) {
  if (g1.m != g2.m || g1.i != g2.i || g1.vg.size() != g2.vg.size())
    throw std::invalid_argument("orbit_equal: shape mismatch");
  double scale = 1;
  for (const auto& q : g1.vg) scale = std::max(scale, q.norm());
  return sp1_align(g1.vg, g2.vg, tol * scale);
}

double projective_matching_error(const HMatrix& c, const std::vector<HVector>& p, const std::vector<HVector>& q) {
  double worst = 0;
  for (size_t k = 0; k < p.size(); ++k) {
    HVector u = c * p[k];
    Quaternion qq, qu;
    for (size_t r = 0; r < u.size(); ++r) {
      qq += q[k][r].conj() * q[k][r];
      qu += q[k][r].conj() * u[r];
    }
    HVector res = u - q[k] * (qq.inverse() * qu);
    worst = std::max(worst, res.norm() / u.norm());
  }
  return worst;
}

namespace {

// positive orthonormal basis of the form-orthogonal complement of span(basis)
std::vector<HVector> form_complement(const HermitianSpace& sp, const std::vector<HVector>& basis) {
  const size_t N = sp.dim(), s = basis.size();
  if (s == N) return {};
  HMatrix rows(s, N);
  for (size_t k = 0; k < s; ++k) {
    HVector hp = sp.H * basis[k];
    for (size_t c = 0; c < N; ++c) rows(k, c) = hp[c].conj();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(complex_embed(rows), Eigen::ComputeFullV);
  const Eigen::Index N2 = 2 * static_cast<Eigen::Index>(N);
  std::vector<HVector> chosen;
  for (Eigen::Index k = N2 - 1; k >= 0 && chosen.size() < N - s; --k) {
    HVector v = from_complex_embedding(Eigen::VectorXcd(svd.matrixV().col(k)));
    auto trial = chosen;
    trial.push_back(v);
    if (hrank(trial, 1e-6) == static_cast<int>(trial.size())) chosen = std::move(trial);
  }
  if (chosen.size() != N - s) throw DegenerateConfiguration("congruent: could not complete the frame");
  return gram_schmidt_indefinite(sp, chosen, std::vector<int>(chosen.size(), 1));
}

HMatrix newton_polish(const HermitianSpace& sp, const HMatrix& c) {
  const size_t N = sp.dim();
  HMatrix e = sp.H * c.adjoint() * sp.H * c;
  return c * (HMatrix::identity(N) * 3.0 - e) * 0.5;
}

}  // namespace

Decision congruent(const PointConfig& a, const PointConfig& b, double tol) {
  if (a.m() != b.m() || a.i != b.i || a.space.n != b.space.n)
    throw std::invalid_argument("congruent: configurations have different shapes");
  Decision d;
  SemiNormalizedGram ga = semi_normalize(a), gb = semi_normalize(b);
  auto mu = orbit_equal(ga, gb, tol);
  if (!mu) {
    d.verdict = Verdict::NotCongruent;
    d.failed = FailedInvariant::GramOrbit;
    double scale = 1;
    for (const auto& q : ga.vg) scale = std::max(scale, q.norm());
    for (size_t k = 0; k < ga.vg.size(); ++k)
      if (!similar(ga.vg[k], gb.vg[k], tol * scale)) {
        d.reason = "semi-normalized entry g" + std::to_string(ga.vg_index[k].first) + "," +
                   std::to_string(ga.vg_index[k].second) + " differs in real part or modulus";
        return d;
      }
    d.reason = "semi-normalized Gram vectors are not related by one Sp(1) conjugation";
    return d;
  }

  const auto& sp = a.space;
  std::vector<HVector> P = ga.lifts, Q;
  for (const auto& q : gb.lifts) Q.push_back(q * *mu);
  std::vector<size_t> idx;
  std::vector<HVector> ps, qs;
  for (size_t k = 0; k < P.size() && ps.size() < sp.dim(); ++k) {
    auto trial = ps;
    trial.push_back(P[k]);
    if (hrank(trial, 1e-8) == static_cast<int>(trial.size())) {
      ps = std::move(trial);
      qs.push_back(Q[k]);
    }
  }
  auto ep = form_complement(sp, ps), eq = form_complement(sp, qs);
  ps.insert(ps.end(), ep.begin(), ep.end());
  qs.insert(qs.end(), eq.begin(), eq.end());
  HMatrix c = HMatrix::from_columns(qs) * inverse(HMatrix::from_columns(ps));
  c = newton_polish(sp, c);

  d.witness = c;
  d.membership_error = (c.adjoint() * sp.H * c - sp.H).norm();
  d.residual = projective_matching_error(c, a.lifts, b.lifts);
  if (d.membership_error < 1e-8 && d.residual < 1e-7) {
    d.verdict = Verdict::Congruent;
  } else {
    d.verdict = Verdict::Inconclusive;
    d.reason = "Gram orbits agree but the witness failed verification";
  }
  return d;
}

SemiNormalizedGram reconstruct_gram(const InvariantProfile& pr) {
  const int m = pr.m, i = pr.i;
  if (m < 3 || i == 1 || i == 2 || i > m) throw std::invalid_argument("reconstruct_gram: unsupported (m, i)");
  if (pr.d() != InvariantProfile::slot_count(m, i))
    throw std::invalid_argument("reconstruct_gram: cross-ratio slot count does not match (m, i)");
  const int lo = std::max(i, 1);
  if (static_cast<int>(pr.pairs.size()) != (m - lo) * (m - lo - 1) / 2 + (i == 0 ? m - 1 : 0))
    throw std::invalid_argument("reconstruct_gram: pair slot count does not match (m, i)");

  SemiNormalizedGram g;
  g.m = m;
  g.i = i;
  g.gram = HMatrix(m, m);
  auto set = [&](int k, int j, const Quaternion& q) {  // 1-based
    g.gram(k - 1, j - 1) = q;
    g.gram(j - 1, k - 1) = q.conj();
  };
  for (int k = 1; k <= m; ++k) g.gram(k - 1, k - 1) = k <= i ? 0.0 : -1.0;

  auto pair = [&](int a, int b) -> const PairSlot& {
    for (const auto& p : pr.pairs)
      if (p.a == a && p.b == b) return p;
    throw std::invalid_argument("reconstruct_gram: missing pair slot");
  };
  auto entry = [](const PairSlot& p) {
    return (Quaternion(-std::cos(p.A)) + p.u * std::sin(p.A)) * std::sqrt(p.d);
  };

  if (i == 0) {
    for (int j = 2; j <= m; ++j) set(1, j, std::sqrt(pair(1, j).d));
    for (int a = 2; a <= m; ++a)
      for (int b = a + 1; b <= m; ++b) set(a, b, entry(pair(a, b)));
    fill_vg(g);
    return g;
  }

  std::vector<double> r(m + 1, 1.0);
  for (const auto& rs : pr.radial) {
    if (rs.j <= i || rs.j > m) throw std::invalid_argument("reconstruct_gram: radial slot out of range");
    r[rs.j] = std::sqrt(rs.value);
  }
  if (static_cast<int>(pr.radial.size()) != m - i)
    throw std::invalid_argument("reconstruct_gram: radial slot count does not match (m, i)");
  for (int j = 2; j <= m; ++j) set(1, j, r[j]);
  Quaternion g23 = Quaternion(-std::cos(pr.A23)) + pr.u0 * std::sin(pr.A23);
  set(2, 3, g23);

  auto slot = [&](SlotKind kind, int k, int j) -> Quaternion {
    for (const auto& s : pr.cross_ratios)
      if (s.kind == kind && s.k == k && s.j == j) return s.value;
    throw std::invalid_argument("reconstruct_gram: missing cross-ratio slot");
  };
  for (int j = 4; j <= m; ++j) {
    set(2, j, g23 * slot(SlotKind::X2, 2, j) * r[j]);
    set(3, j, g23.conj() * slot(SlotKind::X3, 3, j) * r[j]);
  }
  for (int k = 4; k <= i; ++k)
    for (int j = k + 1; j <= m; ++j) set(k, j, g.gram(1, k - 1).conj() * slot(SlotKind::Xk, k, j) * r[j]);
  for (int a = i + 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) set(a, b, entry(pair(a, b)));
  fill_vg(g);
  return g;
}

}  // namespace qhyp
