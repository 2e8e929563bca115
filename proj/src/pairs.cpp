#include "qhyp/pairs.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "qhyp/sampling.hpp"

namespace qhyp {

HMatrix EigenFrame::gram() const { return frame_gram(kind, vectors.size()); }

HMatrix EigenFrame::inverse(const HermitianSpace& space) const {
  return frame_inverse(space, matrix(), gram());
}

namespace {

void require_frame_kind(const Isometry& a) {
  if (!a.semisimple()) throw UnsupportedIsometry("eigenframe: isometry is not semisimple");
  if (a.classification() != Classification::Hyperbolic && a.classification() != Classification::Elliptic)
    throw UnsupportedIsometry("eigenframe: isometry is neither hyperbolic nor elliptic");
}

Quaternion complex_part(const Quaternion& q) { return {q.w, q.x, 0, 0}; }

}  // namespace

EigenFrame eigenframe(const Isometry& a) {
  require_frame_kind(a);
  const auto& sp = a.space();
  const auto& classes = a.eigen().classes;
  EigenFrame f;
  f.kind = a.classification();
  if (f.kind == Classification::Hyperbolic) {
    const auto& ca = classes.front();
    const auto& cr = classes.back();
    if (std::abs(ca.rep) <= 1 || std::abs(cr.rep) >= 1 || ca.multiplicity != 1 || cr.multiplicity != 1)
      throw std::runtime_error("eigenframe: unexpected hyperbolic spectrum");
    HVector av = ca.vectors[0], rv = cr.vectors[0];
    Quaternion q = herm(sp, av, rv);
    if (!cr.real()) q = complex_part(q);
    rv = rv * q.conj().inverse();
    f.vectors.push_back(av);
    f.eigenvalues.push_back(Quaternion::from_complex(ca.rep));
    for (size_t c = 1; c + 1 < classes.size(); ++c)
      for (const auto& x : classes[c].vectors) {
        f.vectors.push_back(x);
        f.eigenvalues.push_back(Quaternion::from_complex(classes[c].rep));
      }
    f.vectors.push_back(rv);
    f.eigenvalues.push_back(Quaternion::from_complex(cr.rep));
  } else {
    for (const auto& c : classes)
      for (size_t k = 0; k < c.vectors.size(); ++k)
        if (c.signs[k] < 0) {
          f.vectors.push_back(c.vectors[k]);
          f.eigenvalues.push_back(Quaternion::from_complex(c.rep));
        }
    if (f.vectors.size() != 1) throw std::runtime_error("eigenframe: elliptic element needs exactly one negative direction");
    for (const auto& c : classes)
      for (size_t k = 0; k < c.vectors.size(); ++k)
        if (c.signs[k] > 0) {
          f.vectors.push_back(c.vectors[k]);
          f.eigenvalues.push_back(Quaternion::from_complex(c.rep));
        }
  }
  if (f.vectors.size() != sp.dim()) throw std::runtime_error("eigenframe: incomplete frame");
  return f;
}

double frame_normalization_error(const HermitianSpace& space, const EigenFrame& f) {
  HMatrix g = f.gram();
  double worst = 0;
  for (size_t k = 0; k < f.size(); ++k)
    for (size_t l = 0; l < f.size(); ++l)
      worst = std::max(worst, distance(herm(space, f.vectors[l], f.vectors[k]), g(k, l)));
  return worst;
}

std::vector<HVector> associated_points(const EigenFrame& f) {
  std::vector<HVector> p;
  const double s2 = std::numbers::sqrt2;
  if (f.kind == Classification::Hyperbolic) {
    p.push_back(f.a());
    p.push_back(f.r());
    HVector mid = (f.a() - f.r()) * (1 / s2);
    for (size_t l = 1; l + 1 < f.size(); ++l) p.push_back(mid + f.vectors[l]);
  } else {
    p.push_back(f.vectors[0]);
    for (size_t j = 1; j < f.size(); ++j) p.push_back(f.vectors[0] * s2 + f.vectors[j]);
  }
  return p;
}

std::vector<ProjPoint> associated_points(const Isometry& a) {
  std::vector<ProjPoint> out;
  for (const auto& v : associated_points(eigenframe(a))) out.push_back(ProjPoint::make(a.space(), v));
  return out;
}

GrassmannianPoint grassmannian_point(const Isometry& a, const SimilarityClass& cls, double tol) {
  for (const auto& c : a.eigen().classes)
    if (SimilarityClass::of(c.rep).same(cls, tol)) {
      if (c.real()) throw std::invalid_argument("grassmannian_point: real class has a trivial Grassmannian");
      return {c.rep, c.vectors};
    }
  throw std::invalid_argument("grassmannian_point: class not in the spectrum");
}

namespace {

int complex_rank(const Eigen::MatrixXcd& m, double rel) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel * s(0)) ++r;
  return r;
}

}  // namespace

bool grassmannian_equal(const GrassmannianPoint& p, const GrassmannianPoint& q, double tol) {
  if (std::abs(p.rep - q.rep) > tol * std::max(1.0, std::abs(p.rep)))
    throw std::invalid_argument("grassmannian_equal: different classes");
  if (p.basis.size() != q.basis.size()) return false;
  const Eigen::Index N2 = 2 * static_cast<Eigen::Index>(p.basis[0].size());
  Eigen::MatrixXcd m(N2, p.basis.size() + q.basis.size());
  Eigen::Index c = 0;
  for (const auto& v : p.basis) m.col(c++) = complex_embed(v.normalized());
  for (const auto& v : q.basis) m.col(c++) = complex_embed(v.normalized());
  return complex_rank(m, 1e-6) == static_cast<int>(p.basis.size());
}

namespace {

// complex-embedded subspaces whose non-positive vectors are fixed points in the closure
std::vector<Eigen::MatrixXcd> fixed_subspaces(const Isometry& a) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& c : a.eigen().classes) {
    bool fixed = false;
    for (int s : c.signs)
      if (s <= 0) fixed = true;
    if (!fixed) continue;
    const Eigen::Index N2 = 2 * static_cast<Eigen::Index>(a.space().dim());
    Eigen::MatrixXcd m(N2, 2 * c.vectors.size());
    for (size_t k = 0; k < c.vectors.size(); ++k) {
      HVector v = c.vectors[k].normalized();
      m.col(2 * k) = complex_embed(v);
      m.col(2 * k + 1) = complex_embed(v * kJ);
    }
    out.push_back(m);
  }
  return out;
}

Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  int r = complex_rank(m, 1e-10);
  return svd.matrixU().leftCols(r);
}

}  // namespace

bool common_fixed_point(const Isometry& a, const Isometry& b, double tol) {
  const Eigen::MatrixXcd Hc = complex_embed(a.space().H);
  for (const auto& u0 : fixed_subspaces(a))
    for (const auto& w0 : fixed_subspaces(b)) {
      Eigen::MatrixXcd U = orthonormal_columns(u0), W = orthonormal_columns(w0);
      Eigen::MatrixXcd S(U.rows(), U.cols() + W.cols());
      S << U, -W;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      std::vector<Eigen::VectorXcd> inter;
      for (Eigen::Index k = 0; k < S.cols(); ++k) {
        double sk = k < s.size() ? s(k) : 0.0;
        if (sk <= tol * s(0)) inter.push_back(U * svd.matrixV().col(k).head(U.cols()));
      }
      if (inter.empty()) continue;
      Eigen::MatrixXcd X(U.rows(), inter.size());
      for (size_t k = 0; k < inter.size(); ++k) X.col(k) = inter[k];
      X = orthonormal_columns(X);
      if (X.cols() == 0) continue;
      Eigen::MatrixXcd K = X.adjoint() * Hc * X;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
      if (es.eigenvalues()(0) <= 1e-8) return true;
    }
  return false;
}

std::pair<EigenFrame, EigenFrame> pair_frame(const Isometry& a, const Isometry& b) {
  if (a.n() != b.n()) throw std::invalid_argument("pair_frame: dimension mismatch");
  EigenFrame fa = eigenframe(a), fb = eigenframe(b);
  if (common_fixed_point(a, b)) throw HypothesisViolation("pair_frame: the two isometries share a fixed point");
  const auto& sp = a.space();
  const bool ha = fa.kind == Classification::Hyperbolic, hb = fb.kind == Classification::Hyperbolic;

  // rescale a null pair (a s, r conj(s)^-1), keeping <a, r> = 1 and the eigen-equations
  auto rescale_pair = [](EigenFrame& f, const Quaternion& s) {
    Quaternion t = s.conj().inverse();
    f.vectors.front() = f.vectors.front() * s;
    f.eigenvalues.front() = s.inverse() * f.eigenvalues.front() * s;
    f.vectors.back() = f.vectors.back() * t;
    f.eigenvalues.back() = t.inverse() * f.eigenvalues.back() * t;
  };

  if (ha && hb) {
    Quaternion q = herm(sp, fa.r(), fb.a());
    rescale_pair(fb, q.conj().inverse());
  } else if (ha && !hb) {
    Quaternion q = herm(sp, fa.r(), fb.vectors[0]);
    Quaternion s = q.inverse();  // r_A -> r_A s
    rescale_pair(fa, s.conj().inverse());
  } else if (!ha && hb) {
    Quaternion q = herm(sp, fa.vectors[0], fb.a());
    rescale_pair(fb, q.conj().inverse());
  } else {
    Quaternion q = herm(sp, fa.vectors[0], fb.vectors[0]);
    Quaternion s = q * (1.0 / q.norm());
    fb.vectors[0] = fb.vectors[0] * s;
    fb.eigenvalues[0] = s.inverse() * fb.eigenvalues[0] * s;
  }
  return {fa, fb};
}

namespace {

std::vector<int> multiplicities(const EigenFrame& f) {
  std::vector<int> m;
  for (size_t k = 0; k < f.size(); ++k) {
    if (k > 0 && similar(f.eigenvalues[k], f.eigenvalues[k - 1], 1e-7) && !m.empty()) ++m.back();
    else m.push_back(1);
  }
  return m;
}

int count_distinct(const std::vector<HVector>& pts) {
  int t = 0;
  for (size_t a = 0; a < pts.size(); ++a) {
    bool dup = false;
    for (size_t b = 0; b < a && !dup; ++b) dup = same_line(pts[a], pts[b], 1e-9);
    if (!dup) ++t;
  }
  return t;
}

std::vector<HVector> ordered_points(const EigenFrame& fa, const EigenFrame& fb) {
  auto pa = associated_points(fa), pb = associated_points(fb);
  std::vector<HVector> out;
  if (fa.kind == Classification::Hyperbolic && fb.kind == Classification::Hyperbolic) {
    out = {pa[0], pa[1], pb[0], pb[1]};
    out.insert(out.end(), pa.begin() + 2, pa.end());
    out.insert(out.end(), pb.begin() + 2, pb.end());
  } else if (fa.kind != Classification::Hyperbolic && fb.kind == Classification::Hyperbolic) {
    out = pb;
    out.insert(out.end(), pa.begin(), pa.end());
  } else {
    out = pa;
    out.insert(out.end(), pb.begin(), pb.end());
  }
  return out;
}

}  // namespace

CanonicalTuple canonical_tuple(const HermitianSpace& space, EigenFrame fa, EigenFrame fb) {
  CanonicalTuple t;
  t.multiplicities_a = multiplicities(fa);
  t.multiplicities_b = multiplicities(fb);
  for (int attempt = 0;; ++attempt) {
    auto pa = associated_points(fa), pb = associated_points(fb);
    // find a point of A coinciding with a point of B
    int hit = -1;
    for (size_t k = 0; k < pa.size() && hit < 0; ++k)
      for (const auto& q : pb)
        if (same_line(pa[k], q, 1e-9)) {
          hit = static_cast<int>(k);
          break;
        }
    if (hit < 0) break;
    // points built from x-vectors can be moved by a unit scalar commuting with the eigenvalue
    size_t vec = fa.kind == Classification::Hyperbolic ? static_cast<size_t>(hit) - 1 : static_cast<size_t>(hit);
    bool movable = fa.kind == Classification::Hyperbolic ? hit >= 2 : hit >= 1;
    if (!movable || attempt >= 8) throw DegenerateConfiguration("canonical_tuple: coincident points cannot be separated");
    double phi = 2 * std::numbers::pi * (attempt + 1) / 7.0;
    const Quaternion& lam = fa.eigenvalues[vec];
    Quaternion axis = lam.im_norm() > 1e-9 ? lam.im().normalized() : kI;
    Quaternion u = Quaternion(std::cos(phi)) + axis * std::sin(phi);
    fa.vectors[vec] = fa.vectors[vec] * u;
    ++t.repairs;
  }
  t.points = ordered_points(fa, fb);
  for (const auto& p : t.points) t.types.push_back(classify_vector(space, p, 1e-8));
  t.type = count_distinct(t.points);
  return t;
}

CanonicalTuple canonical_tuple(const Isometry& a, const Isometry& b) {
  auto [fa, fb] = pair_frame(a, b);
  return canonical_tuple(a.space(), fa, fb);
}

double conjugation_residual(const HermitianSpace& space, const HMatrix& c, const HMatrix& a, const HMatrix& b,
                            const HMatrix& a2, const HMatrix& b2) {
  HMatrix ci = space.H * c.adjoint() * space.H;
  return (c * a * ci - a2).norm() + (c * b * ci - b2).norm();
}

namespace {

std::vector<Quaternion> entry_basis(const Quaternion& lambda, bool restrict) {
  if (!restrict || lambda.im_norm() <= 1e-9 * std::max(1.0, lambda.norm())) return {1.0, kI, kJ, kK};
  return {1.0, lambda.im().normalized()};
}

struct DiagonalSolution {
  std::vector<Quaternion> d1, d2;
};

void put(Eigen::MatrixXd& m, Eigen::Index row, Eigen::Index col, const Quaternion& q, double sign = 1) {
  m(row, col) += sign * q.w;
  m(row + 1, col) += sign * q.x;
  m(row + 2, col) += sign * q.y;
  m(row + 3, col) += sign * q.z;
}

// diagonal D1, D2 with D1 N = N2 D2, entries in the given real subspaces, D1* G D1 = G
std::optional<DiagonalSolution> solve_diagonal(const HMatrix& n, const HMatrix& n2, const HMatrix& g,
                                               const std::vector<std::vector<Quaternion>>& b1,
                                               const std::vector<std::vector<Quaternion>>& b2) {
  const size_t N = n.rows();
  std::vector<Eigen::Index> off1(N + 1, 0), off2(N + 1, 0);
  for (size_t k = 0; k < N; ++k) off1[k + 1] = off1[k] + b1[k].size();
  for (size_t k = 0; k < N; ++k) off2[k + 1] = off2[k] + b2[k].size();
  const Eigen::Index p1 = off1[N], p2 = off2[N];
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(4 * N * N, p1 + p2);
  for (size_t k = 0; k < N; ++k)
    for (size_t l = 0; l < N; ++l) {
      Eigen::Index row = 4 * (k * N + l);
      for (size_t e = 0; e < b1[k].size(); ++e) put(lin, row, off1[k] + e, b1[k][e] * n(k, l));
      for (size_t e = 0; e < b2[l].size(); ++e) put(lin, row, p1 + off2[l] + e, n2(k, l) * b2[l][e], -1);
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lin, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < lin.cols(); ++k) {
    double sk = k < s.size() ? s(k) : 0.0;
    if (sk <= 1e-7 * s(0)) null_cols.push_back(k);
  }
  if (null_cols.empty()) return std::nullopt;
  Eigen::MatrixXd Z(lin.cols(), null_cols.size());
  for (size_t k = 0; k < null_cols.size(); ++k) Z.col(k) = svd.matrixV().col(null_cols[k]);
  const Eigen::Index q = Z.cols();

  auto diag1 = [&](const Eigen::VectorXd& y) {
    std::vector<Quaternion> d(N);
    for (size_t k = 0; k < N; ++k)
      for (size_t e = 0; e < b1[k].size(); ++e) d[k] += b1[k][e] * y(off1[k] + e);
    return d;
  };
  auto diag2 = [&](const Eigen::VectorXd& y) {
    std::vector<Quaternion> d(N);
    for (size_t k = 0; k < N; ++k)
      for (size_t e = 0; e < b2[k].size(); ++e) d[k] += b2[k][e] * y(p1 + off2[k] + e);
    return d;
  };
  auto residual = [&](const Eigen::VectorXd& z) {
    auto d = diag1(Z * z);
    std::vector<double> r;
    for (size_t k = 0; k < N; ++k)
      for (size_t l = k; l < N; ++l) {
        if (g(k, l).is_zero()) continue;
        Quaternion e = d[k].conj() * g(k, l) * d[l] - g(k, l);
        r.push_back(e.w);
        if (k != l) {
          r.push_back(e.x);
          r.push_back(e.y);
          r.push_back(e.z);
        }
      }
    return Eigen::Map<Eigen::VectorXd>(r.data(), r.size()).eval();
  };

  std::vector<Eigen::VectorXd> starts;
  for (Eigen::Index k = 0; k < q; ++k) starts.push_back(Eigen::VectorXd::Unit(q, k));
  std::mt19937_64 rng(20240531);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 12; ++k) {
    Eigen::VectorXd z(q);
    for (Eigen::Index a = 0; a < q; ++a) z(a) = gauss(rng);
    starts.push_back(z);
  }

  for (auto z : starts) {
    auto d = diag1(Z * z);
    double mean = 0;
    for (const auto& x : d) mean += x.norm2();
    mean /= static_cast<double>(N);
    if (mean <= 0) continue;
    z /= std::sqrt(mean);
    double mu = 1e-3;
    Eigen::VectorXd r = residual(z);
    for (int it = 0; it < 200 && r.norm() > 1e-14; ++it) {
      Eigen::MatrixXd J(r.size(), q);
      for (Eigen::Index a = 0; a < q; ++a) {
        Eigen::VectorXd h = Eigen::VectorXd::Zero(q);
        h(a) = 1e-7;
        J.col(a) = (residual(z + h) - residual(z - h)) / 2e-7;
      }
      Eigen::MatrixXd JtJ = J.transpose() * J;
      Eigen::VectorXd grad = J.transpose() * r;
      bool improved = false;
      for (int inner = 0; inner < 30 && !improved; ++inner) {
        Eigen::MatrixXd Aug = JtJ;
        Aug.diagonal().array() += mu * (1 + JtJ.diagonal().array());
        Eigen::VectorXd step = Aug.ldlt().solve(-grad);
        Eigen::VectorXd rt = residual(z + step);
        if (rt.norm() < r.norm()) {
          z += step;
          r = rt;
          mu = std::max(mu / 3, 1e-15);
          improved = true;
        } else {
          mu *= 4;
        }
      }
      if (!improved) break;
    }
    if (r.norm() < 1e-9) {
      Eigen::VectorXd y = Z * z;
      return DiagonalSolution{diag1(y), diag2(y)};
    }
  }
  return std::nullopt;
}

bool traces_match(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return false;
  for (size_t k = 0; k < x.size(); ++k)
    if (std::abs(x[k] - y[k]) > 1e-6 * std::max(1.0, std::abs(x[k]))) return false;
  return true;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)); }

// lift-invariant quantities of the fixed points; used when the full decider does not apply
std::vector<double> fixed_point_invariants(const Isometry& a, const Isometry& b) {
  const auto& sp = a.space();
  std::vector<double> out;
  auto negative_line = [](const Isometry& x) -> std::optional<HVector> {
    std::optional<HVector> v;
    int count = 0;
    for (const auto& c : x.eigen().classes)
      for (size_t k = 0; k < c.vectors.size(); ++k)
        if (c.signs[k] < 0) {
          v = c.vectors[k];
          ++count;
        }
    if (count != 1 || x.eigen().classes.size() == 0) return std::nullopt;
    for (const auto& c : x.eigen().classes)
      if (c.type == VectorType::Negative && c.multiplicity != 1) return std::nullopt;
    return v;
  };
  const bool ha = a.classification() == Classification::Hyperbolic;
  const bool hb = b.classification() == Classification::Hyperbolic;
  if (ha && hb) {
    auto fa = eigenframe(a), fb = eigenframe(b);
    auto t = cross_ratio_triple(sp, fa.a(), fa.r(), fb.a(), fb.r());
    for (const auto& x : {t.X1, t.X2, t.X3}) {
      out.push_back(x.re());
      out.push_back(x.norm());
    }
  } else if (!ha && !hb) {
    auto xa = negative_line(a), xb = negative_line(b);
    if (xa && xb) out.push_back(distance_invariant(sp, *xa, *xb));
  } else {
    const Isometry& h = ha ? a : b;
    const Isometry& e = ha ? b : a;
    auto f = eigenframe(h);
    auto x = negative_line(e);
    if (x) {
      double num = herm(sp, *x, f.a()).norm() * herm(sp, f.r(), *x).norm();
      double den = herm(sp, f.a(), f.r()).norm() * std::abs(herm(sp, *x, *x).re());
      out.push_back(num / den);
      out.push_back(angular_invariant(sp, f.a(), f.r(), *x));
    }
  }
  return out;
}

HMatrix newton_polish(const HermitianSpace& sp, const HMatrix& c) {
  HMatrix e = sp.H * c.adjoint() * sp.H * c;
  return c * (HMatrix::identity(sp.dim()) * 3.0 - e) * 0.5;
}

// project c onto the numerical null space of X -> (X A - A2 X, X B - B2 X), then restore membership
HMatrix refine_conjugator(const HermitianSpace& sp, const HMatrix& c, const HMatrix& a, const HMatrix& b,
                          const HMatrix& a2, const HMatrix& b2) {
  const size_t N = sp.dim();
  const Eigen::Index P = 4 * N * N;
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(2 * P, P);
  const Quaternion units[4] = {1.0, kI, kJ, kK};
  for (size_t r = 0; r < N; ++r)
    for (size_t col = 0; col < N; ++col)
      for (int e = 0; e < 4; ++e) {
        HMatrix x(N, N);
        x(r, col) = units[e];
        HMatrix ra = x * a - a2 * x, rb = x * b - b2 * x;
        Eigen::Index var = 4 * (r * N + col) + e;
        for (size_t k = 0; k < N * N; ++k) {
          put(lin, 4 * k, var, ra(k / N, k % N));
          put(lin, P + 4 * k, var, rb(k / N, k % N));
        }
      }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lin, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < s.size() && s(s.size() - 1 - keep) <= 1e-8 * s(0)) ++keep;
  keep = std::max<Eigen::Index>(keep, 1);
  Eigen::MatrixXd V = svd.matrixV().rightCols(keep);
  Eigen::VectorXd y(P);
  for (size_t r = 0; r < N; ++r)
    for (size_t col = 0; col < N; ++col) {
      const Quaternion& q = c(r, col);
      y.segment<4>(4 * (r * N + col)) << q.w, q.x, q.y, q.z;
    }
  y = V * (V.transpose() * y);
  HMatrix out(N, N);
  for (size_t r = 0; r < N; ++r)
    for (size_t col = 0; col < N; ++col) {
      Eigen::Index k = 4 * (r * N + col);
      out(r, col) = Quaternion(y(k), y(k + 1), y(k + 2), y(k + 3));
    }
  // real rescaling so that C* H C = H on average
  HMatrix e = sp.H * out.adjoint() * sp.H * out;
  double tr = 0;
  for (size_t k = 0; k < N; ++k) tr += e(k, k).w;
  if (tr <= 0) return c;
  out = out * (1.0 / std::sqrt(tr / static_cast<double>(N)));
  for (int it = 0; it < 3; ++it) out = newton_polish(sp, out);
  return out;
}

}  // namespace

Decision pair_conjugate(const Isometry& a, const Isometry& b, const Isometry& a2, const Isometry& b2, double tol) {
  for (const Isometry* x : {&a, &b, &a2, &b2})
    if (!x->semisimple()) throw UnsupportedIsometry("pair_conjugate: all four elements must be semisimple");
  if (a.n() != b.n() || a.n() != a2.n() || a.n() != b2.n())
    throw std::invalid_argument("pair_conjugate: dimension mismatch");
  const auto& sp = a.space();
  Decision d;
  d.verdict = Verdict::NotConjugate;

  if (!traces_match(a.real_trace(), a2.real_trace()) || !traces_match(b.real_trace(), b2.real_trace())) {
    d.failed = FailedInvariant::RealTrace;
    d.reason = "real traces differ";
    return d;
  }
  if (a.classification() != a2.classification() || b.classification() != b2.classification() ||
      !same_eigen_classes(a.eigen(), a2.eigen(), 1e-6) || !same_eigen_classes(b.eigen(), b2.eigen(), 1e-6)) {
    d.failed = FailedInvariant::EigenClasses;
    d.reason = "eigenvalue classes or their negative directions differ";
    return d;
  }
  if (common_fixed_point(a, b) || common_fixed_point(a2, b2))
    throw HypothesisViolation("pair_conjugate: a pair has a common fixed point");

  if (!a.regular() || !b.regular()) {
    auto i1 = fixed_point_invariants(a, b), i2 = fixed_point_invariants(a2, b2);
    for (size_t k = 0; k < std::min(i1.size(), i2.size()); ++k)
      if (!close(i1[k], i2[k])) {
        d.failed = FailedInvariant::CanonicalOrbit;
        d.reason = "fixed-point invariants differ";
        return d;
      }
    d.verdict = Verdict::Inconclusive;
    d.reason = "higher multiplicity: all computed invariants agree";
    return d;
  }

  EigenFrame fa = eigenframe(a), fb = eigenframe(b), fa2 = eigenframe(a2), fb2 = eigenframe(b2);
  HMatrix n = fa.inverse(sp) * fb.matrix();
  HMatrix n2 = fa2.inverse(sp) * fb2.matrix();
  HMatrix g = fa.gram();
  const size_t N = sp.dim();

  std::vector<std::vector<Quaternion>> full(N, entry_basis(1.0, false)), z1, z2;
  if (!solve_diagonal(n, n2, g, full, full)) {
    d.failed = FailedInvariant::CanonicalOrbit;
    d.reason = "associated point tuples lie in different canonical orbits";
    return d;
  }
  for (size_t k = 0; k < N; ++k) {
    z1.push_back(entry_basis(fa.eigenvalues[k], true));
    z2.push_back(entry_basis(fb.eigenvalues[k], true));
  }
  auto sol = solve_diagonal(n, n2, g, z1, z2);
  if (!sol) {
    d.failed = FailedInvariant::Grassmannian;
    d.reason = "eigenvalue Grassmannian points differ";
    return d;
  }

  HMatrix c = fa2.matrix() * HMatrix::diagonal(sol->d1) * fa.inverse(sp);
  c = newton_polish(sp, c);
  double res = conjugation_residual(sp, c, a.matrix(), b.matrix(), a2.matrix(), b2.matrix());
  HMatrix refined = refine_conjugator(sp, c, a.matrix(), b.matrix(), a2.matrix(), b2.matrix());
  double res2 = conjugation_residual(sp, refined, a.matrix(), b.matrix(), a2.matrix(), b2.matrix());
  if (res2 < res) c = refined, res = res2;
  d.witness = c;
  d.membership_error = membership_error(sp, c);
  d.residual = res;
  if (d.residual < tol && d.membership_error < 1e-8) {
    d.verdict = Verdict::Conjugate;
  } else {
    d.verdict = Verdict::Inconclusive;
    d.reason = "candidate conjugator failed verification";
  }
  return d;
}

}  // namespace qhyp
