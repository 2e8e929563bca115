#include "qhyp/hlinalg.hpp"

#include <algorithm>
#include <numeric>

namespace qhyp {

double HVector::norm() const {
  double s = 0;
  for (const auto& q : e_) s += q.norm2();
  return std::sqrt(s);
}

HVector HVector::normalized() const {
  double n = norm();
  if (n == 0) throw std::domain_error("normalizing zero vector");
  return *this * (1.0 / n);
}

HVector& HVector::operator+=(const HVector& o) {
  if (o.size() != size()) throw std::invalid_argument("HVector: dimension mismatch");
  for (size_t k = 0; k < size(); ++k) e_[k] += o[k];
  return *this;
}

HVector& HVector::operator-=(const HVector& o) {
  if (o.size() != size()) throw std::invalid_argument("HVector: dimension mismatch");
  for (size_t k = 0; k < size(); ++k) e_[k] -= o[k];
  return *this;
}

HVector operator+(HVector a, const HVector& b) { return a += b; }
HVector operator-(HVector a, const HVector& b) { return a -= b; }

HVector operator*(const HVector& v, const Quaternion& q) {
  HVector r(v.size());
  for (size_t k = 0; k < v.size(); ++k) r[k] = v[k] * q;
  return r;
}

HVector operator*(const HVector& v, double s) {
  HVector r(v.size());
  for (size_t k = 0; k < v.size(); ++k) r[k] = v[k] * s;
  return r;
}

HMatrix HMatrix::identity(size_t n) {
  HMatrix m(n, n);
  for (size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

HMatrix HMatrix::diagonal(const std::vector<Quaternion>& d) {
  HMatrix m(d.size(), d.size());
  for (size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
  return m;
}

HMatrix HMatrix::from_columns(const std::vector<HVector>& cols) {
  if (cols.empty()) return {};
  HMatrix m(cols[0].size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
  return m;
}

HVector HMatrix::col(size_t c) const {
  HVector v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void HMatrix::set_col(size_t c, const HVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("HMatrix::set_col: dimension mismatch");
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

HMatrix HMatrix::adjoint() const {
  HMatrix m(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

double HMatrix::norm() const {
  double s = 0;
  for (const auto& q : d_) s += q.norm2();
  return std::sqrt(s);
}

HMatrix operator*(const HMatrix& a, const HMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("HMatrix product: dimension mismatch");
  HMatrix m(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c) {
      Quaternion s;
      for (size_t k = 0; k < a.cols(); ++k) s += a(r, k) * b(k, c);
      m(r, c) = s;
    }
  return m;
}

HVector operator*(const HMatrix& a, const HVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("HMatrix*HVector: dimension mismatch");
  HVector out(a.rows());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t k = 0; k < a.cols(); ++k) out[r] += a(r, k) * v[k];
  return out;
}

static void check_same_shape(const HMatrix& a, const HMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("HMatrix: shape mismatch");
}

HMatrix operator+(const HMatrix& a, const HMatrix& b) {
  check_same_shape(a, b);
  HMatrix m = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) m(r, c) += b(r, c);
  return m;
}

HMatrix operator-(const HMatrix& a, const HMatrix& b) {
  check_same_shape(a, b);
  HMatrix m = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) m(r, c) -= b(r, c);
  return m;
}

HMatrix operator*(const HMatrix& a, double s) {
  HMatrix m = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) m(r, c) *= s;
  return m;
}

HMatrix operator*(const HMatrix& a, const Quaternion& q) {
  HMatrix m = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c) * q;
  return m;
}

HMatrix inverse(const HMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(complex_embed(a));
  Eigen::MatrixXcd inv = lu.inverse();
  if (!inv.allFinite()) throw std::domain_error("inverse: singular matrix");
  return from_complex_embedding(inv);
}

HermitianSpace HermitianSpace::corner(int n) {
  if (n < 1) throw std::invalid_argument("HermitianSpace: n must be positive");
  HermitianSpace s;
  s.n = n;
  s.H = HMatrix(n + 1, n + 1);
  s.H(0, n) = 1;
  s.H(n, 0) = 1;
  for (int k = 1; k < n; ++k) s.H(k, k) = 1;
  return s;
}

Quaternion herm(const HermitianSpace& space, const HVector& z, const HVector& w) {
  if (z.size() != space.dim() || w.size() != space.dim())
    throw std::invalid_argument("herm: dimension mismatch");
  Quaternion s;
  const auto& H = space.H;
  for (size_t r = 0; r < z.size(); ++r) {
    Quaternion hz;
    for (size_t c = 0; c < z.size(); ++c)
      if (!H(r, c).is_zero()) hz += H(r, c) * z[c];
    s += w[r].conj() * hz;
  }
  return s;
}

const char* to_string(VectorType t) {
  switch (t) {
    case VectorType::Negative: return "negative";
    case VectorType::Null: return "null";
    case VectorType::Positive: return "positive";
  }
  return "?";
}

VectorType classify_vector(const HermitianSpace& space, const HVector& z, double tol) {
  double n2 = z.norm() * z.norm();
  if (n2 == 0) throw std::invalid_argument("classify_vector: zero vector");
  double h = herm(space, z, z).re();
  if (std::abs(h) <= tol * n2) return VectorType::Null;
  return h < 0 ? VectorType::Negative : VectorType::Positive;
}

std::pair<std::complex<double>, std::complex<double>> complex_split(const Quaternion& q) {
  return {{q.w, q.x}, {q.y, -q.z}};
}

Quaternion from_complex_pair(std::complex<double> c1, std::complex<double> c2) {
  return {c1.real(), c1.imag(), c2.real(), -c2.imag()};
}

Eigen::MatrixXcd complex_embed(const HMatrix& a) {
  const Eigen::Index R = a.rows(), C = a.cols();
  Eigen::MatrixXcd m(2 * R, 2 * C);
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) {
      auto [c1, c2] = complex_split(a(r, c));
      m(r, c) = c1;
      m(r, c + C) = -std::conj(c2);
      m(r + R, c) = c2;
      m(r + R, c + C) = std::conj(c1);
    }
  return m;
}

HMatrix from_complex_embedding(const Eigen::MatrixXcd& m) {
  const Eigen::Index R = m.rows() / 2, C = m.cols() / 2;
  HMatrix a(R, C);
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) a(r, c) = from_complex_pair(m(r, c), m(r + R, c));
  return a;
}

Eigen::VectorXcd complex_embed(const HVector& v) {
  const Eigen::Index N = v.size();
  Eigen::VectorXcd out(2 * N);
  for (Eigen::Index k = 0; k < N; ++k) {
    auto [c1, c2] = complex_split(v[k]);
    out(k) = c1;
    out(k + N) = c2;
  }
  return out;
}

HVector from_complex_embedding(const Eigen::VectorXcd& v) {
  const Eigen::Index N = v.size() / 2;
  HVector out(N);
  for (Eigen::Index k = 0; k < N; ++k) out[k] = from_complex_pair(v(k), v(k + N));
  return out;
}

namespace {

Eigen::MatrixXcd embed_span(const std::vector<HVector>& vs) {
  const Eigen::Index N = vs.empty() ? 0 : vs[0].size();
  Eigen::MatrixXcd m(2 * N, 2 * vs.size());
  for (size_t k = 0; k < vs.size(); ++k) {
    double n = vs[k].norm();
    HVector u = n > 0 ? vs[k] * (1.0 / n) : vs[k];
    m.col(2 * k) = complex_embed(u);
    m.col(2 * k + 1) = complex_embed(u * kJ);
  }
  return m;
}

int complex_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace

int hrank(const std::vector<HVector>& vs, double rel_tol) {
  return (complex_rank(embed_span(vs), rel_tol) + 1) / 2;
}

bool same_line(const HVector& z, const HVector& w, double tol) {
  return hrank({z, w}, tol) <= 1;
}

std::vector<std::complex<double>> char_poly_complex_coeffs(const HMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: matrix not square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(complex_embed(a), false);
  if (es.info() != Eigen::Success) throw std::runtime_error("char_poly: eigenvalue iteration failed");
  const auto& ev = es.eigenvalues();
  std::vector<std::complex<double>> c{1.0};
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (size_t j = 0; j < c.size(); ++j) {
      next[j] += c[j];
      next[j + 1] -= c[j] * ev(k);
    }
    c = std::move(next);
  }
  return c;
}

std::vector<double> char_poly_real_coeffs(const HMatrix& a, double tol) {
  auto c = char_poly_complex_coeffs(a);
  const size_t deg = c.size() - 1;
  std::vector<double> out;
  for (size_t j = 1; j < deg; ++j) {
    double scale = std::max(1.0, std::abs(c[j]));
    if (std::abs(c[j].imag()) > tol * scale)
      throw std::runtime_error("char_poly: non-real coefficient a_" + std::to_string(j));
    if (std::abs(c[j].real() - c[deg - j].real()) > tol * scale)
      throw std::runtime_error("char_poly: coefficients not palindromic at a_" + std::to_string(j));
    out.push_back(c[j].real());
  }
  return out;
}

namespace {

constexpr double kGroupRadius = 1e-4;
constexpr double kNullityThreshold = 1e-8;

struct Group {
  std::complex<double> mean;
  int size = 0;
};

std::vector<Group> group_eigenvalues(const Eigen::VectorXcd& ev) {
  const int n = static_cast<int>(ev.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(ev(a) - ev(b)) < kGroupRadius * std::max(1.0, std::abs(ev(a)))) parent[find(a)] = find(b);
  std::vector<Group> groups;
  std::vector<int> index(n, -1);
  for (int a = 0; a < n; ++a) {
    int r = find(a);
    if (index[r] < 0) {
      index[r] = static_cast<int>(groups.size());
      groups.push_back({});
    }
    auto& g = groups[index[r]];
    g.mean += ev(a);
    ++g.size;
  }
  for (auto& g : groups) g.mean /= static_cast<double>(g.size);
  return groups;
}

// complex coefficient of q (projection onto the complex subfield)
Quaternion complex_part(const Quaternion& q) { return {q.w, q.x, 0, 0}; }

// form-orthonormalize vectors of one eigen class; complex coefficients unless the class is real
void orthonormalize_class(const HermitianSpace& space, std::vector<HVector>& vs, std::vector<int>& signs,
                          bool quaternionic, double null_tol) {
  auto coef = [&](const Quaternion& q) { return quaternionic ? q : complex_part(q); };
  std::vector<HVector> work;
  for (auto& v : vs) work.push_back(v.normalized());
  std::vector<HVector> out;
  signs.clear();
  while (!work.empty()) {
    size_t best = 0;
    double bestval = -1;
    for (size_t k = 0; k < work.size(); ++k) {
      double val = std::abs(herm(space, work[k], work[k]).re()) / (work[k].norm() * work[k].norm());
      if (val > bestval) bestval = val, best = k;
    }
    if (bestval <= null_tol && work.size() > 1) {
      // all null: try to combine two vectors into a non-null one
      size_t ba = 0, bb = 1;
      double bp = -1;
      for (size_t a = 0; a < work.size(); ++a)
        for (size_t b = a + 1; b < work.size(); ++b) {
          double p = herm(space, work[b], work[a]).norm() / (work[a].norm() * work[b].norm());
          if (p > bp) bp = p, ba = a, bb = b;
        }
      if (bp > 1e-8) {
        Quaternion c = coef(herm(space, work[bb], work[ba]).conj());
        work[ba] = (work[ba] + work[bb] * (c * (1.0 / c.norm()))).normalized();
        continue;
      }
    }
    HVector p = work[best];
    work.erase(work.begin() + static_cast<long>(best));
    double h = herm(space, p, p).re();
    if (std::abs(h) <= null_tol * p.norm() * p.norm()) {
      out.push_back(p.normalized());
      signs.push_back(0);
      continue;
    }
    p = p * (1.0 / std::sqrt(std::abs(h)));
    double s = h < 0 ? -1.0 : 1.0;
    for (auto& v : work) {
      Quaternion c = coef(herm(space, v, p) * s);
      v = v - p * c;
      double nv = v.norm();
      if (nv > 0) v = v * (1.0 / nv);
    }
    out.push_back(p);
    signs.push_back(h < 0 ? -1 : 1);
  }
  vs = std::move(out);
}

}  // namespace

EigenData right_eigen(const HermitianSpace& space, const HMatrix& a, double tol) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw std::invalid_argument("right_eigen: dimension mismatch");
  const Eigen::Index N2 = 2 * static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd Ac = complex_embed(a);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Ac, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("right_eigen: eigenvalue iteration failed");
  auto groups = group_eigenvalues(es.eigenvalues());

  EigenData data;
  for (const auto& g : groups) {
    double scale = std::max(1.0, std::abs(g.mean));
    bool real = std::abs(g.mean.imag()) < kGroupRadius * scale;
    if (!real && g.mean.imag() < 0) continue;
    if (!real) {
      bool paired = false;
      for (const auto& h : groups)
        if (h.size == g.size && std::abs(h.mean - std::conj(g.mean)) < kGroupRadius * scale) paired = true;
      if (!paired) throw std::runtime_error("right_eigen: spectrum of the embedding is not conjugation-closed");
    } else if (g.size % 2) {
      throw std::runtime_error("right_eigen: odd real eigenvalue cluster");
    }
    std::complex<double> lambda = real ? std::complex<double>(g.mean.real(), 0) : g.mean;

    Eigen::MatrixXcd shifted = Ac - lambda * Eigen::MatrixXcd::Identity(N2, N2);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double thr = kNullityThreshold * std::max({s(0), Ac.norm(), 1e-300});
    int nullity = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s(k) <= thr) ++nullity;
    if (nullity != g.size)
      throw NotSemisimple("right_eigen: eigenvalue " + std::to_string(lambda.real()) + "+" +
                          std::to_string(lambda.imag()) + "i is defective");

    EigenClass cls;
    cls.rep = lambda;
    if (cls.rep.real() < 0 && real) cls.rep = {cls.rep.real(), 0.0};
    cls.multiplicity = real ? g.size / 2 : g.size;
    std::vector<HVector> vs;
    if (!real) {
      for (int k = 0; k < g.size; ++k) vs.push_back(from_complex_embedding(Eigen::VectorXcd(svd.matrixV().col(N2 - 1 - k))));
    } else {
      std::vector<HVector> chosen;
      for (int k = 0; k < g.size && static_cast<int>(chosen.size()) < cls.multiplicity; ++k) {
        HVector cand = from_complex_embedding(Eigen::VectorXcd(svd.matrixV().col(N2 - 1 - k)));
        auto trial = chosen;
        trial.push_back(cand);
        if (hrank(trial, 1e-6) == static_cast<int>(trial.size())) chosen = std::move(trial);
      }
      if (static_cast<int>(chosen.size()) != cls.multiplicity)
        throw std::runtime_error("right_eigen: could not extract an independent eigenbasis");
      vs = std::move(chosen);
    }
    orthonormalize_class(space, vs, cls.signs, real, tol);
    cls.vectors = std::move(vs);
    cls.type = VectorType::Positive;
    for (int sg : cls.signs) {
      if (sg < 0) cls.type = VectorType::Negative;
      else if (sg == 0 && cls.type != VectorType::Negative) cls.type = VectorType::Null;
    }
    data.classes.push_back(std::move(cls));
  }

  int total = 0;
  for (const auto& c : data.classes) total += c.multiplicity;
  if (total != static_cast<int>(a.rows())) throw std::runtime_error("right_eigen: multiplicities do not add up");

  std::sort(data.classes.begin(), data.classes.end(), [](const EigenClass& x, const EigenClass& y) {
    double mx = std::abs(x.rep), my = std::abs(y.rep);
    if (std::abs(mx - my) > 1e-7 * std::max(1.0, mx)) return mx > my;
    return std::arg(x.rep) < std::arg(y.rep);
  });
  return data;
}

std::vector<HVector> gram_schmidt_indefinite(const HermitianSpace& space, const std::vector<HVector>& vectors,
                                             const std::vector<int>& target_signs, double tol) {
  const size_t K = vectors.size();
  if (target_signs.size() != K) throw std::invalid_argument("gram_schmidt_indefinite: sign count mismatch");
  if (K > space.dim()) throw std::invalid_argument("gram_schmidt_indefinite: too many vectors");
  std::vector<size_t> nulls;
  int want_neg = 0, want_pos = 0;
  for (size_t k = 0; k < K; ++k) {
    if (target_signs[k] == 0) nulls.push_back(k);
    else if (target_signs[k] < 0) ++want_neg;
    else if (target_signs[k] > 0) ++want_pos;
  }
  if (nulls.size() != 0 && nulls.size() != 2)
    throw std::invalid_argument("gram_schmidt_indefinite: nulls must come as one pair");

  // already in the requested shape?
  {
    bool ok = true;
    for (size_t a = 0; a < K && ok; ++a)
      for (size_t b = a; b < K && ok; ++b) {
        Quaternion want;
        if (a == b) want = static_cast<double>(target_signs[a]);
        else if (nulls.size() == 2 && a == nulls[0] && b == nulls[1]) want = 1;
        Quaternion got = a == b ? herm(space, vectors[a], vectors[a]) : herm(space, vectors[a], vectors[b]);
        if (distance(got, want) > tol) ok = false;
      }
    if (ok) return vectors;
  }

  if (hrank(vectors) != static_cast<int>(K)) throw std::invalid_argument("gram_schmidt_indefinite: dependent vectors");

  std::vector<HVector> work;
  for (const auto& v : vectors) work.push_back(v.normalized());
  std::vector<HVector> negs, poss;
  while (!work.empty()) {
    size_t best = 0;
    double bestval = -1;
    for (size_t k = 0; k < work.size(); ++k) {
      double val = std::abs(herm(space, work[k], work[k]).re()) / (work[k].norm() * work[k].norm());
      if (val > bestval) bestval = val, best = k;
    }
    if (bestval <= 1e-8) {
      size_t ba = 0, bb = 0;
      double bp = -1;
      for (size_t a = 0; a < work.size(); ++a)
        for (size_t b = a + 1; b < work.size(); ++b) {
          double p = herm(space, work[b], work[a]).norm() / (work[a].norm() * work[b].norm());
          if (p > bp) bp = p, ba = a, bb = b;
        }
      if (bp <= 1e-8) throw std::invalid_argument("gram_schmidt_indefinite: degenerate span");
      Quaternion c = herm(space, work[bb], work[ba]).conj();
      work[ba] = (work[ba] + work[bb] * (c * (1.0 / c.norm()))).normalized();
      continue;
    }
    HVector p = work[best];
    work.erase(work.begin() + static_cast<long>(best));
    double h = herm(space, p, p).re();
    p = p * (1.0 / std::sqrt(std::abs(h)));
    double s = h < 0 ? -1.0 : 1.0;
    for (auto& v : work) {
      v = v - p * (herm(space, v, p) * s);
      double nv = v.norm();
      if (nv < 1e-12) throw std::invalid_argument("gram_schmidt_indefinite: dependent vectors");
      v = v * (1.0 / nv);
    }
    (h < 0 ? negs : poss).push_back(p);
  }

  int pairs = nulls.empty() ? 0 : 1;
  if (static_cast<int>(negs.size()) != want_neg + pairs || static_cast<int>(poss.size()) != want_pos + pairs)
    throw std::invalid_argument("gram_schmidt_indefinite: unattainable sign pattern");

  std::vector<HVector> out(K);
  size_t ni = 0, pi = 0;
  if (pairs) {
    const HVector& en = negs[ni++];
    const HVector& ep = poss[pi++];
    const double r2 = 1.0 / std::sqrt(2.0);
    out[nulls[0]] = (en + ep) * r2;
    out[nulls[1]] = (ep - en) * r2;
  }
  for (size_t k = 0; k < K; ++k) {
    if (target_signs[k] < 0) out[k] = negs[ni++];
    else if (target_signs[k] > 0) out[k] = poss[pi++];
  }
  return out;
}

}  // namespace qhyp
