#include "qhyp/isom.hpp"

#include <algorithm>

#include "qhyp/sampling.hpp"

namespace qhyp {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Hyperbolic: return "hyperbolic";
    case Classification::Elliptic: return "elliptic";
    case Classification::Parabolic: return "parabolic";
    case Classification::Unclassified: return "unclassified";
  }
  return "?";
}

double membership_error(const HermitianSpace& space, const HMatrix& a) {
  if (a.rows() != space.dim() || a.cols() != space.dim()) return INFINITY;
  double na = a.norm();
  return (a.adjoint() * space.H * a - space.H).norm() / std::max(1.0, na * na);
}

bool is_member(const HermitianSpace& space, const HMatrix& a, double tol) {
  return membership_error(space, a) <= tol;
}

Isometry Isometry::make(const HermitianSpace& space, const HMatrix& a, double tol) {
  double err = membership_error(space, a);
  if (!(err <= tol))
    throw std::invalid_argument("matrix is not in Sp(n,1): membership error " + std::to_string(err));
  Isometry iso;
  iso.space_ = space;
  iso.a_ = a;
  auto coeffs = char_poly_real_coeffs(a, 1e-6);
  iso.trace_.assign(coeffs.begin(), coeffs.begin() + space.n);
  try {
    iso.eigen_ = right_eigen(space, a);
  } catch (const NotSemisimple&) {
    iso.eigen_.reset();
  }
  if (!iso.eigen_) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(complex_embed(a), false);
    bool unit = true;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      if (std::abs(std::abs(es.eigenvalues()(k)) - 1) > 1e-4) unit = false;
    iso.cls_ = unit ? Classification::Parabolic : Classification::Unclassified;
    return iso;
  }
  bool loxo = false, negative = false;
  for (const auto& c : iso.eigen_->classes) {
    if (std::abs(c.rep) > 1 + 1e-6) loxo = true;
    for (int s : c.signs)
      if (s < 0) negative = true;
  }
  if (loxo) iso.cls_ = Classification::Hyperbolic;
  else if (negative) iso.cls_ = Classification::Elliptic;
  else iso.cls_ = Classification::Unclassified;
  return iso;
}

const EigenData& Isometry::eigen() const {
  if (!eigen_) throw UnsupportedIsometry("isometry is not semisimple (parabolic elements are not supported)");
  return *eigen_;
}

bool Isometry::regular() const {
  if (!eigen_) return false;
  for (const auto& c : eigen_->classes)
    if (c.multiplicity != 1) return false;
  return true;
}

Classification classify(const Isometry& a) { return a.classification(); }

std::vector<double> real_trace(const Isometry& a) { return a.real_trace(); }

namespace {

int negative_count(const EigenClass& c) {
  return static_cast<int>(std::count_if(c.signs.begin(), c.signs.end(), [](int s) { return s < 0; }));
}

bool traces_equal(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  if (x.size() != y.size()) return false;
  for (size_t k = 0; k < x.size(); ++k)
    if (std::abs(x[k] - y[k]) > tol * std::max(1.0, std::abs(x[k]))) return false;
  return true;
}

void require_semisimple(const Isometry& a) {
  if (!a.semisimple()) throw UnsupportedIsometry("parabolic or non-semisimple input is not supported");
}

}  // namespace

bool same_eigen_classes(const EigenData& x, const EigenData& y, double tol) {
  if (x.classes.size() != y.classes.size()) return false;
  for (size_t k = 0; k < x.classes.size(); ++k) {
    const auto& a = x.classes[k];
    const auto& b = y.classes[k];
    if (a.multiplicity != b.multiplicity || negative_count(a) != negative_count(b)) return false;
    if (std::abs(a.rep - b.rep) > tol * std::max(1.0, std::abs(a.rep))) return false;
  }
  return true;
}

bool conjugate_single(const Isometry& a, const Isometry& b, double tol) {
  require_semisimple(a);
  require_semisimple(b);
  if (a.n() != b.n() || a.classification() != b.classification()) return false;
  return same_eigen_classes(a.eigen(), b.eigen(), tol);
}

bool equal_by_invariants(const Isometry& a, const Isometry& b, double tol) {
  require_semisimple(a);
  require_semisimple(b);
  if (a.n() != b.n()) return false;
  if (!traces_equal(a.real_trace(), b.real_trace(), tol)) return false;
  if (!same_eigen_classes(a.eigen(), b.eigen(), tol)) return false;
  for (size_t k = 0; k < a.eigen().classes.size(); ++k) {
    const auto& ca = a.eigen().classes[k];
    const auto& cb = b.eigen().classes[k];
    auto all = ca.vectors;
    all.insert(all.end(), cb.vectors.begin(), cb.vectors.end());
    if (ca.real()) {
      if (hrank(all, 1e-6) != ca.multiplicity) return false;
    } else {
      // eigensets are complex subspaces; compare their complex spans
      Eigen::MatrixXcd m(2 * a.space().dim(), all.size());
      for (size_t c = 0; c < all.size(); ++c) m.col(c) = complex_embed(all[c].normalized());
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
      int rank = 0;
      for (Eigen::Index s = 0; s < svd.singularValues().size(); ++s)
        if (svd.singularValues()(s) > 1e-6 * svd.singularValues()(0)) ++rank;
      if (rank != ca.multiplicity) return false;
    }
  }
  return true;
}

HMatrix normal_form(const EigenSpec& spec) {
  std::vector<Quaternion> d;
  auto push = [&](std::complex<double> c, int times) {
    for (int k = 0; k < times; ++k) d.push_back(Quaternion::from_complex(c));
  };
  if (spec.kind == Classification::Hyperbolic) {
    if (!(spec.lead.modulus > 1)) throw std::invalid_argument("hyperbolic spec needs r > 1");
    push(std::polar(spec.lead.modulus, spec.lead.angle), 1);
    for (const auto& c : spec.positive) push(std::polar(1.0, c.angle), c.multiplicity);
    push(std::polar(1.0 / spec.lead.modulus, spec.lead.angle), 1);
  } else if (spec.kind == Classification::Elliptic) {
    push(std::polar(1.0, spec.lead.angle), spec.lead.multiplicity);
    for (const auto& c : spec.positive) push(std::polar(1.0, c.angle), c.multiplicity);
  } else {
    throw std::invalid_argument("spec kind must be hyperbolic or elliptic");
  }
  return HMatrix::diagonal(d);
}

Isometry random_semisimple(const HermitianSpace& space, const EigenSpec& spec, std::uint64_t seed) {
  HMatrix e = normal_form(spec);
  if (e.rows() != space.dim()) throw std::invalid_argument("eigen spec multiplicities must sum to n+1");
  for (const auto& c : spec.positive)
    if (c.multiplicity < 1) throw std::invalid_argument("invalid multiplicity in eigen spec");
  Rng rng(seed);
  HMatrix f = random_frame(space, spec.kind, rng);
  HMatrix a = f * e * frame_inverse(space, f, frame_gram(spec.kind, space.dim()));
  Isometry iso = Isometry::make(space, a);
  if (iso.classification() != spec.kind)
    throw std::runtime_error("random_semisimple: classification check failed");
  return iso;
}

}  // namespace qhyp
