#include "qhyp/sampling.hpp"

#include <algorithm>
#include <numbers>

namespace qhyp {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Quaternion random_quaternion(Rng& rng) {
  return {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
}

Quaternion random_unit_quaternion(Rng& rng) {
  std::normal_distribution<double> g;
  Quaternion q{g(rng), g(rng), g(rng), g(rng)};
  return q.normalized();
}

HVector random_hvector(Rng& rng, size_t dim) {
  HVector v(dim);
  for (size_t k = 0; k < dim; ++k) v[k] = random_quaternion(rng);
  return v;
}

HMatrix frame_gram(Classification kind, size_t dim) {
  if (kind == Classification::Hyperbolic) return HermitianSpace::corner(static_cast<int>(dim) - 1).H;
  HMatrix g = HMatrix::identity(dim);
  g(0, 0) = -1;
  return g;
}

HMatrix frame_inverse(const HermitianSpace& space, const HMatrix& frame, const HMatrix& gf) {
  // gf is +-1 diagonal or the corner form, both self-inverse
  return gf * frame.adjoint() * space.H;
}

namespace {

double condition_number(const HMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(complex_embed(m));
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace

HMatrix random_frame(const HermitianSpace& space, Classification kind, Rng& rng) {
  const size_t N = space.dim();
  std::vector<int> signs(N, 1);
  if (kind == Classification::Hyperbolic) {
    signs.front() = 0;
    signs.back() = 0;
  } else {
    signs.front() = -1;
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<HVector> vs;
    for (size_t k = 0; k < N; ++k) vs.push_back(random_hvector(rng, N));
    try {
      HMatrix f = HMatrix::from_columns(gram_schmidt_indefinite(space, vs, signs));
      if (condition_number(f) <= 1e6) return f;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("random_frame: could not draw a well-conditioned frame");
}

HMatrix random_isometry(const HermitianSpace& space, Rng& rng) {
  return random_frame(space, Classification::Hyperbolic, rng);
}

HVector random_null_vector(const HermitianSpace& space, Rng& rng) {
  return random_frame(space, Classification::Hyperbolic, rng).col(0);
}

HVector random_negative_vector(const HermitianSpace& space, Rng& rng) {
  return random_frame(space, Classification::Elliptic, rng).col(0);
}

std::vector<HVector> random_config_lifts(const HermitianSpace& space, int m, int i, Rng& rng) {
  std::vector<HVector> out;
  for (int k = 0; k < m; ++k) {
    HVector v = k < i ? random_null_vector(space, rng) : random_negative_vector(space, rng);
    Quaternion s = random_quaternion(rng);
    out.push_back(v * (s * (uniform(rng, 0.5, 2.0) / s.norm())));
  }
  return out;
}

EigenSpec random_regular_spec(Classification kind, int n, Rng& rng, double min_gap) {
  using std::numbers::pi;
  EigenSpec spec;
  spec.kind = kind;
  const int npos = kind == Classification::Hyperbolic ? n - 1 : n;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw std::runtime_error("random_regular_spec: rejection sampling failed");
    std::vector<double> angles;
    if (kind == Classification::Hyperbolic) {
      spec.lead = {uniform(rng, 1.3, 3.0), uniform(rng, 0.2, pi - 0.2), 1};
    } else {
      spec.lead = {1.0, uniform(rng, 0.2, pi - 0.2), 1};
      angles.push_back(spec.lead.angle);
    }
    spec.positive.clear();
    for (int k = 0; k < npos; ++k) {
      double a = uniform(rng, 0.2, pi - 0.2);
      angles.push_back(a);
      spec.positive.push_back({1.0, a, 1});
    }
    std::sort(angles.begin(), angles.end());
    bool ok = true;
    for (size_t k = 1; k < angles.size(); ++k)
      if (angles[k] - angles[k - 1] < min_gap) ok = false;
    if (ok) return spec;
  }
}

}  // namespace qhyp
