#include "qhyp/quat.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace qhyp {

Quaternion Quaternion::inverse() const {
  double n2 = norm2();
  if (n2 == 0) throw std::domain_error("inverse of zero quaternion");
  return conj() * (1.0 / n2);
}

Quaternion Quaternion::normalized() const {
  double n = norm();
  if (n == 0) throw std::domain_error("normalizing zero quaternion");
  return *this * (1.0 / n);
}

double distance(const Quaternion& a, const Quaternion& b) {
  return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

Quaternion PolarForm::reconstruct() const {
  return (Quaternion(std::cos(angle)) + axis * std::sin(angle)) * modulus;
}

PolarForm polar_decompose(const Quaternion& q) {
  PolarForm p;
  p.modulus = q.norm();
  double s = q.im_norm();
  p.angle = std::atan2(s, q.w);
  if (s > 0) p.axis = q.im() / s;
  return p;
}

SimilarityClass SimilarityClass::of(const Quaternion& q) {
  return {q.norm(), std::atan2(q.im_norm(), q.w)};
}

SimilarityClass SimilarityClass::of(std::complex<double> c) {
  return {std::abs(c), std::atan2(std::abs(c.imag()), c.real())};
}

bool SimilarityClass::same(const SimilarityClass& o, double tol) const {
  return std::abs(modulus * std::cos(angle) - o.modulus * std::cos(o.angle)) <= tol &&
         std::abs(modulus - o.modulus) <= tol;
}

bool similar(const Quaternion& a, const Quaternion& b, double tol) {
  return std::abs(a.w - b.w) <= tol && std::abs(a.norm() - b.norm()) <= tol;
}

bool centralizer_contains(const Quaternion& lambda, const Quaternion& q, double tol) {
  double s = lambda.im_norm();
  if (s <= tol) throw std::domain_error("centralizer_contains: lambda is real");
  Eigen::Vector3d u(lambda.x / s, lambda.y / s, lambda.z / s);
  Eigen::Vector3d v(q.x, q.y, q.z);
  return u.cross(v).norm() <= tol * std::max(1.0, q.norm());
}

Quaternion rotation_between(const Quaternion& a, const Quaternion& b) {
  Eigen::Vector3d va(a.x, a.y, a.z), vb(b.x, b.y, b.z);
  va.normalize();
  vb.normalize();
  double c = va.dot(vb);
  if (c < -1 + 1e-12) {
    // half turn about any axis orthogonal to a
    Eigen::Vector3d e = std::abs(va.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d ax = va.cross(e).normalized();
    return {0, ax.x(), ax.y(), ax.z()};
  }
  Eigen::Vector3d cr = va.cross(vb);
  return Quaternion(1 + c, cr.x(), cr.y(), cr.z()).normalized();
}

namespace {

// q with q x conj(q) = R x
Quaternion quaternion_from_rotation(const Eigen::Matrix3d& R) {
  double tr = R.trace();
  Quaternion q;
  if (tr > 0) {
    double s = 2 * std::sqrt(tr + 1);
    q = {0.25 * s, (R(2, 1) - R(1, 2)) / s, (R(0, 2) - R(2, 0)) / s, (R(1, 0) - R(0, 1)) / s};
  } else if (R(0, 0) > R(1, 1) && R(0, 0) > R(2, 2)) {
    double s = 2 * std::sqrt(1 + R(0, 0) - R(1, 1) - R(2, 2));
    q = {(R(2, 1) - R(1, 2)) / s, 0.25 * s, (R(0, 1) + R(1, 0)) / s, (R(0, 2) + R(2, 0)) / s};
  } else if (R(1, 1) > R(2, 2)) {
    double s = 2 * std::sqrt(1 + R(1, 1) - R(0, 0) - R(2, 2));
    q = {(R(0, 2) - R(2, 0)) / s, (R(0, 1) + R(1, 0)) / s, 0.25 * s, (R(1, 2) + R(2, 1)) / s};
  } else {
    double s = 2 * std::sqrt(1 + R(2, 2) - R(0, 0) - R(1, 1));
    q = {(R(1, 0) - R(0, 1)) / s, (R(0, 2) + R(2, 0)) / s, (R(1, 2) + R(2, 1)) / s, 0.25 * s};
  }
  return q.normalized();
}

}  // namespace

std::optional<Quaternion> sp1_align(const std::vector<Quaternion>& v, const std::vector<Quaternion>& w,
                                    double tol) {
  if (v.size() != w.size()) throw std::invalid_argument("sp1_align: length mismatch");
  for (size_t k = 0; k < v.size(); ++k)
    if (!similar(v[k], w[k], tol)) return std::nullopt;

  const size_t K = v.size();
  Eigen::Matrix3Xd A(3, K), B(3, K);
  for (size_t k = 0; k < K; ++k) {
    A.col(k) << v[k].x, v[k].y, v[k].z;
    B.col(k) << w[k].x, w[k].y, w[k].z;
  }

  Quaternion q(1);  // rotation x -> q x conj(q) taking im(w) to im(v)
  Eigen::Vector3d sb = Eigen::Vector3d::Zero();
  if (K > 0) {
    Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::Matrix3Xd>(B).singularValues();
    sb.head(s.size()) = s;
  }
  if (sb(0) <= tol) {
    q = Quaternion(1);
  } else if (sb(1) <= tol) {
    Eigen::Index best = 0;
    B.colwise().norm().maxCoeff(&best);
    Quaternion a(0, A(0, best), A(1, best), A(2, best)), b(0, B(0, best), B(1, best), B(2, best));
    if (a.im_norm() == 0) return std::nullopt;
    q = rotation_between(b, a);
  } else {
    Eigen::Matrix3d M = A * B.transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
    if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) D(2, 2) = -1;
    Eigen::Matrix3d R = svd.matrixU() * D * svd.matrixV().transpose();
    q = quaternion_from_rotation(R);
  }

  Quaternion mu = q.conj();
  if (mu.w < 0 || (mu.w == 0 && (mu.x < 0 || (mu.x == 0 && (mu.y < 0 || (mu.y == 0 && mu.z < 0)))))) mu = -mu;
  for (size_t k = 0; k < K; ++k)
    if (distance(mu.conj() * w[k] * mu, v[k]) > tol) return std::nullopt;
  return mu;
}

}  // namespace qhyp
