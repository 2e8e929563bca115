#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace qhyp {

constexpr double kDefaultTol = 1e-9;

struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double a0) : w(a0) {}
  constexpr Quaternion(double a0, double a1, double a2, double a3) : w(a0), x(a1), y(a2), z(a3) {}
  static Quaternion from_complex(std::complex<double> c) { return {c.real(), c.imag(), 0, 0}; }

  double re() const { return w; }
  Quaternion im() const { return {0, x, y, z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double im_norm() const { return std::sqrt(x * x + y * y + z * z); }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion inverse() const;
  Quaternion normalized() const;
  bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
  std::array<double, 4> components() const { return {w, x, y, z}; }

  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Quaternion& operator*=(const Quaternion& o);
  Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }
inline Quaternion operator/(Quaternion a, double s) { return a *= 1.0 / s; }
inline Quaternion& Quaternion::operator*=(const Quaternion& o) { return *this = *this * o; }
inline bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

inline Quaternion conj(const Quaternion& q) { return q.conj(); }
inline double abs(const Quaternion& q) { return q.norm(); }
// max-norm distance between components
double distance(const Quaternion& a, const Quaternion& b);

const Quaternion kI{0, 1, 0, 0};
const Quaternion kJ{0, 0, 1, 0};
const Quaternion kK{0, 0, 0, 1};

struct PolarForm {
  double modulus = 0;
  double angle = 0;
  Quaternion axis;  // unit pure, or zero when the source is real

  Quaternion reconstruct() const;
};

PolarForm polar_decompose(const Quaternion& q);

struct SimilarityClass {
  double modulus = 0;
  double angle = 0;

  std::complex<double> representative() const { return std::polar(modulus, angle); }
  static SimilarityClass of(const Quaternion& q);
  static SimilarityClass of(std::complex<double> c);
  bool same(const SimilarityClass& o, double tol = kDefaultTol) const;
};

bool similar(const Quaternion& a, const Quaternion& b, double tol = kDefaultTol);

// throws std::domain_error when lambda is real
bool centralizer_contains(const Quaternion& lambda, const Quaternion& q, double tol = kDefaultTol);

// Unit mu with conj(mu) * w[k] * mu = v[k] for all k, if one exists.
std::optional<Quaternion> sp1_align(const std::vector<Quaternion>& v, const std::vector<Quaternion>& w,
                                    double tol = kDefaultTol);

// Unit q with q * a * conj(q) = b for unit pure a, b (smallest rotation).
Quaternion rotation_between(const Quaternion& a, const Quaternion& b);

}  // namespace qhyp
