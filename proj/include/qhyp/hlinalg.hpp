#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhyp/quat.hpp"

namespace qhyp {

// Column vector in the right H-module H^{n,1}; scalars act on the right.
class HVector {
 public:
  HVector() = default;
  explicit HVector(size_t n) : e_(n) {}
  HVector(std::initializer_list<Quaternion> l) : e_(l) {}
  explicit HVector(std::vector<Quaternion> e) : e_(std::move(e)) {}

  size_t size() const { return e_.size(); }
  Quaternion& operator[](size_t k) { return e_[k]; }
  const Quaternion& operator[](size_t k) const { return e_[k]; }
  const std::vector<Quaternion>& entries() const { return e_; }

  double norm() const;
  HVector normalized() const;

  HVector& operator+=(const HVector& o);
  HVector& operator-=(const HVector& o);

 private:
  std::vector<Quaternion> e_;
};

HVector operator+(HVector a, const HVector& b);
HVector operator-(HVector a, const HVector& b);
HVector operator*(const HVector& v, const Quaternion& q);
HVector operator*(const HVector& v, double s);

class HMatrix {
 public:
  HMatrix() = default;
  HMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

  static HMatrix identity(size_t n);
  static HMatrix diagonal(const std::vector<Quaternion>& d);
  static HMatrix from_columns(const std::vector<HVector>& cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Quaternion& operator()(size_t r, size_t c) { return d_[r * cols_ + c]; }
  const Quaternion& operator()(size_t r, size_t c) const { return d_[r * cols_ + c]; }

  HVector col(size_t c) const;
  void set_col(size_t c, const HVector& v);
  HMatrix adjoint() const;
  double norm() const;  // Frobenius

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Quaternion> d_;
};

HMatrix operator*(const HMatrix& a, const HMatrix& b);
HVector operator*(const HMatrix& a, const HVector& v);
HMatrix operator+(const HMatrix& a, const HMatrix& b);
HMatrix operator-(const HMatrix& a, const HMatrix& b);
HMatrix operator*(const HMatrix& a, double s);
// right multiplication of every entry
HMatrix operator*(const HMatrix& a, const Quaternion& q);

// general inverse through the complex embedding
HMatrix inverse(const HMatrix& a);

struct HermitianSpace {
  int n = 1;
  HMatrix H;

  static HermitianSpace corner(int n);
  size_t dim() const { return static_cast<size_t>(n) + 1; }
};

// <z, w> = w* H z
Quaternion herm(const HermitianSpace& space, const HVector& z, const HVector& w);

enum class VectorType { Negative, Null, Positive };
const char* to_string(VectorType t);

VectorType classify_vector(const HermitianSpace& space, const HVector& z, double tol = kDefaultTol);

// q = c1 + j c2 with c1 = a0 + a1 i, c2 = a2 - a3 i
std::pair<std::complex<double>, std::complex<double>> complex_split(const Quaternion& q);
Quaternion from_complex_pair(std::complex<double> c1, std::complex<double> c2);

Eigen::MatrixXcd complex_embed(const HMatrix& a);
HMatrix from_complex_embedding(const Eigen::MatrixXcd& m);
Eigen::VectorXcd complex_embed(const HVector& v);
HVector from_complex_embedding(const Eigen::VectorXcd& v);

// rank over H of a family of vectors
int hrank(const std::vector<HVector>& vs, double rel_tol = 1e-8);
// projective equality of the lines z.H and w.H
bool same_line(const HVector& z, const HVector& w, double tol = 1e-8);

// (a_1, ..., a_{2n+1}); throws std::runtime_error on non-real or non-palindromic coefficients
std::vector<double> char_poly_real_coeffs(const HMatrix& a, double tol = 1e-8);
// the same, with the raw complex coefficients a_0 .. a_{2n+2}
std::vector<std::complex<double>> char_poly_complex_coeffs(const HMatrix& a);

class NotSemisimple : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenClass {
  std::complex<double> rep;  // r e^{i theta}, theta in [0, pi]
  int multiplicity = 0;
  VectorType type = VectorType::Positive;
  std::vector<HVector> vectors;  // A x = x rep
  std::vector<int> signs;        // sign of <x, x> per vector

  SimilarityClass similarity() const { return SimilarityClass::of(rep); }
  bool real() const { return rep.imag() == 0; }
};

struct EigenData {
  std::vector<EigenClass> classes;  // sorted by modulus (descending), then angle
};

// tol: relative threshold below which an eigenvector counts as null
EigenData right_eigen(const HermitianSpace& space, const HMatrix& a, double tol = 1e-8);

// Orthonormalize against the form; target signs -1, 0, +1 with exactly zero or two nulls.
// Two nulls come out as a pair with <a, r> = 1 (a is the first null slot).
std::vector<HVector> gram_schmidt_indefinite(const HermitianSpace& space, const std::vector<HVector>& vectors,
                                             const std::vector<int>& target_signs, double tol = 1e-10);

}  // namespace qhyp
