#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qhyp/hlinalg.hpp"

namespace qhyp {

enum class Classification { Hyperbolic, Elliptic, Parabolic, Unclassified };
const char* to_string(Classification c);

// ||A* H A - H|| / max(1, ||A||^2)
double membership_error(const HermitianSpace& space, const HMatrix& a);
bool is_member(const HermitianSpace& space, const HMatrix& a, double tol = kDefaultTol);

class UnsupportedIsometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Isometry {
 public:
  // throws std::invalid_argument if a is not in Sp(n,1) to tol
  static Isometry make(const HermitianSpace& space, const HMatrix& a, double tol = 1e-8);

  const HMatrix& matrix() const { return a_; }
  const HermitianSpace& space() const { return space_; }
  int n() const { return space_.n; }
  Classification classification() const { return cls_; }
  bool semisimple() const { return eigen_.has_value(); }
  // throws UnsupportedIsometry for non-semisimple elements
  const EigenData& eigen() const;
  const std::vector<double>& real_trace() const { return trace_; }
  bool regular() const;

 private:
  HermitianSpace space_;
  HMatrix a_;
  Classification cls_ = Classification::Unclassified;
  std::optional<EigenData> eigen_;
  std::vector<double> trace_;
};

Classification classify(const Isometry& a);
std::vector<double> real_trace(const Isometry& a);

// Chen-Greenberg: same classes, multiplicities and negative directions per class
bool conjugate_single(const Isometry& a, const Isometry& b, double tol = 1e-7);

bool same_eigen_classes(const EigenData& x, const EigenData& y, double tol);
bool equal_by_invariants(const Isometry& a, const Isometry& b, double tol = 1e-7);

struct ClassSpec {
  double modulus = 1;
  double angle = 0;  // in [0, pi]
  int multiplicity = 1;
};

struct EigenSpec {
  Classification kind = Classification::Elliptic;
  ClassSpec lead;  // hyperbolic: (r > 1, theta); elliptic: the negative class (modulus 1)
  std::vector<ClassSpec> positive;
};

// diagonal normal form in frame coordinates
HMatrix normal_form(const EigenSpec& spec);
Isometry random_semisimple(const HermitianSpace& space, const EigenSpec& spec, std::uint64_t seed);

}  // namespace qhyp
