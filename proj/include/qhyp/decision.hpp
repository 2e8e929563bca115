#pragma once

#include <optional>
#include <string>

#include "qhyp/hlinalg.hpp"

namespace qhyp {

enum class Verdict { Congruent, NotCongruent, Conjugate, NotConjugate, Inconclusive };

// which invariant separated the inputs
enum class FailedInvariant { None, GramOrbit, RealTrace, EigenClasses, CanonicalOrbit, Grassmannian };

const char* to_string(Verdict v);
const char* to_string(FailedInvariant f);

struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  FailedInvariant failed = FailedInvariant::None;
  std::optional<HMatrix> witness;
  double residual = 0;          // congruence: projective matching error; conjugacy: conjugation residual
  double membership_error = 0;  // of the witness
  std::string reason;

  bool positive() const { return verdict == Verdict::Congruent || verdict == Verdict::Conjugate; }
  // 0 positive, 1 negative, 3 inconclusive
  int exit_code() const;
};

}  // namespace qhyp
