#include "qhyp/decision.hpp"

namespace qhyp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Congruent: return "congruent";
    case Verdict::NotCongruent: return "not-congruent";
    case Verdict::Conjugate: return "conjugate";
    case Verdict::NotConjugate: return "not-conjugate";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(FailedInvariant f) {
  switch (f) {
    case FailedInvariant::None: return "none";
    case FailedInvariant::GramOrbit: return "gram-orbit";
    case FailedInvariant::RealTrace: return "real-trace";
    case FailedInvariant::EigenClasses: return "eigen-classes";
    case FailedInvariant::CanonicalOrbit: return "canonical-orbit";
    case FailedInvariant::Grassmannian: return "grassmannian";
  }
  return "?";
}

int Decision::exit_code() const {
  switch (verdict) {
    case Verdict::Congruent:
    case Verdict::Conjugate: return 0;
    case Verdict::NotCongruent:
    case Verdict::NotConjugate: return 1;
    case Verdict::Inconclusive: return 3;
  }
  return 3;
}

}  // namespace qhyp
