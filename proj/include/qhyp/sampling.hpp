#pragma once

#include <random>

#include "qhyp/isom.hpp"

namespace qhyp {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
Quaternion random_quaternion(Rng& rng);  // components uniform in [-1, 1]
Quaternion random_unit_quaternion(Rng& rng);
HVector random_hvector(Rng& rng, size_t dim);

// Gram matrix of the frame columns: corner form for hyperbolic, diag(-1, 1, ..., 1) for elliptic
HMatrix frame_gram(Classification kind, size_t dim);
// F^{-1} = Gf^{-1} F* H for a frame F with column Gram matrix Gf
HMatrix frame_inverse(const HermitianSpace& space, const HMatrix& frame, const HMatrix& gf);

// random eigenframe matrix; columns (a, x_1.., r) or (x_1 negative, x_2, ..)
HMatrix random_frame(const HermitianSpace& space, Classification kind, Rng& rng);
// a hyperbolic-shaped random frame is itself a member of Sp(n,1)
HMatrix random_isometry(const HermitianSpace& space, Rng& rng);

HVector random_null_vector(const HermitianSpace& space, Rng& rng);
HVector random_negative_vector(const HermitianSpace& space, Rng& rng);

// i null lifts followed by m - i negative lifts, each right-scaled by a random quaternion
std::vector<HVector> random_config_lifts(const HermitianSpace& space, int m, int i, Rng& rng);

// random regular spec (all multiplicities 1), classes separated by at least min_gap
EigenSpec random_regular_spec(Classification kind, int n, Rng& rng, double min_gap = 0.15);

}  // namespace qhyp
