#pragma once

#include "perlab/dynamics.hpp"

namespace perlab {

struct CanonicalHeightEstimate {
    double value = 0.0;
    double error = 0.0;
    int iterations = 0;
    double telescope_constant = 0.0;  // error <= telescope_constant / ((d-1) d^iterations)
};

// log max(|p|, |q|) of the reduced coordinate pair.
double weil_height(const ProjPoint& x);

// Call-Silverman canonical height by telescoping h(f^n x)/d^n with a
// certified tail bound. Coordinate growth is tracked multiplicatively: a
// normalized real pair carries the archimedean factor and residues modulo
// powers of the primes dividing Res(F, G) carry the gcd cancellations, so no
// unbounded exact iteration is needed.
CanonicalHeightEstimate canonical_height(const RationalMap& f, const ProjPoint& x, double tol);

// Exact forward orbit with the height cutoff 2C/(d-1) + h(x): inside the cut
// the orbit must cycle (finitely many rational points), beyond it the height
// certifiably grows.
bool is_preperiodic(const RationalMap& f, const ProjPoint& x);

}  // namespace perlab
