#pragma once

#include "perlab/zpoly.hpp"

#include <vector>

namespace perlab {

struct ZFactorization {
    BigInt content = 1;  // signed content; product of content and factor powers = input
    std::vector<std::pair<ZPoly, int>> factors;  // primitive irreducible, positive lc, multiplicity
};

// Complete factorization over Q of a nonzero integer polynomial.
// Squarefree split, then per part: x^M +- 1 cyclotomic special case,
// Eisenstein shortcut, otherwise factorization mod p + Hensel lifting +
// subset recombination. The Hensel prime is the smallest prime >= 10^6
// not dividing lc for which the part stays squarefree mod p.
ZFactorization zp_factor(const ZPoly& f);

// Factors a primitive squarefree polynomial (exposed for tests).
std::vector<ZPoly> zp_factor_squarefree(const ZPoly& f);

// Multiset of irreducible factor degrees of a squarefree polynomial.
std::vector<int> zp_factor_degrees(const ZPoly& f);

}  // namespace perlab
