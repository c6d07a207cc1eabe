#pragma once

#include "perlab/poly.hpp"

#include <complex>
#include <vector>

namespace perlab {

struct CertifiedRoot {
    std::complex<double> z;
    double err;  // certified radius around z containing a true root
};

// All roots of a squarefree polynomial by Aberth-Ehrlich simultaneous
// iteration in adaptive big-float precision, with an a posteriori
// residual certificate |z - root| <= deg * |p(z)/p'(z)| (plus rounding
// slack). Certified error <= 2^(-precision_bits/2); roots are sorted
// real-lexicographically (re, then im).
std::vector<CertifiedRoot> complex_roots(const Poly& p, int precision_bits);
std::vector<CertifiedRoot> complex_roots(const ZPoly& p, int precision_bits);

}  // namespace perlab
