#pragma once

// Independent test oracles. These deliberately avoid the library's own
// algorithm paths: the determinant is plain fraction-free elimination on the
// Sylvester matrix, and phi is trial division.

#include "perlab/numeric.hpp"
#include "perlab/poly.hpp"

#include <vector>

namespace oracles {

using perlab::BigInt;
using perlab::BigRat;

// Determinant by exact Gaussian elimination over Q.
inline BigRat det_rational(std::vector<std::vector<BigRat>> m) {
    size_t n = m.size();
    BigRat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return BigRat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        BigRat inv = 1 / m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            BigRat f = m[row][col] * inv;
            for (size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    return det;
}

// Sylvester determinant of two homogeneous forms taken at their slot degrees,
// leading zeros included.
inline BigRat sylvester_resultant(const perlab::Poly& F, const perlab::Poly& G) {
    int m = F.degree(), n = G.degree();
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<BigRat>> mat(size, std::vector<BigRat>(size, BigRat(0)));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k) mat[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = F.coeff(m - k);
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k) mat[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] = G.coeff(n - k);
    return det_rational(std::move(mat));
}

// Euler phi by trial division, independent of perlab::euler_phi.
inline long phi_bruteforce(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace oracles
