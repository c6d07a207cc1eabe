#pragma once

#include "perlab/numeric.hpp"
#include "perlab/zpoly.hpp"

#include <cstdint>
#include <vector>

namespace perlab {

// Dense univariate polynomial over Z/p for a word-sized prime p.
// Same normalization convention as ZPoly (empty = zero).
class ModPoly {
public:
    ModPoly() : p_(2) {}
    explicit ModPoly(std::uint64_t p) : p_(p) {}
    ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }
    static ModPoly from_zpoly(const ZPoly& a, std::uint64_t p);

    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::uint64_t operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t leading() const { return c_.back(); }

    bool operator==(const ModPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    ModPoly monic() const;

    void trim();

private:
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;

    friend ModPoly mp_add(const ModPoly&, const ModPoly&);
    friend ModPoly mp_sub(const ModPoly&, const ModPoly&);
    friend ModPoly mp_mul(const ModPoly&, const ModPoly&);
    friend ModPoly mp_scale(const ModPoly&, std::uint64_t);
};

ModPoly mp_add(const ModPoly& a, const ModPoly& b);
ModPoly mp_sub(const ModPoly& a, const ModPoly& b);
ModPoly mp_mul(const ModPoly& a, const ModPoly& b);
ModPoly mp_scale(const ModPoly& a, std::uint64_t s);
void mp_divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r);
ModPoly mp_rem(const ModPoly& a, const ModPoly& b);
ModPoly mp_gcd(const ModPoly& a, const ModPoly& b);  // monic
ModPoly mp_derivative(const ModPoly& a);
// a^e mod f, e given as mpz to allow exponents like (p^d-1)/2
ModPoly mp_powmod(const ModPoly& a, const BigInt& e, const ModPoly& f);

// Extended gcd: returns g (monic) and s, t with s*a + t*b = g.
ModPoly mp_xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t);

// Irreducible factors of a squarefree monic polynomial mod p (p odd),
// sorted by (degree, coeffs) for determinism. Deterministic seed.
std::vector<ModPoly> mp_factor_squarefree(const ModPoly& f);

}  // namespace perlab
