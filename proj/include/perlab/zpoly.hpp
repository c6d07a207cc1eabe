#pragma once

#include "perlab/numeric.hpp"

#include <optional>
#include <vector>

namespace perlab {

// Dense univariate polynomial over Z, coefficient of degree i at index i.
// Normalized: empty vector is the zero polynomial, otherwise back() != 0.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    static ZPoly constant(BigInt v);
    static ZPoly monomial(BigInt v, int k);
    // x^n - 1
    static ZPoly xn_minus_1(int n);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const BigInt& operator[](int i) const;
    const std::vector<BigInt>& coeffs() const { return c_; }
    const BigInt& leading() const;
    BigInt height() const;  // max |coeff|
    // sum of |coeff|
    BigInt norm1() const;

    bool operator==(const ZPoly& o) const { return c_ == o.c_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<BigInt> c_;

    friend ZPoly operator+(const ZPoly&, const ZPoly&);
    friend ZPoly operator-(const ZPoly&, const ZPoly&);
    friend ZPoly operator*(const ZPoly&, const ZPoly&);
    friend ZPoly operator*(const BigInt&, const ZPoly&);
    friend ZPoly operator-(const ZPoly&);
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const BigInt& s, const ZPoly& a);
ZPoly operator-(const ZPoly& a);

BigInt zp_content(const ZPoly& a);
// a / content, sign chosen so the leading coefficient is positive
ZPoly zp_primitive(const ZPoly& a);
ZPoly zp_derivative(const ZPoly& a);
BigInt zp_eval(const ZPoly& a, const BigInt& x);
BigRat zp_eval(const ZPoly& a, const BigRat& x);
// substitution a(x + t)
ZPoly zp_shift(const ZPoly& a, const BigInt& t);

// Exact division; throws if not divisible.
ZPoly zp_div_exact(const ZPoly& a, const ZPoly& b);
// True division test: b | a.
bool zp_divides(const ZPoly& b, const ZPoly& a);
// Pseudo-division: lc(b)^(deg a - deg b + 1) * a = q*b + r.
void zp_pseudo_divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r);

// Primitive gcd via modular images, positive leading coefficient.
ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);

// Resultant of a and b taken at their exact degrees.
BigInt zp_resultant(const ZPoly& a, const ZPoly& b);

// a / gcd(a, a'), primitive with positive leading coefficient.
ZPoly zp_squarefree_part(const ZPoly& a);
bool zp_is_squarefree(const ZPoly& a);

// Yun decomposition of the primitive part: a = content * prod part[i]^(i+1),
// parts squarefree and pairwise coprime (some may be constant 1).
std::vector<ZPoly> zp_yun(const ZPoly& a);

// n-th cyclotomic polynomial.
ZPoly cyclotomic(int n);

// Returns a prime p making a Eisenstein-irreducible, if a quick search finds
// one (p | all non-leading coeffs, p !| lc, p^2 !| constant term).
std::optional<BigInt> eisenstein_prime(const ZPoly& a);

}  // namespace perlab
