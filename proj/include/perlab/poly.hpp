#pragma once

#include "perlab/factor.hpp"
#include "perlab/zpoly.hpp"

#include <utility>
#include <vector>

namespace perlab {

enum class PolyForm { Univariate, Homogeneous };

// Polynomial over Q. Univariate polynomials are trimmed (no zero leading
// coefficient); a homogeneous bivariate form of degree d keeps exactly d+1
// slots, slot i holding the coefficient of X^i Y^(d-i), and may have zero
// slots at either end.
class Poly {
public:
    Poly() : form_(PolyForm::Univariate) {}

    static Poly univariate(std::vector<BigRat> coeffs);
    static Poly homogeneous(std::vector<BigRat> coeffs);  // degree = coeffs.size()-1
    static Poly constant(const BigRat& c);
    static Poly variable();  // z
    static Poly from_zpoly(const ZPoly& p, PolyForm form = PolyForm::Univariate);

    bool is_zero() const;
    int degree() const;  // univariate: -1 for zero; homogeneous: slot degree
    PolyForm form() const { return form_; }
    const BigRat& coeff(int i) const;
    const std::vector<BigRat>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return form_ == o.form_ && c_ == o.c_; }

    // p = unit * primitive integer polynomial (positive leading coefficient)
    std::pair<BigRat, ZPoly> to_zpoly() const;

    // Homogeneous form as Y^a * hom(f); returns (f = F(x,1), a).
    std::pair<Poly, int> dehomogenize() const;
    // Univariate to a form of the given degree (>= deg).
    Poly homogenize(int form_degree) const;
    // Swap the two variables of a form: F(X,Y) -> F(Y,X).
    Poly swap_vars() const;

    BigRat eval(const BigRat& x) const;                       // univariate
    BigRat eval2(const BigRat& x, const BigRat& y) const;     // homogeneous

    std::string to_string() const;

private:
    PolyForm form_;
    std::vector<BigRat> c_;
};

// Exact ring operations; forms must be compatible.
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// Univariate division with remainder: a = q*b + r, deg r < deg b.
std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& a);  // univariate

// Primitive-integer gcd with positive leading coefficient. Accepts a pair of
// univariate or a pair of homogeneous inputs.
Poly poly_gcd(const Poly& a, const Poly& b);

// Sylvester resultant of two homogeneous forms taken at their form degrees.
BigRat resultant(const Poly& F, const Poly& G);

// p / gcd(p, p'), normalized primitive with positive leading coefficient;
// for forms, a repeated Y factor collapses to a single one.
Poly squarefree_part(const Poly& p);

struct Factorization {
    BigRat unit;
    std::vector<std::pair<Poly, int>> factors;  // irreducible over Q, coprime integer coeffs

    Poly expand() const;  // unit * prod factors^mult
};

// Complete irreducible factorization over Q. Homogeneous inputs are
// dehomogenized; the Y-power appears as a factor of its own.
Factorization factor_rational(const Poly& p);

}  // namespace perlab
