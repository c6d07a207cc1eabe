#pragma once

#include "perlab/zpoly.hpp"

#include <optional>
#include <vector>

namespace perlab {

// Number field K = Q[t]/(m) for an irreducible primitive m. Elements are
// coefficient vectors of length deg m in the power basis.
class NumberField {
public:
    explicit NumberField(ZPoly minpoly);
    const ZPoly& minpoly() const { return m_; }
    int degree() const { return m_.degree(); }

private:
    ZPoly m_;
};

using NFElem = std::vector<BigRat>;  // size = field degree

NFElem nf_zero(const NumberField& K);
NFElem nf_one(const NumberField& K);
NFElem nf_from_rat(const NumberField& K, const BigRat& x);
// image of the generator
NFElem nf_gen(const NumberField& K);
// reduce a rational polynomial in the generator
NFElem nf_from_poly(const NumberField& K, const std::vector<BigRat>& coeffs);
bool nf_is_zero(const NFElem& a);
NFElem nf_add(const NumberField& K, const NFElem& a, const NFElem& b);
NFElem nf_sub(const NumberField& K, const NFElem& a, const NFElem& b);
NFElem nf_mul(const NumberField& K, const NFElem& a, const NFElem& b);
NFElem nf_inv(const NumberField& K, const NFElem& a);

// Polynomial over K, index = degree, trimmed (empty = zero).
using NFPoly = std::vector<NFElem>;

NFPoly nfp_from_zpoly(const NumberField& K, const ZPoly& p);
void nfp_trim(NFPoly& p);
int nfp_degree(const NFPoly& p);
NFPoly nfp_mul(const NumberField& K, const NFPoly& a, const NFPoly& b);
NFPoly nfp_sub(const NumberField& K, const NFPoly& a, const NFPoly& b);
void nfp_divrem(const NumberField& K, const NFPoly& a, const NFPoly& b, NFPoly& q, NFPoly& r);
// monic gcd by the Euclidean algorithm over K
NFPoly nfp_gcd(const NumberField& K, const NFPoly& a, const NFPoly& b);
NFPoly nfp_monic(const NumberField& K, const NFPoly& a);

// Trager: irreducible factors over K of a squarefree polynomial.
std::vector<NFPoly> nf_factor_squarefree(const NumberField& K, const NFPoly& f);

// Degree of the splitting field of a squarefree rational polynomial, by
// successive stem-field factorization with a primitive-element tower.
// Returns nullopt when the running extension degree would exceed the budget.
std::optional<long> splitting_degree(const ZPoly& f, long degree_budget);

}  // namespace perlab
