#pragma once

#include "perlab/poly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace perlab {

inline constexpr long kDefaultDegreeCap = 4096;

// Exact point of P^1 over Q, or an algebraic point given by its (irreducible,
// primitive, positive-lc) minimal polynomial and a root index under the
// real-lexicographic complex root ordering.
class ProjPoint {
public:
    ProjPoint() : x_(0), y_(1) {}
    static ProjPoint infinity();
    static ProjPoint rational(const BigRat& z);
    static ProjPoint rational_pair(BigInt px, BigInt py);  // [px : py]
    static ProjPoint algebraic(ZPoly minpoly, int root_index);

    bool is_infinity() const { return !algebraic_ && py() == 0; }
    bool is_rational() const { return !algebraic_; }
    const BigInt& px() const { return x_; }
    const BigInt& py() const { return y_; }
    BigRat affine() const;  // finite rational points
    const ZPoly& minpoly() const { return m_; }
    int root_index() const { return idx_; }

    bool operator==(const ProjPoint& o) const;
    bool operator<(const ProjPoint& o) const;  // arbitrary stable order for sets
    std::string to_string() const;

    // numeric embedding into the finite chart (infinity throws)
    std::complex<double> embed(int precision_bits = 64) const;

private:
    BigInt x_, y_;  // rational case: coprime, y >= 0, (1,0) = infinity
    bool algebraic_ = false;
    ZPoly m_;
    int idx_ = 0;
};

// Degree-d >= 2 endomorphism of P^1 as a jointly primitive integer pair of
// homogeneous forms with nonzero resultant.
class RationalMap {
public:
    const Poly& F() const { return F_; }
    const Poly& G() const { return G_; }
    int degree() const { return d_; }
    // dehomogenized numerator/denominator with Y-orders
    const ZPoly& fnum() const { return fnum_; }
    const ZPoly& fden() const { return fden_; }
    int fnum_yorder() const { return ynum_; }
    int fden_yorder() const { return yden_; }
    std::string id() const;

    friend RationalMap make_map(const Poly& F, const Poly& G);
    friend RationalMap iterate_map(const RationalMap& f, int n, long degree_cap);

private:
    Poly F_, G_;
    int d_ = 0;
    ZPoly fnum_, fden_;
    int ynum_ = 0, yden_ = 0;
};

struct MultiplicityRecord {
    int n;
    std::optional<ProjPoint> point;  // witness attaining kappa, when cheap to name
    long kappa;
};

struct ProductMap {
    std::vector<RationalMap> components;
    int k = 0;
    int d = 0;
};

// Validates and normalizes a map; throws on resultant zero or degree < 2.
RationalMap make_map(const Poly& F, const Poly& G);

// f^n with exact degree d^n; throws DegreeCapError beyond the cap.
RationalMap iterate_map(const RationalMap& f, int n, long degree_cap = kDefaultDegreeCap);

// Exact image of a point (rational or algebraic).
ProjPoint apply_map(const RationalMap& f, const ProjPoint& x);

// Local multiplicity of f at x (1 + order of x in the Wronskian).
int ramification(const RationalMap& f, const ProjPoint& x);

// kappa_{-n}(a) = max multiplicity of f^n over the exact preimages of a.
MultiplicityRecord kappa_minus(const RationalMap& f, int n, const ProjPoint& a,
                               long degree_cap = kDefaultDegreeCap);

// Maximal finite totally invariant set (at most 2 points on P^1), found by
// checking total ramification candidates from the Wronskian.
std::vector<ProjPoint> exceptional_set(const RationalMap& f);
bool in_exceptional_set(const RationalMap& f, const ProjPoint& a);

ProductMap product_map(const std::vector<RationalMap>& maps);

// Tested guard set for products: E(f) x P^1 union P^1 x E(g).
bool in_exceptional_guard(const ProductMap& fg, const ProjPoint& a, const ProjPoint& b);

}  // namespace perlab
