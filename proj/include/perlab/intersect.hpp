#pragma once

#include "perlab/dynamics.hpp"
#include "perlab/periodic.hpp"

#include <vector>

namespace perlab {

// Squarefree bihomogeneous curve in (P^1)^2, stored by its affine coefficient
// matrix coeff[i][j] of x^i y^j together with the declared bidegree (e1, e2).
// Zero top rows/columns encode line components at infinity.
class BihomCurve {
public:
    BihomCurve(std::vector<std::vector<BigInt>> coeff, int e1, int e2);

    int e1() const { return e1_; }
    int e2() const { return e2_; }
    int total_degree() const { return e1_ + e2_; }
    const BigInt& coeff(int i, int j) const;

    // x-degree drop (power of the vertical line at infinity) and y-degree drop
    int x_inf_order() const { return ax_; }
    int y_inf_order() const { return ay_; }

    // coefficient of y^j as a polynomial in x, and of x^i as a polynomial in y
    ZPoly y_coefficient(int j) const;
    ZPoly x_coefficient(int i) const;

    BigRat eval_affine(const BigRat& x, const BigRat& y) const;
    // full bihomogeneous evaluation at ([x0:x1], [y0:y1])
    BigInt eval_bihom(const BigInt& x0, const BigInt& x1, const BigInt& y0, const BigInt& y1) const;

    std::string to_string() const;

private:
    std::vector<std::vector<BigInt>> c_;  // (e1+1) x (e2+1)
    int e1_, e2_;
    int ax_ = 0, ay_ = 0;
};

// e * (d^n + 1)^q, exactly.
BigInt degree_growth(long e, long q, long d, long n);

struct CurveCount {
    BigInt count;
    bool full_fiber = false;  // the curve contains a fiber line through periodic points
};

// Exact |Per_n(f x g) on Z| for a split product map on (P^1)^2: vertical and
// horizontal line components are counted as full fibers; the rest goes
// through Res_y elimination against Per_n(g), gcd with Per_n(f), and
// per-root fiber counting over the stem field. Infinity charts are
// enumerated separately.
CurveCount count_periodic_on_curve(const ProductMap& fg, const BihomCurve& Z, int n,
                                   long degree_cap = kDefaultDegreeCap);

struct BoundCheck {
    BigInt count;
    BigRat bound;  // c * e * d^(q n), q = 1
    bool pass = false;
    double margin = 0.0;  // (bound - count) / bound
};

BoundCheck bound_check(const ProductMap& fg, const BihomCurve& Z, int n, double c,
                       long degree_cap = kDefaultDegreeCap);

}  // namespace perlab
