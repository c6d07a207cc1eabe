#include "perlab/intersect.hpp"

#include "perlab/nfpoly.hpp"

#include <algorithm>
#include <sstream>

namespace perlab {

namespace {

// squarefree check for the content-free bivariate part: the y-discriminant,
// as a polynomial in x, vanishes identically iff there is a repeated factor
// of positive y-degree; sampling past its x-degree bound decides exactly
bool primitive_part_squarefree(const std::vector<ZPoly>& ycoeffs, int m1, int m2) {
    if (m2 == 0) return true;  // no y-dependence left
    long samples = static_cast<long>(m1) * (2 * m2 - 1) + 1;
    for (long t = 0; t <= samples; ++t) {
        std::vector<BigInt> c(static_cast<size_t>(m2) + 1);
        for (int j = 0; j <= m2; ++j) c[static_cast<size_t>(j)] = zp_eval(ycoeffs[static_cast<size_t>(j)], BigInt(t));
        ZPoly slice(std::move(c));
        if (slice.degree() == m2 && zp_is_squarefree(slice)) return true;
    }
    return false;
}

}  // namespace

BihomCurve::BihomCurve(std::vector<std::vector<BigInt>> coeff, int e1, int e2)
    : c_(std::move(coeff)), e1_(e1), e2_(e2) {
    if (e1_ < 0 || e2_ < 0) throw ValidationError("BihomCurve: negative bidegree");
    if (c_.size() != static_cast<size_t>(e1_) + 1) throw ValidationError("BihomCurve: row count != e1+1");
    for (const auto& row : c_)
        if (row.size() != static_cast<size_t>(e2_) + 1) throw ValidationError("BihomCurve: column count != e2+1");
    bool nonzero = false;
    for (const auto& row : c_)
        for (const auto& x : row)
            if (x != 0) nonzero = true;
    if (!nonzero) throw ValidationError("BihomCurve: zero polynomial");

    int top_i = -1, top_j = -1;
    for (int i = 0; i <= e1_; ++i)
        for (int j = 0; j <= e2_; ++j)
            if (c_[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                top_i = std::max(top_i, i);
                top_j = std::max(top_j, j);
            }
    ax_ = e1_ - top_i;
    ay_ = e2_ - top_j;
    if (ax_ > 1 || ay_ > 1) throw ValidationError("BihomCurve: repeated line at infinity (not squarefree)");

    // squarefree validation: x-content, y-content of the rest, then the
    // content-free part by discriminant sampling
    std::vector<ZPoly> ycoeffs(static_cast<size_t>(e2_) + 1);
    for (int j = 0; j <= e2_; ++j) {
        std::vector<BigInt> col(static_cast<size_t>(e1_) + 1);
        for (int i = 0; i <= e1_; ++i) col[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        ycoeffs[static_cast<size_t>(j)] = ZPoly(std::move(col));
    }
    ZPoly cont_x;
    bool first = true;
    for (const auto& w : ycoeffs) {
        if (w.is_zero()) continue;
        cont_x = first ? zp_primitive(w) : zp_gcd(cont_x, w);
        first = false;
    }
    if (cont_x.degree() >= 1 && !zp_is_squarefree(cont_x))
        throw ValidationError("BihomCurve: repeated vertical component");
    std::vector<ZPoly> rest(ycoeffs.size());
    for (size_t j = 0; j < ycoeffs.size(); ++j)
        rest[j] = ycoeffs[j].is_zero() ? ZPoly() : zp_div_exact(ycoeffs[j], cont_x);
    // y-content of the rest
    ZPoly cont_y;
    {
        // coefficients of x^i in the rest, as polynomials in y
        int m1 = 0;
        for (const auto& w : rest) m1 = std::max(m1, w.degree());
        first = true;
        for (int i = 0; i <= m1; ++i) {
            std::vector<BigInt> row(rest.size());
            for (size_t j = 0; j < rest.size(); ++j) row[j] = rest[j][i];
            ZPoly vi(std::move(row));
            if (vi.is_zero()) continue;
            cont_y = first ? zp_primitive(vi) : zp_gcd(cont_y, vi);
            first = false;
        }
    }
    if (cont_y.degree() >= 1 && !zp_is_squarefree(cont_y))
        throw ValidationError("BihomCurve: repeated horizontal component");
    // content-free core
    std::vector<ZPoly> core(rest.size());
    int m2c = -1;
    for (size_t j = 0; j < rest.size(); ++j) {
        if (rest[j].is_zero()) {
            core[j] = ZPoly();
            continue;
        }
        core[j] = rest[j];
        m2c = static_cast<int>(j);
    }
    // divide out cont_y columnwise
    if (cont_y.degree() >= 1) {
        int m1 = 0;
        for (const auto& w : core) m1 = std::max(m1, w.degree());
        std::vector<ZPoly> divided(core.size());
        // build matrix, divide each x-row polynomial in y by cont_y
        std::vector<std::vector<BigInt>> mat(static_cast<size_t>(m1) + 1,
                                             std::vector<BigInt>(core.size(), BigInt(0)));
        for (size_t j = 0; j < core.size(); ++j)
            for (int i = 0; i <= core[j].degree(); ++i) mat[static_cast<size_t>(i)][j] = core[j][i];
        for (auto& row : mat) {
            ZPoly vi{std::vector<BigInt>(row)};
            if (vi.is_zero()) continue;
            ZPoly q = zp_div_exact(vi, cont_y);
            for (size_t j = 0; j < row.size(); ++j) row[j] = q[static_cast<int>(j)];
        }
        for (size_t j = 0; j < core.size(); ++j) {
            std::vector<BigInt> col(static_cast<size_t>(m1) + 1);
            for (int i = 0; i <= m1; ++i) col[static_cast<size_t>(i)] = mat[static_cast<size_t>(i)][j];
            core[j] = ZPoly(std::move(col));
        }
    }
    int m1 = 0, m2 = 0;
    for (size_t j = 0; j < core.size(); ++j) {
        if (core[j].is_zero()) continue;
        m1 = std::max(m1, core[j].degree());
        m2 = static_cast<int>(j);
    }
    if (!primitive_part_squarefree(core, m1, m2))
        throw ValidationError("BihomCurve: repeated bivariate factor (not squarefree)");
    (void)m2c;
}

const BigInt& BihomCurve::coeff(int i, int j) const {
    static const BigInt zero(0);
    if (i < 0 || i > e1_ || j < 0 || j > e2_) return zero;
    return c_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

ZPoly BihomCurve::y_coefficient(int j) const {
    std::vector<BigInt> col(static_cast<size_t>(e1_) + 1);
    for (int i = 0; i <= e1_; ++i) col[static_cast<size_t>(i)] = coeff(i, j);
    return ZPoly(std::move(col));
}

ZPoly BihomCurve::x_coefficient(int i) const {
    std::vector<BigInt> row(static_cast<size_t>(e2_) + 1);
    for (int j = 0; j <= e2_; ++j) row[static_cast<size_t>(j)] = coeff(i, j);
    return ZPoly(std::move(row));
}

BigRat BihomCurve::eval_affine(const BigRat& x, const BigRat& y) const {
    BigRat r(0);
    BigRat ypow(1);
    for (int j = 0; j <= e2_; ++j) {
        BigRat xpow(1);
        for (int i = 0; i <= e1_; ++i) {
            if (coeff(i, j) != 0) r += BigRat(coeff(i, j)) * xpow * ypow;
            xpow *= x;
        }
        ypow *= y;
    }
    return r;
}

BigInt BihomCurve::eval_bihom(const BigInt& x0, const BigInt& x1, const BigInt& y0, const BigInt& y1) const {
    BigInt r = 0;
    std::vector<BigInt> x0p(static_cast<size_t>(e1_) + 1), x1p(static_cast<size_t>(e1_) + 1);
    std::vector<BigInt> y0p(static_cast<size_t>(e2_) + 1), y1p(static_cast<size_t>(e2_) + 1);
    x0p[0] = 1;
    x1p[0] = 1;
    y0p[0] = 1;
    y1p[0] = 1;
    for (int i = 1; i <= e1_; ++i) {
        x0p[static_cast<size_t>(i)] = x0p[static_cast<size_t>(i - 1)] * x0;
        x1p[static_cast<size_t>(i)] = x1p[static_cast<size_t>(i - 1)] * x1;
    }
    for (int j = 1; j <= e2_; ++j) {
        y0p[static_cast<size_t>(j)] = y0p[static_cast<size_t>(j - 1)] * y0;
        y1p[static_cast<size_t>(j)] = y1p[static_cast<size_t>(j - 1)] * y1;
    }
    for (int i = 0; i <= e1_; ++i)
        for (int j = 0; j <= e2_; ++j)
            if (coeff(i, j) != 0)
                r += coeff(i, j) * x0p[static_cast<size_t>(i)] * x1p[static_cast<size_t>(e1_ - i)] *
                     y0p[static_cast<size_t>(j)] * y1p[static_cast<size_t>(e2_ - j)];
    return r;
}

std::string BihomCurve::to_string() const {
    std::ostringstream os;
    os << "bidegree(" << e1_ << "," << e2_ << ")";
    return os.str();
}

BigInt degree_growth(long e, long q, long d, long n) {
    if (e < 1 || q < 0 || d < 2 || n < 1) throw ValidationError("degree_growth: out-of-range arguments");
    BigInt dn = 1;
    for (long i = 0; i < n; ++i) dn *= d;
    BigInt base = dn + 1;
    BigInt r = e;
    for (long i = 0; i < q; ++i) r *= base;
    return r;
}

namespace {

struct SideData {
    ZPoly set_poly;  // squarefree finite part of Per_n
    bool inf = false;
    BigInt total;  // count including infinity
};

SideData per_side(const RationalMap& f, int n, long cap) {
    PeriodicSpectrum sp = periodic_polynomial(f, n, /*with_factorization=*/false, cap);
    SideData s;
    auto [unit, z] = sp.set_polynomial.to_zpoly();
    s.set_poly = z;
    s.inf = sp.includes_infinity;
    s.total = sp.count;
    return s;
}

// gcd degree against a possibly-constant V
long common_roots(const ZPoly& A, const ZPoly& V) {
    if (V.degree() < 1 || A.degree() < 1) return 0;
    return zp_gcd(A, V).degree();
}

// Res_y(Zcore(x,.), B) by interpolation, with the padded Sylvester convention
ZPoly eliminate_y(const std::vector<ZPoly>& ycoeffs, int m2, const ZPoly& B) {
    int m1 = 0;
    for (const auto& w : ycoeffs) m1 = std::max(m1, w.degree());
    long need = static_cast<long>(B.degree()) * m1 + 1;
    std::vector<BigRat> xs, ys;
    Poly Bform = Poly::from_zpoly(B, PolyForm::Univariate).homogenize(B.degree());
    for (long t = 0; static_cast<long>(xs.size()) < need; ++t) {
        std::vector<BigRat> slice(static_cast<size_t>(m2) + 1, BigRat(0));
        for (int j = 0; j <= m2; ++j) slice[static_cast<size_t>(j)] = BigRat(zp_eval(ycoeffs[static_cast<size_t>(j)], BigInt(t)));
        Poly Zslice = Poly::homogeneous(std::move(slice));
        BigRat r = Zslice.is_zero() ? BigRat(0) : resultant(Zslice, Bform);
        xs.emplace_back(t);
        ys.push_back(r);
    }
    // Lagrange interpolation
    size_t npts = xs.size();
    std::vector<BigRat> acc(npts, BigRat(0));
    for (size_t i = 0; i < npts; ++i) {
        std::vector<BigRat> basis{BigRat(1)};
        BigRat denom(1);
        for (size_t j = 0; j < npts; ++j) {
            if (j == i) continue;
            std::vector<BigRat> nb(basis.size() + 1, BigRat(0));
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] += basis[k];
                nb[k] -= xs[j] * basis[k];
            }
            basis = std::move(nb);
            denom *= xs[i] - xs[j];
        }
        BigRat w = ys[i] / denom;
        for (size_t k = 0; k < basis.size(); ++k) acc[k] += w * basis[k];
    }
    BigInt den = 1;
    for (const auto& x : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<BigInt> ic;
    for (const auto& x : acc) ic.push_back(BigInt(x.get_num() * (den / x.get_den())));
    ZPoly R(std::move(ic));
    return R.is_zero() ? R : zp_primitive(R);
}

}  // namespace

CurveCount count_periodic_on_curve(const ProductMap& fg, const BihomCurve& Z, int n, long degree_cap) {
    if (fg.k != 2) throw ValidationError("count_periodic_on_curve: k = 2 product map required");
    SideData A = per_side(fg.components[0], n, degree_cap);
    SideData B = per_side(fg.components[1], n, degree_cap);

    // split off line components: x-content (verticals), then y-content
    std::vector<ZPoly> ycoeffs(static_cast<size_t>(Z.e2()) + 1);
    for (int j = 0; j <= Z.e2(); ++j) ycoeffs[static_cast<size_t>(j)] = Z.y_coefficient(j);
    ZPoly V;  // vertical components (poly in x), constant 1 if none
    {
        bool first = true;
        for (const auto& w : ycoeffs) {
            if (w.is_zero()) continue;
            V = first ? zp_primitive(w) : zp_gcd(V, w);
            first = false;
        }
    }
    std::vector<ZPoly> rest(ycoeffs.size());
    for (size_t j = 0; j < ycoeffs.size(); ++j)
        rest[j] = ycoeffs[j].is_zero() ? ZPoly() : zp_div_exact(ycoeffs[j], V);
    int m1 = 0;
    for (const auto& w : rest) m1 = std::max(m1, w.degree());
    ZPoly H;  // horizontal components (poly in y)
    {
        bool first = true;
        for (int i = 0; i <= m1; ++i) {
            std::vector<BigInt> row(rest.size());
            for (size_t j = 0; j < rest.size(); ++j) row[j] = rest[j][i];
            ZPoly vi(std::move(row));
            if (vi.is_zero()) continue;
            H = first ? zp_primitive(vi) : zp_gcd(H, vi);
            first = false;
        }
    }
    std::vector<ZPoly> core(rest.size());
    if (H.degree() >= 1) {
        std::vector<std::vector<BigInt>> mat(static_cast<size_t>(m1) + 1,
                                             std::vector<BigInt>(rest.size(), BigInt(0)));
        for (size_t j = 0; j < rest.size(); ++j)
            for (int i = 0; i <= rest[j].degree(); ++i) mat[static_cast<size_t>(i)][j] = rest[j][i];
        for (auto& row : mat) {
            ZPoly vi{std::vector<BigInt>(row)};
            std::fill(row.begin(), row.end(), BigInt(0));
            if (vi.is_zero()) continue;
            ZPoly q = zp_div_exact(vi, H);
            for (int j = 0; j <= q.degree(); ++j) row[static_cast<size_t>(j)] = q[j];
        }
        for (size_t j = 0; j < rest.size(); ++j) {
            std::vector<BigInt> col(static_cast<size_t>(m1) + 1);
            for (int i = 0; i <= m1; ++i) col[static_cast<size_t>(i)] = mat[static_cast<size_t>(i)][j];
            core[j] = ZPoly(std::move(col));
        }
    } else {
        core = rest;
    }
    int cm1 = 0, cm2 = 0;
    for (size_t j = 0; j < core.size(); ++j) {
        if (core[j].is_zero()) continue;
        cm1 = std::max(cm1, core[j].degree());
        cm2 = static_cast<int>(j);
    }

    // vertical / horizontal fiber contributions
    long v_pts = common_roots(A.set_poly, V) + ((Z.x_inf_order() >= 1 && A.inf) ? 1 : 0);
    long h_pts = common_roots(B.set_poly, H) + ((Z.y_inf_order() >= 1 && B.inf) ? 1 : 0);
    BigInt count = BigInt(v_pts) * B.total + BigInt(h_pts) * A.total - BigInt(v_pts) * h_pts;

    // remove fiber points from the elimination side
    ZPoly A0 = A.set_poly;
    if (V.degree() >= 1 && A0.degree() >= 1) {
        ZPoly g = zp_gcd(A0, V);
        if (g.degree() >= 1) A0 = zp_div_exact(A0, g);
    }
    bool infA0 = A.inf && Z.x_inf_order() == 0;
    ZPoly B0 = B.set_poly;
    if (H.degree() >= 1 && B0.degree() >= 1) {
        ZPoly g = zp_gcd(B0, H);
        if (g.degree() >= 1) B0 = zp_div_exact(B0, g);
    }
    bool infB0 = B.inf && Z.y_inf_order() == 0;

    // finite-finite points of the content-free core
    if (cm2 >= 1 && A0.degree() >= 1 && B0.degree() >= 1) {
        ZPoly R = eliminate_y(core, cm2, B0);
        if (R.is_zero()) throw Error("count_periodic_on_curve: elimination degenerated (internal)");
        ZPoly gamma = zp_gcd(A0, R);
        if (gamma.degree() >= 1) {
            for (const auto& mu : zp_factor_squarefree(gamma)) {
                NumberField K(mu);
                NFPoly Zk;  // core(xbar, y) in K[y]
                for (int j = 0; j <= cm2; ++j) {
                    std::vector<BigRat> rc;
                    for (int i = 0; i <= core[static_cast<size_t>(j)].degree(); ++i)
                        rc.emplace_back(core[static_cast<size_t>(j)][i]);
                    Zk.push_back(nf_from_poly(K, rc));
                }
                nfp_trim(Zk);
                if (Zk.empty()) throw Error("count_periodic_on_curve: core vanished on a stem field (internal)");
                NFPoly Bk = nfp_from_zpoly(K, B0);
                NFPoly g = nfp_gcd(K, Bk, Zk);
                count += BigInt(mu.degree()) * nfp_degree(g);
            }
        }
    } else if (cm2 == 0 && A0.degree() >= 1 && B0.degree() >= 1) {
        // core has no y-dependence: any finite-finite point needs core(x) = 0,
        // but those are vertical components already extracted; core is content-free
        // so there are none
    }

    // infinity rows of the core
    if (infA0 && cm2 >= 0) {
        ZPoly U = core[static_cast<size_t>(0)];  // placeholder; replaced below
        // restriction at x = infinity: top x-coefficients across y powers
        std::vector<BigInt> urow(static_cast<size_t>(cm2) + 1);
        for (int j = 0; j <= cm2; ++j) urow[static_cast<size_t>(j)] = core[static_cast<size_t>(j)][cm1];
        ZPoly Urest(std::move(urow));
        if (!Urest.is_zero()) {
            if (B0.degree() >= 1 && Urest.degree() >= 1) count += zp_gcd(B0, Urest).degree();
            // corner (inf, inf): top coefficient vanishing
            if (infB0 && Urest.degree() < cm2) count += 1;
        }
        (void)U;
    }
    if (infB0) {
        std::vector<BigInt> ucol(static_cast<size_t>(cm1) + 1);
        for (int i = 0; i <= cm1; ++i) ucol[static_cast<size_t>(i)] = core[static_cast<size_t>(cm2)][i];
        ZPoly Ucol(std::move(ucol));
        if (!Ucol.is_zero() && A0.degree() >= 1 && Ucol.degree() >= 1) count += zp_gcd(A0, Ucol).degree();
    }

    CurveCount out;
    out.count = count;
    out.full_fiber = (v_pts + h_pts) > 0;
    return out;
}

BoundCheck bound_check(const ProductMap& fg, const BihomCurve& Z, int n, double c, long degree_cap) {
    CurveCount cc = count_periodic_on_curve(fg, Z, n, degree_cap);
    BigInt dn = 1;
    for (int i = 0; i < n; ++i) dn *= fg.d;
    BoundCheck out;
    out.count = cc.count;
    // bound as an exact rational from the (possibly fractional) c
    BigRat crat(c);
    out.bound = crat * BigRat(Z.total_degree()) * BigRat(dn);
    out.pass = BigRat(cc.count) <= out.bound;
    BigRat margin_rat = out.bound == 0 ? BigRat(0) : BigRat((out.bound - BigRat(cc.count)) / out.bound);
    out.margin = margin_rat.get_d();
    return out;
}

}  // namespace perlab
