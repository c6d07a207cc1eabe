#include "perlab/poly.hpp"

#include <algorithm>
#include <sstream>

namespace perlab {

namespace {

void require_univariate(const Poly& p, const char* what) {
    if (p.form() != PolyForm::Univariate)
        throw FormMismatchError(std::string(what) + ": univariate input required");
}

void require_homogeneous(const Poly& p, const char* what) {
    if (p.form() != PolyForm::Homogeneous)
        throw FormMismatchError(std::string(what) + ": homogeneous input required");
}

}  // namespace

Poly Poly::univariate(std::vector<BigRat> coeffs) {
    Poly p;
    p.form_ = PolyForm::Univariate;
    p.c_ = std::move(coeffs);
    for (auto& x : p.c_) x.canonicalize();
    while (!p.c_.empty() && p.c_.back() == 0) p.c_.pop_back();
    return p;
}

Poly Poly::homogeneous(std::vector<BigRat> coeffs) {
    if (coeffs.empty()) throw ValidationError("homogeneous form needs at least one slot");
    Poly p;
    p.form_ = PolyForm::Homogeneous;
    p.c_ = std::move(coeffs);
    for (auto& x : p.c_) x.canonicalize();
    return p;
}

Poly Poly::constant(const BigRat& c) { return univariate({c}); }

Poly Poly::variable() { return univariate({BigRat(0), BigRat(1)}); }

Poly Poly::from_zpoly(const ZPoly& p, PolyForm form) {
    std::vector<BigRat> c;
    c.reserve(static_cast<size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c.emplace_back(p[i]);
    if (form == PolyForm::Univariate) return univariate(std::move(c));
    if (p.is_zero()) throw ValidationError("cannot make a homogeneous form from zero");
    return homogeneous(std::move(c));
}

bool Poly::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

int Poly::degree() const { return static_cast<int>(c_.size()) - 1; }

const BigRat& Poly::coeff(int i) const {
    static const BigRat zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

std::pair<BigRat, ZPoly> Poly::to_zpoly() const {
    if (is_zero()) return {BigRat(0), ZPoly()};
    BigInt den = 1;
    for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<BigInt> ic;
    ic.reserve(c_.size());
    for (const auto& x : c_) ic.push_back(BigInt(x.get_num() * (den / x.get_den())));
    ZPoly zp(std::move(ic));
    BigInt cont = zp_content(zp);
    if (zp.leading() < 0) cont = -cont;
    ZPoly prim = zp_div_exact(zp, ZPoly::constant(cont));
    BigRat unit(cont, den);
    unit.canonicalize();
    return {unit, prim};
}

std::pair<Poly, int> Poly::dehomogenize() const {
    require_homogeneous(*this, "dehomogenize");
    int top = degree();
    while (top >= 0 && c_[static_cast<size_t>(top)] == 0) --top;
    int a = degree() - top;  // Y-power
    std::vector<BigRat> f(c_.begin(), c_.begin() + top + 1);
    return {univariate(std::move(f)), a};
}

Poly Poly::homogenize(int form_degree) const {
    require_univariate(*this, "homogenize");
    if (is_zero()) throw ValidationError("cannot homogenize the zero polynomial");
    if (form_degree < degree()) throw ValidationError("homogenize: form degree below polynomial degree");
    std::vector<BigRat> c(static_cast<size_t>(form_degree) + 1, BigRat(0));
    for (int i = 0; i <= degree(); ++i) c[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
    return homogeneous(std::move(c));
}

Poly Poly::swap_vars() const {
    require_homogeneous(*this, "swap_vars");
    std::vector<BigRat> c(c_.rbegin(), c_.rend());
    return homogeneous(std::move(c));
}

BigRat Poly::eval(const BigRat& x) const {
    require_univariate(*this, "eval");
    BigRat r(0);
    for (int i = degree(); i >= 0; --i) r = r * x + c_[static_cast<size_t>(i)];
    return r;
}

BigRat Poly::eval2(const BigRat& x, const BigRat& y) const {
    require_homogeneous(*this, "eval2");
    BigRat r(0);
    std::vector<BigRat> ypows(c_.size());
    BigRat ypow(1);
    for (size_t i = 0; i < c_.size(); ++i) {
        ypows[c_.size() - 1 - i] = ypow;
        ypow *= y;
    }
    BigRat xpow(1);
    for (size_t i = 0; i < c_.size(); ++i) {
        r += c_[i] * xpow * ypows[i];
        xpow *= x;
    }
    return r;
}

std::string Poly::to_string() const {
    if (form_ == PolyForm::Univariate) {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigRat& a = coeff(i);
            if (a == 0) continue;
            BigRat m = abs(a);
            if (!first) os << (a > 0 ? " + " : " - ");
            else if (a < 0) os << "-";
            if (m != 1 || i == 0) os << rational_string(m);
            if (i > 0) {
                if (m != 1) os << "*";
                os << "z";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }
    std::ostringstream os;
    bool first = true;
    int d = degree();
    for (int i = d; i >= 0; --i) {
        const BigRat& a = coeff(i);
        if (a == 0) continue;
        BigRat m = abs(a);
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        bool named = false;
        if (m != 1 || i == 0) {
            os << rational_string(m);
            named = true;
        }
        if (i > 0) {
            if (named) os << "*";
            os << "X";
            if (i > 1) os << "^" << i;
            named = true;
        }
        if (d - i > 0) {
            if (named) os << "*";
            os << "Y";
            if (d - i > 1) os << "^" << (d - i);
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

Poly poly_add(const Poly& a, const Poly& b) {
    if (a.form() != b.form()) throw FormMismatchError("poly_add: form mismatch");
    if (a.form() == PolyForm::Homogeneous && a.degree() != b.degree())
        throw FormMismatchError("poly_add: homogeneous degrees differ");
    std::vector<BigRat> c(static_cast<size_t>(std::max(a.degree(), b.degree())) + 1, BigRat(0));
    for (int i = 0; i < static_cast<int>(c.size()); ++i) c[static_cast<size_t>(i)] = a.coeff(i) + b.coeff(i);
    return a.form() == PolyForm::Univariate ? Poly::univariate(std::move(c)) : Poly::homogeneous(std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    if (a.form() != b.form()) throw FormMismatchError("poly_sub: form mismatch");
    if (a.form() == PolyForm::Homogeneous && a.degree() != b.degree())
        throw FormMismatchError("poly_sub: homogeneous degrees differ");
    std::vector<BigRat> c(static_cast<size_t>(std::max(a.degree(), b.degree())) + 1, BigRat(0));
    for (int i = 0; i < static_cast<int>(c.size()); ++i) c[static_cast<size_t>(i)] = a.coeff(i) - b.coeff(i);
    return a.form() == PolyForm::Univariate ? Poly::univariate(std::move(c)) : Poly::homogeneous(std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.form() != b.form()) throw FormMismatchError("poly_mul: form mismatch");
    if (a.form() == PolyForm::Univariate && (a.is_zero() || b.is_zero())) return Poly();
    std::vector<BigRat> c(static_cast<size_t>(a.degree() + b.degree()) + 1, BigRat(0));
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; j <= b.degree(); ++j) {
            if (b.coeff(j) == 0) continue;
            c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
    }
    return a.form() == PolyForm::Univariate ? Poly::univariate(std::move(c)) : Poly::homogeneous(std::move(c));
}

std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
    require_univariate(a, "poly_divrem");
    require_univariate(b, "poly_divrem");
    if (b.is_zero()) throw DivisionByZeroError("poly_divrem: division by zero polynomial");
    std::vector<BigRat> rem(a.coeffs());
    int da = a.degree(), db = b.degree();
    if (da < db) return {Poly(), a};
    std::vector<BigRat> quot(static_cast<size_t>(da - db) + 1, BigRat(0));
    const BigRat& lb = b.coeff(db);
    for (int i = da; i >= db; --i) {
        BigRat top = rem[static_cast<size_t>(i)];
        if (top == 0) continue;
        BigRat f = top / lb;
        quot[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeff(j);
    }
    return {Poly::univariate(std::move(quot)), Poly::univariate(std::move(rem))};
}

Poly poly_derivative(const Poly& a) {
    require_univariate(a, "poly_derivative");
    if (a.degree() < 1) return Poly();
    std::vector<BigRat> c(static_cast<size_t>(a.degree()));
    for (int i = 1; i <= a.degree(); ++i) c[static_cast<size_t>(i - 1)] = BigRat(i) * a.coeff(i);
    return Poly::univariate(std::move(c));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.form() != b.form()) throw FormMismatchError("poly_gcd: form mismatch");
    if (a.is_zero() && b.is_zero()) throw DivisionByZeroError("poly_gcd: both inputs zero");
    if (a.form() == PolyForm::Univariate) {
        if (a.is_zero()) return poly_gcd(b, b);
        if (b.is_zero()) return poly_gcd(a, a);
        auto [ua, za] = a.to_zpoly();
        auto [ub, zb] = b.to_zpoly();
        return Poly::from_zpoly(zp_gcd(za, zb));
    }
    if (a.is_zero() || b.is_zero()) {
        const Poly& nz = a.is_zero() ? b : a;
        auto [f, ypow] = nz.dehomogenize();
        auto [u, z] = f.to_zpoly();
        return Poly::from_zpoly(z, PolyForm::Univariate).homogenize(z.degree() + ypow);
    }
    auto [fa, ya] = a.dehomogenize();
    auto [fb, yb] = b.dehomogenize();
    auto [ua, za] = fa.to_zpoly();
    auto [ub, zb] = fb.to_zpoly();
    ZPoly g = zp_gcd(za, zb);
    int ypow = std::min(ya, yb);
    return Poly::from_zpoly(g).homogenize(g.degree() + ypow);
}

BigRat resultant(const Poly& F, const Poly& G) {
    require_homogeneous(F, "resultant");
    require_homogeneous(G, "resultant");
    if (F.is_zero() || G.is_zero()) return BigRat(0);
    int m = F.degree(), n = G.degree();
    auto [f, a] = F.dehomogenize();
    auto [g, b] = G.dehomogenize();
    if (a > 0 && b > 0) return BigRat(0);  // common root at [1:0]
    auto [uf, zf] = f.to_zpoly();
    auto [ug, zg] = g.to_zpoly();
    // scalar units contribute unit^(other form degree)
    BigRat scale(1);
    for (int i = 0; i < n; ++i) scale *= uf;
    for (int i = 0; i < m; ++i) scale *= ug;
    BigRat res(zp_resultant(zf, zg));
    // degree-drop corrections against the padded Sylvester determinant:
    // Syl_{m,n}(Y^a*F1, G) = (-1)^(a*n) lc(G)^a Syl_{m-a,n}(F1, G) and
    // Syl_{m,n}(F, Y^b*G1) = lc(F)^b Syl_{m,n-b}(F, G1)
    if (a > 0) {
        BigRat corr(1);
        for (int i = 0; i < a; ++i) corr *= BigRat(zg.leading());
        if ((a * n) % 2 == 1) corr = -corr;
        res *= corr;
    } else if (b > 0) {
        BigRat corr(1);
        for (int i = 0; i < b; ++i) corr *= BigRat(zf.leading());
        res *= corr;
    }
    return scale * res;
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) throw DivisionByZeroError("squarefree_part: zero input");
    if (p.form() == PolyForm::Univariate) {
        auto [u, z] = p.to_zpoly();
        return Poly::from_zpoly(zp_squarefree_part(z));
    }
    auto [f, ypow] = p.dehomogenize();
    auto [u, z] = f.to_zpoly();
    ZPoly sf = zp_squarefree_part(z);
    return Poly::from_zpoly(sf).homogenize(sf.degree() + std::min(ypow, 1));
}

Poly Factorization::expand() const {
    Poly acc = Poly::constant(unit);
    PolyForm form = PolyForm::Univariate;
    for (const auto& [f, m] : factors)
        if (f.form() == PolyForm::Homogeneous) form = PolyForm::Homogeneous;
    if (form == PolyForm::Homogeneous) acc = Poly::homogeneous({unit});
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) acc = poly_mul(acc, f);
    return acc;
}

Factorization factor_rational(const Poly& p) {
    if (p.is_zero()) throw Error("factor_rational: zero input");
    Factorization out;
    if (p.form() == PolyForm::Univariate) {
        auto [unit, z] = p.to_zpoly();
        ZFactorization zf = zp_factor(z);
        out.unit = unit * BigRat(zf.content);
        out.unit.canonicalize();
        for (const auto& [f, m] : zf.factors) out.factors.emplace_back(Poly::from_zpoly(f), m);
        return out;
    }
    auto [f, ypow] = p.dehomogenize();
    auto [unit, z] = f.to_zpoly();
    ZFactorization zf = zp_factor(z);
    out.unit = unit * BigRat(zf.content);
    out.unit.canonicalize();
    if (ypow > 0) out.factors.emplace_back(Poly::homogeneous({BigRat(1), BigRat(0)}), ypow);
    for (const auto& [g, m] : zf.factors)
        out.factors.emplace_back(Poly::from_zpoly(g).homogenize(g.degree()), m);
    return out;
}

}  // namespace perlab
