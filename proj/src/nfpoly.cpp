#include "perlab/nfpoly.hpp"

#include "perlab/factor.hpp"

namespace perlab {

NumberField::NumberField(ZPoly minpoly) : m_(std::move(minpoly)) {
    if (m_.degree() < 1) throw ValidationError("NumberField: minpoly must be nonconstant");
}

NFElem nf_zero(const NumberField& K) { return NFElem(static_cast<size_t>(K.degree()), BigRat(0)); }

NFElem nf_one(const NumberField& K) {
    NFElem e = nf_zero(K);
    e[0] = 1;
    return e;
}

NFElem nf_from_rat(const NumberField& K, const BigRat& x) {
    NFElem e = nf_zero(K);
    e[0] = x;
    return e;
}

NFElem nf_gen(const NumberField& K) {
    NFElem e = nf_zero(K);
    if (K.degree() == 1) {
        e[0] = BigRat(-K.minpoly()[0], K.minpoly()[1]);
        e[0].canonicalize();
    } else {
        e[1] = 1;
    }
    return e;
}

bool nf_is_zero(const NFElem& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

NFElem nf_add(const NumberField&, const NFElem& a, const NFElem& b) {
    NFElem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

NFElem nf_sub(const NumberField&, const NFElem& a, const NFElem& b) {
    NFElem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

NFElem nf_from_poly(const NumberField& K, const std::vector<BigRat>& coeffs) {
    const ZPoly& m = K.minpoly();
    int d = K.degree();
    std::vector<BigRat> c = coeffs;
    BigRat lead_inv(BigInt(1), m.leading());
    lead_inv.canonicalize();
    for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
        BigRat f = c[static_cast<size_t>(i)] * lead_inv;
        if (f == 0) continue;
        for (int j = 0; j <= d; ++j) c[static_cast<size_t>(i - d + j)] -= f * BigRat(m[j]);
    }
    c.resize(static_cast<size_t>(d), BigRat(0));
    for (auto& x : c) x.canonicalize();
    return c;
}

NFElem nf_mul(const NumberField& K, const NFElem& a, const NFElem& b) {
    size_t d = static_cast<size_t>(K.degree());
    std::vector<BigRat> prod(2 * d - 1, BigRat(0));
    for (size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    return nf_from_poly(K, prod);
}

NFElem nf_inv(const NumberField& K, const NFElem& a) {
    if (nf_is_zero(a)) throw DivisionByZeroError("nf_inv: zero element");
    auto trim = [](std::vector<BigRat>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    std::vector<BigRat> r0, r1 = a;
    for (int i = 0; i <= K.minpoly().degree(); ++i) r0.emplace_back(K.minpoly()[i]);
    trim(r0);
    trim(r1);
    std::vector<BigRat> s0{BigRat(0)}, s1{BigRat(1)};  // Bezout cofactors of a
    while (!r1.empty()) {
        std::vector<BigRat> q;
        std::vector<BigRat> rem = r0;
        int db = static_cast<int>(r1.size()) - 1;
        BigRat lb = r1.back();
        if (static_cast<int>(rem.size()) - 1 >= db) {
            q.assign(rem.size() - r1.size() + 1, BigRat(0));
            for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
                BigRat top = rem[static_cast<size_t>(i)];
                if (top == 0) continue;
                BigRat f = top / lb;
                q[static_cast<size_t>(i - db)] = f;
                for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * r1[static_cast<size_t>(j)];
            }
            trim(rem);
        }
        std::vector<BigRat> qs;
        if (!q.empty() && !s1.empty()) {
            qs.assign(q.size() + s1.size() - 1, BigRat(0));
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
            }
        }
        std::vector<BigRat> s2(std::max(s0.size(), qs.size()), BigRat(0));
        for (size_t i = 0; i < s2.size(); ++i) {
            if (i < s0.size()) s2[i] += s0[i];
            if (i < qs.size()) s2[i] -= qs[i];
        }
        trim(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r0.size() != 1) throw Error("nf_inv: element not invertible");
    BigRat scale = 1 / r0[0];
    for (auto& x : s0) x *= scale;
    return nf_from_poly(K, s0);
}

NFPoly nfp_from_zpoly(const NumberField& K, const ZPoly& p) {
    NFPoly r;
    for (int i = 0; i <= p.degree(); ++i) r.push_back(nf_from_rat(K, BigRat(p[i])));
    nfp_trim(r);
    return r;
}

void nfp_trim(NFPoly& p) {
    while (!p.empty() && nf_is_zero(p.back())) p.pop_back();
}

int nfp_degree(const NFPoly& p) { return static_cast<int>(p.size()) - 1; }

NFPoly nfp_mul(const NumberField& K, const NFPoly& a, const NFPoly& b) {
    if (a.empty() || b.empty()) return {};
    NFPoly r(a.size() + b.size() - 1, nf_zero(K));
    for (size_t i = 0; i < a.size(); ++i) {
        if (nf_is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (nf_is_zero(b[j])) continue;
            r[i + j] = nf_add(K, r[i + j], nf_mul(K, a[i], b[j]));
        }
    }
    nfp_trim(r);
    return r;
}

NFPoly nfp_sub(const NumberField& K, const NFPoly& a, const NFPoly& b) {
    NFPoly r(std::max(a.size(), b.size()), nf_zero(K));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = nf_add(K, r[i], a[i]);
        if (i < b.size()) r[i] = nf_sub(K, r[i], b[i]);
    }
    nfp_trim(r);
    return r;
}

void nfp_divrem(const NumberField& K, const NFPoly& a, const NFPoly& b, NFPoly& q, NFPoly& r) {
    if (b.empty()) throw DivisionByZeroError("nfp_divrem: zero divisor");
    r = a;
    nfp_trim(r);
    int db = nfp_degree(b);
    if (nfp_degree(r) < db) {
        q.clear();
        return;
    }
    NFElem lb_inv = nf_inv(K, b.back());
    q.assign(r.size() - b.size() + 1, nf_zero(K));
    for (int i = nfp_degree(r); i >= db; --i) {
        NFElem top = r[static_cast<size_t>(i)];
        if (nf_is_zero(top)) continue;
        NFElem f = nf_mul(K, top, lb_inv);
        q[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            r[static_cast<size_t>(i - db + j)] =
                nf_sub(K, r[static_cast<size_t>(i - db + j)], nf_mul(K, f, b[static_cast<size_t>(j)]));
    }
    r.resize(static_cast<size_t>(db), nf_zero(K));
    nfp_trim(r);
    nfp_trim(q);
}

NFPoly nfp_monic(const NumberField& K, const NFPoly& a) {
    if (a.empty()) return a;
    NFElem inv = nf_inv(K, a.back());
    NFPoly r = a;
    for (auto& c : r) c = nf_mul(K, c, inv);
    return r;
}

NFPoly nfp_gcd(const NumberField& K, const NFPoly& a, const NFPoly& b) {
    NFPoly x = a, y = b;
    nfp_trim(x);
    nfp_trim(y);
    while (!y.empty()) {
        NFPoly q, r;
        nfp_divrem(K, x, y, q, r);
        x = y;
        y = r;
        if (!y.empty()) y = nfp_monic(K, y);
    }
    if (x.empty()) throw Error("nfp_gcd: both inputs zero");
    return nfp_monic(K, x);
}

namespace {

std::vector<BigRat> rational_coeffs(const NFPoly& p) {
    std::vector<BigRat> c;
    for (const auto& e : p) c.push_back(e[0]);
    return c;
}

ZPoly clear_denominators(const std::vector<BigRat>& c) {
    BigInt den = 1;
    for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<BigInt> ic;
    for (const auto& x : c) ic.push_back(BigInt(x.get_num() * (den / x.get_den())));
    return zp_primitive(ZPoly(std::move(ic)));
}

// A(x - s*t) as a polynomial in x over K (t = field generator).
NFPoly nfp_compose_shift(const NumberField& K, const NFPoly& a, const BigInt& s) {
    NFElem st = nf_mul(K, nf_from_rat(K, BigRat(s)), nf_gen(K));
    NFPoly r;
    for (int i = nfp_degree(a); i >= 0; --i) {
        NFPoly next(r.size() + 1, nf_zero(K));
        for (size_t j = 0; j < r.size(); ++j) {
            next[j + 1] = nf_add(K, next[j + 1], r[j]);
            next[j] = nf_sub(K, next[j], nf_mul(K, r[j], st));
        }
        next[0] = nf_add(K, next[0], a[static_cast<size_t>(i)]);
        nfp_trim(next);
        r = next;
    }
    return r;
}

BigRat nf_elem_norm(const NumberField& K, const NFElem& e) {
    BigInt den = 1;
    for (const auto& x : e) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<BigInt> ic;
    for (const auto& x : e) ic.push_back(BigInt(x.get_num() * (den / x.get_den())));
    ZPoly ze(std::move(ic));
    if (ze.is_zero()) return BigRat(0);
    BigInt res = zp_resultant(K.minpoly(), ze);
    // Norm(e) = Res(m, ze) / (lc(m)^deg(ze) * den^deg(m))
    BigRat r(res);
    BigRat dd(den);
    for (int i = 0; i < K.degree(); ++i) r /= dd;
    BigRat lm(K.minpoly().leading());
    for (int i = 0; i < ze.degree(); ++i) r /= lm;
    r.canonicalize();
    return r;
}

// Norm of f in K[x] as a primitive integer polynomial, by interpolation.
ZPoly nfp_norm(const NumberField& K, const NFPoly& f) {
    int deg = nfp_degree(f) * K.degree();
    std::vector<BigRat> xs;
    std::vector<BigRat> ys;
    BigInt x0 = 0;
    while (static_cast<int>(xs.size()) < deg + 1) {
        NFElem val = nf_zero(K);
        NFElem xv = nf_from_rat(K, BigRat(x0));
        for (int i = nfp_degree(f); i >= 0; --i) val = nf_add(K, nf_mul(K, val, xv), f[static_cast<size_t>(i)]);
        xs.emplace_back(x0);
        ys.push_back(nf_elem_norm(K, val));
        ++x0;
    }
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
    return clear_denominators(acc);
}

}  // namespace

std::vector<NFPoly> nf_factor_squarefree(const NumberField& K, const NFPoly& f_in) {
    NFPoly f = nfp_monic(K, f_in);
    if (nfp_degree(f) <= 1) return {f};
    if (K.degree() == 1) {
        std::vector<NFPoly> out;
        for (const auto& g : zp_factor_squarefree(clear_denominators(rational_coeffs(f))))
            out.push_back(nfp_monic(K, nfp_from_zpoly(K, g)));
        return out;
    }
    for (BigInt s = 0;; ++s) {
        if (s > 40) throw ResourceError("nf_factor_squarefree: no squarefree norm found");
        NFPoly shifted = nfp_compose_shift(K, f, s);
        ZPoly norm = nfp_norm(K, shifted);
        if (norm.degree() != nfp_degree(f) * K.degree()) continue;
        if (!zp_is_squarefree(norm)) continue;
        std::vector<NFPoly> out;
        for (const auto& h : zp_factor_squarefree(norm)) {
            NFPoly hk = nfp_from_zpoly(K, h);
            NFPoly hshift = nfp_compose_shift(K, hk, BigInt(-s));
            NFPoly g = nfp_gcd(K, f, hshift);
            if (nfp_degree(g) >= 1) out.push_back(g);
        }
        return out;
    }
}

std::optional<long> splitting_degree(const ZPoly& f_in, long degree_budget) {
    ZPoly f = zp_primitive(f_in);
    if (!zp_is_squarefree(f)) throw Error("splitting_degree: input not squarefree");
    if (f.degree() <= 1) return 1;

    ZPoly M(std::vector<BigInt>{BigInt(0), BigInt(1)});  // K = Q, generator t = 0
    long field_degree = 1;

    while (true) {
        // the Trager norm in the next round has degree field_degree * deg f;
        // treat the budget as a cap on that workload too
        if (field_degree > 1 && field_degree * static_cast<long>(f.degree()) > std::max(degree_budget, 32L))
            return std::nullopt;
        NumberField K(M);
        std::vector<NFPoly> factors = nf_factor_squarefree(K, nfp_from_zpoly(K, f));
        const NFPoly* pick = nullptr;
        for (const auto& g : factors)
            if (nfp_degree(g) >= 2 && (!pick || nfp_degree(g) < nfp_degree(*pick))) pick = &g;
        if (!pick) return field_degree;  // f splits into linears over K
        long next_degree = field_degree * nfp_degree(*pick);
        if (next_degree > degree_budget) return std::nullopt;

        if (field_degree == 1) {
            M = clear_denominators(rational_coeffs(*pick));
        } else {
            // primitive element gamma = beta + c*t; minpoly = Norm(g(x - c t))
            bool found = false;
            for (BigInt c = 1; c <= 40; ++c) {
                NFPoly shifted = nfp_compose_shift(K, *pick, c);
                ZPoly norm = nfp_norm(K, shifted);
                if (norm.degree() != next_degree) continue;
                if (!zp_is_squarefree(norm)) continue;
                if (zp_factor_squarefree(norm).size() != 1) continue;
                M = norm;
                found = true;
                break;
            }
            if (!found) throw ResourceError("splitting_degree: primitive element search failed");
        }
        field_degree = next_degree;
    }
}

}  // namespace perlab
