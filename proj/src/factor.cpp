#include "perlab/factor.hpp"

#include "perlab/modpoly.hpp"

#include <algorithm>
#include <cmath>

namespace perlab {

namespace {

// ---- polynomial arithmetic modulo a big integer M (vectors, index = degree) ----

using MVec = std::vector<BigInt>;

void mtrim(MVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MVec mreduce(MVec a, const BigInt& M) {
    for (auto& x : a) {
        x %= M;
        if (x < 0) x += M;
    }
    mtrim(a);
    return a;
}

MVec madd(const MVec& a, const MVec& b, const BigInt& M) {
    MVec r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
        r[i] %= M;
    }
    mtrim(r);
    return r;
}

MVec msub(const MVec& a, const MVec& b, const BigInt& M) {
    MVec r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
        r[i] %= M;
        if (r[i] < 0) r[i] += M;
    }
    mtrim(r);
    return r;
}

MVec mmul(const MVec& a, const MVec& b, const BigInt& M) {
    if (a.empty() || b.empty()) return {};
    MVec r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return mreduce(std::move(r), M);
}

// divrem by a polynomial with invertible leading coefficient
void mdivrem(const MVec& a, const MVec& b, const BigInt& M, MVec& q, MVec& r) {
    if (b.empty()) throw DivisionByZeroError("mdivrem: zero divisor");
    r = a;
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(r.size()) - 1;
    if (da < db) {
        q.clear();
        return;
    }
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), M.get_mpz_t()) == 0)
        throw Error("mdivrem: leading coefficient not invertible");
    q.assign(static_cast<size_t>(da - db + 1), BigInt(0));
    for (int i = da; i >= db; --i) {
        BigInt top = r[static_cast<size_t>(i)] % M;
        if (top == 0) continue;
        BigInt f = (top * inv) % M;
        q[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            BigInt& slot = r[static_cast<size_t>(i - db + j)];
            slot = (slot - f * b[static_cast<size_t>(j)]) % M;
            if (slot < 0) slot += M;
        }
    }
    r.resize(static_cast<size_t>(db));
    mtrim(r);
    mtrim(q);
}

MVec from_modpoly(const ModPoly& a) {
    MVec r(static_cast<size_t>(a.degree() + 1));
    for (int i = 0; i <= a.degree(); ++i) r[static_cast<size_t>(i)] = static_cast<unsigned long>(a[i]);
    return r;
}

MVec from_zpoly_mod(const ZPoly& a, const BigInt& M) {
    MVec r(a.coeffs().begin(), a.coeffs().end());
    return mreduce(std::move(r), M);
}

ZPoly balanced_zpoly(const MVec& a, const BigInt& M) {
    std::vector<BigInt> c(a);
    BigInt half = M / 2;
    for (auto& x : c) {
        x %= M;
        if (x < 0) x += M;
        if (x > half) x -= M;
    }
    return ZPoly(std::move(c));
}

// ---- Hensel machinery ----

struct HenselPair {
    MVec g, h, s, t;
};

// One quadratic lifting step: from modulus m to m^2, given f = g*h (mod m),
// s*g + t*h = 1 (mod m), h monic.
void hensel_step(const MVec& f, HenselPair& p, const BigInt& m) {
    BigInt M = m * m;
    MVec g = mreduce(p.g, M), h = mreduce(p.h, M), s = mreduce(p.s, M), t = mreduce(p.t, M);
    MVec e = msub(f, mmul(g, h, M), M);
    MVec q, r;
    mdivrem(mmul(s, e, M), h, M, q, r);
    MVec gstar = madd(g, madd(mmul(t, e, M), mmul(q, g, M), M), M);
    MVec hstar = madd(h, r, M);
    MVec b = msub(madd(mmul(s, gstar, M), mmul(t, hstar, M), M), MVec{BigInt(1)}, M);
    MVec c, d;
    mdivrem(mmul(s, b, M), hstar, M, c, d);
    MVec sstar = msub(s, d, M);
    MVec tstar = msub(t, madd(mmul(t, b, M), mmul(c, gstar, M), M), M);
    p = {std::move(gstar), std::move(hstar), std::move(sstar), std::move(tstar)};
}

// Lifts the factorization F = lc(F) * prod(monic factors[lo..hi)) from mod p
// to mod P (P a power of p), recursively over a balanced factor tree.
// F is given mod P; results are monic mod P, appended in order.
void hensel_tree(const MVec& F, const std::vector<ModPoly>& factors, size_t lo, size_t hi,
                 std::uint64_t prime, const BigInt& P, std::vector<MVec>& out) {
    if (hi - lo == 1) {
        // normalize leaf to monic mod P
        MVec f = mreduce(F, P);
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), P.get_mpz_t()) == 0)
            throw Error("hensel_tree: leaf not normalizable");
        for (auto& x : f) x = (x * inv) % P;
        out.push_back(std::move(f));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    ModPoly gp(prime, {1}), hp(prime, {1});
    for (size_t i = lo; i < mid; ++i) gp = mp_mul(gp, factors[i]);
    for (size_t i = mid; i < hi; ++i) hp = mp_mul(hp, factors[i]);
    BigInt bp(static_cast<unsigned long>(prime));
    std::uint64_t lc_modp = mpz_fdiv_ui(F.back().get_mpz_t(), static_cast<unsigned long>(prime));
    gp = mp_scale(gp, lc_modp);
    ModPoly sp, tp;
    mp_xgcd(gp, hp, sp, tp);

    HenselPair hp2{from_modpoly(gp), from_modpoly(hp), from_modpoly(sp), from_modpoly(tp)};
    BigInt m = bp;
    while (m < P) {
        MVec fm = mreduce(F, m * m);
        hensel_step(fm, hp2, m);
        m = m * m;
    }
    // children now known mod m >= P; reduce to P
    MVec g = mreduce(hp2.g, P), h = mreduce(hp2.h, P);
    hensel_tree(g, factors, lo, mid, prime, P, out);
    hensel_tree(h, factors, mid, hi, prime, P, out);
}

// ---- Zassenhaus ----

std::uint64_t pick_hensel_prime(const ZPoly& f, std::uint64_t from) {
    std::uint64_t p = next_prime_u64(from);
    while (true) {
        BigInt bp(static_cast<unsigned long>(p));
        if (f.leading() % bp != 0) {
            ModPoly fp = ModPoly::from_zpoly(f, p);
            ModPoly g = mp_gcd(fp, mp_derivative(fp));
            if (g.degree() == 0) return p;
        }
        p = next_prime_u64(p + 1);
    }
}

std::vector<bool> subset_degree_set(const std::vector<int>& degs, int n) {
    std::vector<bool> can(static_cast<size_t>(n) + 1, false);
    can[0] = true;
    for (int d : degs)
        for (int s = n; s >= d; --s)
            if (can[static_cast<size_t>(s - d)]) can[static_cast<size_t>(s)] = true;
    return can;
}

std::vector<int> ddf_degree_multiset(const ZPoly& f, std::uint64_t p) {
    // distinct-degree factorization pattern only (no splitting)
    ModPoly fp = ModPoly::from_zpoly(f, p).monic();
    std::vector<int> degs;
    ModPoly x(p, {0, 1});
    ModPoly h = x;
    ModPoly rest = fp;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = mp_powmod(h, BigInt(static_cast<unsigned long>(p)), rest);
        ModPoly g = mp_gcd(mp_sub(h, x), rest);
        if (g.degree() > 0) {
            for (int i = 0; i < g.degree() / d; ++i) degs.push_back(d);
            ModPoly q, r;
            mp_divrem(rest, g, q, r);
            rest = q;
            h = mp_rem(h, rest);
        }
        if (rest.degree() == 0) break;
    }
    if (rest.degree() > 0) degs.push_back(rest.degree());
    return degs;
}

constexpr long kRecombinationCap = 1 << 20;

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    const int n = f.degree();
    std::uint64_t p = pick_hensel_prime(f, 1000000);
    ModPoly fp = ModPoly::from_zpoly(f, p);
    std::vector<ModPoly> modular = mp_factor_squarefree(fp);
    const size_t r = modular.size();
    if (r == 1) return {f};

    // allowed factor degrees: intersect subset-sum sets over this prime and
    // two further good primes; prunes recombination and can certify
    // irreducibility outright
    std::vector<int> degs0;
    for (const auto& g : modular) degs0.push_back(g.degree());
    std::vector<bool> allowed = subset_degree_set(degs0, n);
    std::uint64_t q = p;
    for (int extra = 0; extra < 2; ++extra) {
        q = pick_hensel_prime(f, q + 1);
        std::vector<bool> can = subset_degree_set(ddf_degree_multiset(f, q), n);
        for (int i = 0; i <= n; ++i) allowed[static_cast<size_t>(i)] = allowed[static_cast<size_t>(i)] && can[static_cast<size_t>(i)];
    }
    bool only_trivial = true;
    for (int i = 1; i < n; ++i)
        if (allowed[static_cast<size_t>(i)]) only_trivial = false;
    if (only_trivial) return {f};

    // Hensel lift to p^K > 2 * |lc| * 2^n * |f|_2 (Mignotte-type bound for
    // lc-premultiplied factor candidates)
    double norm2_log2 = 0.0;
    {
        double s = 0.0;
        for (const auto& c : f.coeffs()) {
            double l = log2_abs(c);
            if (l > s) s = l;
        }
        norm2_log2 = s + 0.5 * std::log2(static_cast<double>(n + 1));
    }
    double bits = 2.0 + log2_abs(f.leading()) + static_cast<double>(n) + norm2_log2;
    long K = static_cast<long>(std::ceil(bits / std::log2(static_cast<double>(p)))) + 1;
    BigInt P;
    mpz_ui_pow_ui(P.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(K));

    std::vector<MVec> lifted;
    hensel_tree(from_zpoly_mod(f, P), modular, 0, r, p, P, lifted);

    // subset recombination, cardinality-increasing
    std::vector<size_t> avail(r);
    for (size_t i = 0; i < r; ++i) avail[i] = i;
    ZPoly rest = f;
    std::vector<ZPoly> found;
    long tested = 0;

    auto next_comb = [](std::vector<size_t>& comb, size_t n_items) -> bool {
        size_t k = comb.size();
        for (size_t i = k; i-- > 0;) {
            if (comb[i] != i + n_items - k) {
                ++comb[i];
                for (size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    size_t card = 1;
    while (!avail.empty() && 2 * card <= avail.size()) {
        bool removed = false;
        std::vector<size_t> comb(card);
        for (size_t i = 0; i < card; ++i) comb[i] = i;
        do {
            int dsum = 0;
            for (size_t i = 0; i < card; ++i) dsum += modular[avail[comb[i]]].degree();
            if (dsum < 1 || dsum >= n || !allowed[static_cast<size_t>(dsum)]) continue;
            if (++tested > kRecombinationCap)
                throw ResourceError("factor: recombination subset cap (2^20) exceeded");
            // constant-coefficient screen before the full product
            BigInt c0 = rest.leading();
            for (size_t i = 0; i < card; ++i) c0 = (c0 * lifted[avail[comb[i]]][0]) % P;
            BigInt half = P / 2;
            c0 %= P;
            if (c0 < 0) c0 += P;
            if (c0 > half) c0 -= P;
            BigInt target0 = rest.leading() * rest[0];
            if (target0 != 0 && (c0 == 0 || mpz_divisible_p(target0.get_mpz_t(), c0.get_mpz_t()) == 0))
                continue;
            MVec prod{BigInt(1)};
            for (size_t i = 0; i < card; ++i) prod = mmul(prod, lifted[avail[comb[i]]], P);
            for (auto& x : prod) x = (x * rest.leading()) % P;
            ZPoly cand = zp_primitive(balanced_zpoly(prod, P));
            if (cand.degree() == dsum && zp_divides(cand, rest)) {
                found.push_back(cand);
                rest = zp_div_exact(rest, cand);
                std::vector<size_t> sel;
                for (size_t i = 0; i < card; ++i) sel.push_back(avail[comb[i]]);
                std::vector<size_t> na;
                for (size_t i : avail)
                    if (std::find(sel.begin(), sel.end(), i) == sel.end()) na.push_back(i);
                avail = std::move(na);
                removed = true;
                break;
            }
        } while (next_comb(comb, avail.size()));
        if (!removed) ++card;
    }
    if (!avail.empty()) found.push_back(zp_primitive(rest));
    return found;
}

bool is_xn_minus_1(const ZPoly& f) {
    if (f.degree() < 1 || f[0] != -1 || f.leading() != 1) return false;
    for (int i = 1; i < f.degree(); ++i)
        if (f[i] != 0) return false;
    return true;
}

bool is_xn_plus_1(const ZPoly& f) {
    if (f.degree() < 1 || f[0] != 1 || f.leading() != 1) return false;
    for (int i = 1; i < f.degree(); ++i)
        if (f[i] != 0) return false;
    return true;
}

}  // namespace

std::vector<ZPoly> zp_factor_squarefree(const ZPoly& f_in) {
    ZPoly f = zp_primitive(f_in);
    if (f.degree() <= 0) return {};
    if (f.degree() == 1) return {f};
    if (is_xn_minus_1(f)) {
        std::vector<ZPoly> out;
        int m = f.degree();
        for (int d = 1; d <= m; ++d)
            if (m % d == 0) out.push_back(cyclotomic(d));
        return out;
    }
    if (is_xn_plus_1(f)) {
        // x^m + 1 = prod of Phi_d for d | 2m, d not | m
        std::vector<ZPoly> out;
        int m = f.degree();
        for (int d = 1; d <= 2 * m; ++d)
            if ((2 * m) % d == 0 && m % d != 0) out.push_back(cyclotomic(d));
        return out;
    }
    if (eisenstein_prime(f)) return {f};
    return zassenhaus(f);
}

ZFactorization zp_factor(const ZPoly& f) {
    if (f.is_zero()) throw Error("zp_factor: zero polynomial");
    ZFactorization out;
    BigInt cont = zp_content(f);
    if (f.leading() < 0) cont = -cont;
    out.content = cont;
    ZPoly prim = zp_div_exact(f, ZPoly::constant(cont));
    if (prim.degree() == 0) return out;

    // strip powers of x
    int k = 0;
    while (prim[k] == 0) ++k;
    if (k > 0) {
        std::vector<BigInt> c(prim.coeffs().begin() + k, prim.coeffs().end());
        prim = ZPoly(std::move(c));
        out.factors.emplace_back(ZPoly::monomial(BigInt(1), 1), k);
    }
    if (prim.degree() >= 1) {
        std::vector<ZPoly> parts = zp_yun(prim);
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].degree() < 1) continue;
            for (auto& irr : zp_factor_squarefree(parts[i]))
                out.factors.emplace_back(irr, static_cast<int>(i) + 1);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        if (a.first.coeffs() != b.first.coeffs()) return a.first.coeffs() < b.first.coeffs();
        return a.second < b.second;
    });
    return out;
}

std::vector<int> zp_factor_degrees(const ZPoly& f) {
    if (!zp_is_squarefree(f)) throw Error("zp_factor_degrees: input not squarefree");
    std::vector<int> degs;
    for (const auto& irr : zp_factor_squarefree(f)) degs.push_back(irr.degree());
    std::sort(degs.begin(), degs.end());
    return degs;
}

}  // namespace perlab
