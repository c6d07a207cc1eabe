#include "perlab/modpoly.hpp"

#include <algorithm>
#include <random>

namespace perlab {

void ModPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::from_zpoly(const ZPoly& a, std::uint64_t p) {
    std::vector<std::uint64_t> c(a.degree() + 1);
    BigInt bp(static_cast<unsigned long>(p));
    for (int i = 0; i <= a.degree(); ++i) {
        BigInt r = a[i] % bp;
        if (r < 0) r += bp;
        c[static_cast<size_t>(i)] = r.get_ui();
    }
    return ModPoly(p, std::move(c));
}

ModPoly ModPoly::monic() const {
    if (is_zero()) return *this;
    return mp_scale(*this, invmod_u64(leading(), p_));
}

ModPoly mp_add(const ModPoly& a, const ModPoly& b) {
    std::uint64_t p = a.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        std::uint64_t x = i < a.c_.size() ? a.c_[i] : 0;
        std::uint64_t y = i < b.c_.size() ? b.c_[i] : 0;
        c[i] = (x + y) % p;
    }
    return ModPoly(p, std::move(c));
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b) {
    std::uint64_t p = a.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        std::uint64_t x = i < a.c_.size() ? a.c_[i] : 0;
        std::uint64_t y = i < b.c_.size() ? b.c_[i] : 0;
        c[i] = (x + p - y) % p;
    }
    return ModPoly(p, std::move(c));
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p_);
    std::uint64_t p = a.p_;
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            c[i + j] = (c[i + j] + mulmod_u64(a.c_[i], b.c_[j], p)) % p;
        }
    }
    return ModPoly(p, std::move(c));
}

ModPoly mp_scale(const ModPoly& a, std::uint64_t s) {
    std::uint64_t p = a.p_;
    s %= p;
    std::vector<std::uint64_t> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = mulmod_u64(a.c_[i], s, p);
    return ModPoly(p, std::move(c));
}

void mp_divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
    if (b.is_zero()) throw DivisionByZeroError("mp_divrem: zero divisor");
    std::uint64_t p = a.prime();
    std::vector<std::uint64_t> rem(a.coeffs());
    int db = b.degree();
    int da = static_cast<int>(rem.size()) - 1;
    if (da < db) {
        q = ModPoly(p);
        r = a;
        return;
    }
    std::vector<std::uint64_t> quot(static_cast<size_t>(da - db + 1), 0);
    std::uint64_t inv = invmod_u64(b.leading(), p);
    for (int i = da; i >= db; --i) {
        std::uint64_t top = rem[static_cast<size_t>(i)];
        if (top == 0) continue;
        std::uint64_t f = mulmod_u64(top, inv, p);
        quot[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            std::uint64_t& slot = rem[static_cast<size_t>(i - db + j)];
            slot = (slot + p - mulmod_u64(f, b[j], p)) % p;
        }
    }
    rem.resize(static_cast<size_t>(db) > 0 ? static_cast<size_t>(db) : 0);
    q = ModPoly(p, std::move(quot));
    r = ModPoly(p, std::move(rem));
}

ModPoly mp_rem(const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    mp_divrem(a, b, q, r);
    return r;
}

ModPoly mp_gcd(const ModPoly& a, const ModPoly& b) {
    ModPoly x = a, y = b;
    while (!y.is_zero()) {
        ModPoly r = mp_rem(x, y);
        x = y;
        y = r;
    }
    return x.monic();
}

ModPoly mp_derivative(const ModPoly& a) {
    if (a.degree() < 1) return ModPoly(a.prime());
    std::vector<std::uint64_t> c(static_cast<size_t>(a.degree()), 0);
    for (int i = 1; i <= a.degree(); ++i)
        c[static_cast<size_t>(i - 1)] = mulmod_u64(a[i], static_cast<std::uint64_t>(i) % a.prime(), a.prime());
    return ModPoly(a.prime(), std::move(c));
}

ModPoly mp_powmod(const ModPoly& a, const BigInt& e, const ModPoly& f) {
    ModPoly base = mp_rem(a, f);
    ModPoly result(a.prime(), {1});
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (size_t i = nbits; i-- > 0;) {
        result = mp_rem(mp_mul(result, result), f);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mp_rem(mp_mul(result, base), f);
    }
    return result;
}

ModPoly mp_xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
    std::uint64_t p = a.prime();
    ModPoly r0 = a, r1 = b;
    ModPoly s0(p, {1}), s1(p);
    ModPoly t0(p), t1(p, {1});
    while (!r1.is_zero()) {
        ModPoly q, r;
        mp_divrem(r0, r1, q, r);
        r0 = r1;
        r1 = r;
        ModPoly s2 = mp_sub(s0, mp_mul(q, s1));
        s0 = s1;
        s1 = s2;
        ModPoly t2 = mp_sub(t0, mp_mul(q, t1));
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero()) throw Error("mp_xgcd: both inputs zero");
    std::uint64_t inv = invmod_u64(r0.leading(), p);
    s = mp_scale(s0, inv);
    t = mp_scale(t0, inv);
    return r0.monic();
}

namespace {

ModPoly mp_div_exact(const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    mp_divrem(a, b, q, r);
    if (!r.is_zero()) throw Error("mp_div_exact: not divisible");
    return q;
}

// Equal-degree splitting (Cantor-Zassenhaus) of monic squarefree f whose
// irreducible factors all have degree d.
void edf(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    std::uint64_t p = f.prime();
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
        std::vector<std::uint64_t> rc(static_cast<size_t>(f.degree()), 0);
        for (auto& x : rc) x = rng() % p;
        ModPoly r(p, std::move(rc));
        if (r.is_zero()) continue;
        ModPoly g = mp_gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(mp_div_exact(f, g), d, rng, out);
            return;
        }
        ModPoly h = mp_powmod(r, e, f);
        h = mp_sub(h, ModPoly(p, {1}));
        g = mp_gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(mp_div_exact(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<ModPoly> mp_factor_squarefree(const ModPoly& f_in) {
    ModPoly f = f_in.monic();
    std::uint64_t p = f.prime();
    std::vector<ModPoly> factors;
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ p);

    // distinct-degree split: h tracks x^(p^d) mod rest
    ModPoly x(p, {0, 1});
    ModPoly h = x;
    std::vector<std::pair<ModPoly, int>> stages;
    ModPoly rest = f;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = mp_powmod(h, BigInt(static_cast<unsigned long>(p)), rest);
        ModPoly g = mp_gcd(mp_sub(h, x), rest);
        if (g.degree() > 0) {
            stages.emplace_back(g, d);
            rest = mp_div_exact(rest, g);
            h = mp_rem(h, rest);
        }
        if (rest.degree() == 0) break;
    }
    if (rest.degree() > 0) stages.emplace_back(rest, rest.degree());

    for (auto& [part, d] : stages) edf(part, d, rng, factors);

    std::sort(factors.begin(), factors.end(), [](const ModPoly& a, const ModPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return factors;
}

}  // namespace perlab
