#include "perlab/zpoly.hpp"

#include "perlab/modpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace perlab {

void ZPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::constant(BigInt v) {
    ZPoly p;
    if (v != 0) p.c_ = {std::move(v)};
    return p;
}

ZPoly ZPoly::monomial(BigInt v, int k) {
    ZPoly p;
    if (v != 0) {
        p.c_.assign(static_cast<size_t>(k) + 1, BigInt(0));
        p.c_.back() = std::move(v);
    }
    return p;
}

ZPoly ZPoly::xn_minus_1(int n) {
    std::vector<BigInt> c(static_cast<size_t>(n) + 1, BigInt(0));
    c[0] = -1;
    c.back() = 1;
    return ZPoly(std::move(c));
}

const BigInt& ZPoly::operator[](int i) const {
    static const BigInt zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

const BigInt& ZPoly::leading() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

BigInt ZPoly::height() const {
    BigInt h = 0;
    for (const auto& x : c_) {
        BigInt a = abs(x);
        if (a > h) h = a;
    }
    return h;
}

BigInt ZPoly::norm1() const {
    BigInt s = 0;
    for (const auto& x : c_) s += abs(x);
    return s;
}

std::string ZPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& a = (*this)[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        BigInt m = abs(a);
        if (m != 1 || i == 0) os << m.get_str();
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        if (i < a.c_.size()) r.c_[i] += a.c_[i];
        if (i < b.c_.size()) r.c_[i] += b.c_[i];
    }
    r.trim();
    return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        if (i < a.c_.size()) r.c_[i] += a.c_[i];
        if (i < b.c_.size()) r.c_[i] -= b.c_[i];
    }
    r.trim();
    return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    ZPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

ZPoly operator*(const BigInt& s, const ZPoly& a) {
    if (s == 0) return ZPoly();
    ZPoly r = a;
    for (auto& x : r.c_) x *= s;
    return r;
}

ZPoly operator-(const ZPoly& a) { return BigInt(-1) * a; }

BigInt zp_content(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& x : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly zp_primitive(const ZPoly& a) {
    if (a.is_zero()) return a;
    BigInt g = zp_content(a);
    if (a.leading() < 0) g = -g;
    std::vector<BigInt> c(a.coeffs());
    for (auto& x : c) x /= g;
    return ZPoly(std::move(c));
}

ZPoly zp_derivative(const ZPoly& a) {
    if (a.degree() < 1) return ZPoly();
    std::vector<BigInt> c(static_cast<size_t>(a.degree()));
    for (int i = 1; i <= a.degree(); ++i) c[static_cast<size_t>(i - 1)] = BigInt(i) * a[i];
    return ZPoly(std::move(c));
}

BigInt zp_eval(const ZPoly& a, const BigInt& x) {
    BigInt r = 0;
    for (int i = a.degree(); i >= 0; --i) r = r * x + a[i];
    return r;
}

BigRat zp_eval(const ZPoly& a, const BigRat& x) {
    BigRat r = 0;
    for (int i = a.degree(); i >= 0; --i) r = r * x + BigRat(a[i]);
    return r;
}

ZPoly zp_shift(const ZPoly& a, const BigInt& t) {
    ZPoly xt(std::vector<BigInt>{t, BigInt(1)});
    ZPoly r;
    for (int i = a.degree(); i >= 0; --i) r = r * xt + ZPoly::constant(a[i]);
    return r;
}

void zp_pseudo_divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) {
    if (b.is_zero()) throw DivisionByZeroError("zp_pseudo_divrem: zero divisor");
    int da = a.degree(), db = b.degree();
    if (da < db) {
        q = ZPoly();
        r = a;
        return;
    }
    const BigInt lb = b.leading();
    std::vector<BigInt> rem(a.coeffs());
    rem.resize(static_cast<size_t>(da) + 1, BigInt(0));
    std::vector<BigInt> quot(static_cast<size_t>(da - db + 1), BigInt(0));
    // invariant: lb^steps * a = quot*b + rem
    for (int i = da; i >= db; --i) {
        BigInt top = rem[static_cast<size_t>(i)];
        for (auto& x : quot) x *= lb;
        for (auto& x : rem) x *= lb;
        if (top != 0) {
            quot[static_cast<size_t>(i - db)] += top;
            for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= top * b[j];
        }
    }
    q = ZPoly(std::move(quot));
    r = ZPoly(std::move(rem));
}

ZPoly zp_div_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw DivisionByZeroError("zp_div_exact: zero divisor");
    if (a.is_zero()) return ZPoly();
    int da = a.degree(), db = b.degree();
    if (da < db) throw Error("zp_div_exact: not divisible (degree)");
    std::vector<BigInt> rem(a.coeffs());
    std::vector<BigInt> quot(static_cast<size_t>(da - db + 1), BigInt(0));
    const BigInt& lb = b.leading();
    for (int i = da; i >= db; --i) {
        BigInt& top = rem[static_cast<size_t>(i)];
        if (top == 0) continue;
        BigInt f, res;
        mpz_tdiv_qr(f.get_mpz_t(), res.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        if (res != 0) throw Error("zp_div_exact: not divisible (coefficient)");
        quot[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b[j];
    }
    for (const auto& x : rem)
        if (x != 0) throw Error("zp_div_exact: nonzero remainder");
    return ZPoly(std::move(quot));
}

bool zp_divides(const ZPoly& b, const ZPoly& a) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    try {
        (void)zp_div_exact(a, b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

namespace {

std::uint64_t nth_gcd_prime(int k) {
    // fixed sequence of ~62-bit primes for modular images
    static std::vector<std::uint64_t> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        std::uint64_t start = cache.empty() ? (1ull << 62) + 1 : cache.back() + 2;
        cache.push_back(next_prime_u64(start));
    }
    return cache[static_cast<size_t>(k)];
}

}  // namespace

ZPoly zp_gcd(const ZPoly& a_in, const ZPoly& b_in) {
    if (a_in.is_zero() && b_in.is_zero()) throw Error("zp_gcd: both inputs zero");
    if (a_in.is_zero()) return zp_primitive(b_in);
    if (b_in.is_zero()) return zp_primitive(a_in);
    ZPoly a = zp_primitive(a_in), b = zp_primitive(b_in);
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.degree() == 0) return ZPoly::constant(BigInt(1));

    BigInt lcg;
    mpz_gcd(lcg.get_mpz_t(), a.leading().get_mpz_t(), b.leading().get_mpz_t());

    int best_deg = b.degree() + 1;
    std::vector<BigInt> acc;  // balanced CRT image of lcg * (monic gcd)
    BigInt modulus = 1;
    ZPoly candidate;
    bool have_candidate = false;

    for (int k = 0;; ++k) {
        if (k > 20000) throw ResourceError("zp_gcd: modular image budget exhausted");
        std::uint64_t p = nth_gcd_prime(k);
        BigInt bp(static_cast<unsigned long>(p));
        if (a.leading() % bp == 0 || b.leading() % bp == 0) continue;
        ModPoly g = mp_gcd(ModPoly::from_zpoly(a, p), ModPoly::from_zpoly(b, p));
        if (g.degree() == 0) return ZPoly::constant(BigInt(1));
        if (g.degree() > best_deg) continue;  // unlucky prime
        if (g.degree() < best_deg) {
            best_deg = g.degree();
            acc.assign(static_cast<size_t>(best_deg) + 1, BigInt(0));
            modulus = 1;
            have_candidate = false;
        }
        std::uint64_t s = mpz_fdiv_ui(lcg.get_mpz_t(), static_cast<unsigned long>(p));
        ModPoly gs = mp_scale(g, s);
        BigInt new_modulus = modulus * bp;
        for (int i = 0; i <= best_deg; ++i) {
            BigInt& x = acc[static_cast<size_t>(i)];
            if (modulus == 1) {
                x = static_cast<unsigned long>(gs[i]);
            } else {
                BigInt xm = x % bp;
                if (xm < 0) xm += bp;
                BigInt diff = (BigInt(static_cast<unsigned long>(gs[i])) - xm) % bp;
                if (diff < 0) diff += bp;
                BigInt minv, mm = modulus % bp;
                mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), bp.get_mpz_t());
                x += modulus * ((diff * minv) % bp);
            }
            // balanced representative
            BigInt xr = x % new_modulus;
            if (xr < 0) xr += new_modulus;
            if (2 * xr > new_modulus) xr -= new_modulus;
            x = xr;
        }
        modulus = new_modulus;

        ZPoly trial = zp_primitive(ZPoly(std::vector<BigInt>(acc)));
        if (have_candidate && trial == candidate) {
            if (zp_divides(trial, a) && zp_divides(trial, b)) return trial;
        }
        candidate = trial;
        have_candidate = true;
    }
}

BigInt zp_resultant(const ZPoly& a_in, const ZPoly& b_in) {
    // subresultant PRS (Cohen, Alg. 3.3.7)
    if (a_in.is_zero() || b_in.is_zero()) return BigInt(0);
    ZPoly A = a_in, B = b_in;
    BigInt sign = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -1;
        std::swap(A, B);
    }
    if (B.degree() == 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), B.leading().get_mpz_t(), static_cast<unsigned long>(A.degree()));
        return sign * r;
    }
    BigInt ca = zp_content(A), cb = zp_content(B);
    A = zp_div_exact(A, ZPoly::constant(ca));
    B = zp_div_exact(B, ZPoly::constant(cb));
    BigInt t;
    {
        BigInt p1, p2;
        mpz_pow_ui(p1.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(B.degree()));
        mpz_pow_ui(p2.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(A.degree()));
        t = p1 * p2;
    }
    BigInt g = 1, h = 1;
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
        ZPoly q, r;
        zp_pseudo_divrem(A, B, q, r);
        if (r.is_zero()) return BigInt(0);
        A = B;
        BigInt gh = g;
        for (int i = 0; i < delta; ++i) gh *= h;
        B = zp_div_exact(r, ZPoly::constant(gh));
        g = A.leading();
        if (delta > 0) {
            BigInt gpow;
            mpz_pow_ui(gpow.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
            if (delta == 1) {
                h = gpow;
            } else {
                BigInt hpow;
                mpz_pow_ui(hpow.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
                h = gpow / hpow;
            }
        }
        if (B.degree() == 0) break;
    }
    BigInt lb = B.leading();
    int dA = A.degree();
    BigInt num;
    mpz_pow_ui(num.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(dA));
    if (dA > 1) {
        BigInt hp;
        mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(dA - 1));
        num /= hp;
    }
    return sign * t * num;
}

ZPoly zp_squarefree_part(const ZPoly& a) {
    if (a.is_zero()) throw Error("zp_squarefree_part: zero input");
    ZPoly p = zp_primitive(a);
    if (p.degree() == 0) return ZPoly::constant(BigInt(1));
    ZPoly d = zp_derivative(p);
    ZPoly g = zp_gcd(p, d);
    return zp_primitive(zp_div_exact(p, g));
}

bool zp_is_squarefree(const ZPoly& a) {
    if (a.is_zero()) return false;
    if (a.degree() == 0) return true;
    ZPoly g = zp_gcd(a, zp_derivative(a));
    return g.degree() == 0;
}

std::vector<ZPoly> zp_yun(const ZPoly& a) {
    if (a.is_zero()) throw Error("zp_yun: zero input");
    ZPoly p = zp_primitive(a);
    std::vector<ZPoly> parts;
    if (p.degree() == 0) return parts;
    ZPoly dp = zp_derivative(p);
    ZPoly g = zp_gcd(p, dp);
    ZPoly w = zp_div_exact(p, g);
    ZPoly y = zp_div_exact(dp, g);
    while (true) {
        ZPoly z = y - zp_derivative(w);
        if (z.is_zero()) {
            parts.push_back(w);
            break;
        }
        ZPoly part = zp_gcd(w, z);
        parts.push_back(part);
        w = zp_div_exact(w, part);
        y = zp_div_exact(z, part);
    }
    return parts;
}

namespace {

const ZPoly& cyclotomic_cached(int n) {
    static std::map<int, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // fill all divisors of n smallest-first; every divisor of d also divides n
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        ZPoly num = ZPoly::xn_minus_1(d);
        for (int e = 1; e < d; ++e)
            if (d % e == 0) num = zp_div_exact(num, cache.at(e));
        cache.emplace(d, std::move(num));
    }
    return cache.at(n);
}

}  // namespace

ZPoly cyclotomic(int n) {
    if (n < 1) throw Error("cyclotomic: n must be positive");
    return cyclotomic_cached(n);
}

std::optional<BigInt> eisenstein_prime(const ZPoly& a) {
    if (a.degree() < 1) return std::nullopt;
    BigInt g = 0;
    for (int i = 0; i < a.degree(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[i].get_mpz_t());
    if (g <= 1) return std::nullopt;
    for (const auto& [p, e] : factor_integer(g)) {
        if (a.leading() % p == 0) continue;
        if (a[0] % (p * p) != 0) return p;
    }
    return std::nullopt;
}

}  // namespace perlab
