#include "perlab/numeric.hpp"

#include <cmath>
#include <cstdlib>

namespace perlab {

BigRat parse_rational(const std::string& s) {
    if (s.empty()) throw ValidationError("empty rational literal");
    BigRat r;
    if (r.set_str(s, 10) != 0)
        throw ValidationError("bad rational literal: '" + s + "'");
    r.canonicalize();
    if (r.get_den() < 0) throw ValidationError("negative denominator: '" + s + "'");
    return r;
}

std::string rational_string(const BigRat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

double log_abs(const BigInt& x) {
    if (x == 0) return 0.0;
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log2_abs(const BigInt& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp2);
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    // extended Euclid; m need not be prime but gcd(a, m) must be 1
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw Error("invmod: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

namespace {

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // deterministic witness set for 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

std::uint64_t next_prime_u64(std::uint64_t n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

namespace {

BigInt pollard_brent(const BigInt& n) {
    // Brent's cycle variant; n odd composite, not a prime power of interest
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xB5297A4Dul);
    while (true) {
        BigInt y = rng.get_z_range(n - 3) + 2;
        BigInt c = rng.get_z_range(n - 1) + 1;
        BigInt m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (BigInt i = 0; i < r; ++i) y = (y * y + c) % n;
            BigInt k = 0;
            while (k < r && g == 1) {
                ys = y;
                BigInt lim = r - k < m ? BigInt(r - k) : m;
                for (BigInt i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                BigInt d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(const BigInt& n, std::vector<BigInt>& out) {
    if (n == 1) return;
    if (n.fits_ulong_p() && is_prime_u64(n.get_ui())) {
        out.push_back(n);
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.push_back(n);
        return;
    }
    BigInt d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n_in) {
    BigInt n = abs(n_in);
    std::vector<std::pair<BigInt, int>> result;
    if (n <= 1) return result;
    for (std::uint64_t p = 2; p < 100000 && BigInt(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            result.emplace_back(BigInt(p), e);
        }
    }
    if (n > 1) {
        std::vector<BigInt> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            result.emplace_back(rest[i], static_cast<int>(j - i));
            i = j;
        }
    }
    return result;
}

BigInt euler_phi(const BigInt& n) {
    if (n < 1) throw Error("euler_phi: n must be positive");
    BigInt phi = 1;
    for (const auto& [p, e] : factor_integer(n)) {
        BigInt pe = 1;
        for (int i = 0; i < e - 1; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

}  // namespace perlab
