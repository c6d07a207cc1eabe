#include "perlab/heights.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace perlab {

double weil_height(const ProjPoint& x) {
    if (!x.is_rational()) throw ValidationError("weil_height: rational coordinates required");
    BigInt ax = abs(x.px()), ay = abs(x.py());
    return log_abs(ax > ay ? ax : ay);
}

namespace {

struct Form2 {
    std::vector<BigInt> c;  // slots
};

std::vector<BigInt> form_slots(const Poly& p) {
    std::vector<BigInt> f(static_cast<size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) f[static_cast<size_t>(i)] = p.coeff(i).get_num();
    return f;
}

BigInt eval_form(const std::vector<BigInt>& h, const BigInt& px, const BigInt& py) {
    BigInt r = 0, xp = 1;
    size_t n = h.size();
    std::vector<BigInt> yp(n);
    BigInt cur = 1;
    for (size_t i = 0; i < n; ++i) {
        yp[n - 1 - i] = cur;
        cur *= py;
    }
    for (size_t i = 0; i < n; ++i) {
        if (h[i] != 0) r += h[i] * xp * yp[i];
        xp *= px;
    }
    return r;
}

// Exact resultant of the map's pair, via the padded Sylvester convention.
BigInt map_resultant(const RationalMap& f) {
    BigRat r = resultant(f.F(), f.G());
    if (r.get_den() != 1) throw Error("map_resultant: non-integer resultant of integer forms");
    return r.get_num();
}

// Cofactor identities A F + B G = R X^(2d-1) and A' F + B' G = R Y^(2d-1):
// returns max of the two 1-norm sums, for the archimedean lower bound
// max(|F|,|G|)(s,t) >= |R| / B_cof on the unit box.
double bezout_cofactor_norm(const RationalMap& f, const BigInt& R) {
    int d = f.degree();
    size_t m = 2 * static_cast<size_t>(d);  // unknowns: d slots of A, d slots of B
    std::vector<BigInt> Fc = form_slots(f.F()), Gc = form_slots(f.G());
    // rows: slots of the degree-(2d-1) product; columns: A_i then B_i
    std::vector<std::vector<BigRat>> M(m, std::vector<BigRat>(m + 2, BigRat(0)));
    for (size_t i = 0; i < static_cast<size_t>(d); ++i) {
        for (size_t j = 0; j < Fc.size(); ++j) M[i + j][i] += BigRat(Fc[j]);
        for (size_t j = 0; j < Gc.size(); ++j) M[i + j][static_cast<size_t>(d) + i] += BigRat(Gc[j]);
    }
    // rhs columns: R * X^(2d-1) -> top slot; R * Y^(2d-1) -> slot 0
    M[m - 1][m] = BigRat(R);
    M[0][m + 1] = BigRat(R);
    // exact Gaussian elimination
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        while (piv < m && M[piv][col] == 0) ++piv;
        if (piv == m) throw Error("bezout_cofactor_norm: singular Sylvester system");
        std::swap(M[piv], M[col]);
        BigRat inv = 1 / M[col][col];
        for (auto& x : M[col]) x *= inv;
        for (size_t row = 0; row < m; ++row) {
            if (row == col || M[row][col] == 0) continue;
            BigRat fct = M[row][col];
            for (size_t k = col; k < m + 2; ++k) M[row][k] -= fct * M[col][k];
        }
    }
    double n1 = 0, n2 = 0;
    for (size_t i = 0; i < m; ++i) {
        n1 += std::fabs(M[i][m].get_d());
        n2 += std::fabs(M[i][m + 1].get_d());
    }
    return std::max(std::max(n1, n2), 1.0);
}

struct PadicTracker {
    BigInt prime;
    int e;          // valuation of R at this prime
    int capacity;   // current modulus exponent
    BigInt modulus; // prime^capacity
    BigInt p, q;    // residues of the reduced coordinate pair
};

int residue_valuation(const BigInt& r, const BigInt& prime, int cap) {
    if (r == 0) return cap;
    BigInt cur = r;
    int v = 0;
    while (v < cap && cur % prime == 0) {
        cur /= prime;
        ++v;
    }
    return v;
}

}  // namespace

CanonicalHeightEstimate canonical_height(const RationalMap& f, const ProjPoint& x, double tol) {
    if (!x.is_rational()) throw ValidationError("canonical_height: rational point required");
    if (!(tol > 0)) throw ValidationError("canonical_height: tol must be positive");
    const int d = f.degree();
    std::vector<BigInt> Fc = form_slots(f.F()), Gc = form_slots(f.G());

    BigInt R = map_resultant(f);
    if (R == 0) throw Error("canonical_height: zero resultant");
    BigInt H = 0;
    for (const auto& c : Fc) {
        BigInt a = abs(c);
        if (a > H) H = a;
    }
    for (const auto& c : Gc) {
        BigInt a = abs(c);
        if (a > H) H = a;
    }
    double C_arch = std::log(static_cast<double>(d + 1)) + log_abs(H);
    double B_cof = bezout_cofactor_norm(f, R);
    double C_low = std::log(B_cof);
    double C = std::max(std::max(C_arch, C_low), 0.1);

    // iterations for tail <= tol/2
    int N = 1;
    while (C / ((d - 1) * std::pow(static_cast<double>(d), N)) > tol / 2) {
        ++N;
        if (N > 400) throw ResourceError("canonical_height: tol unreachable within iteration budget");
    }

    // working precision for the normalized archimedean pair (per-step error
    // growth factor K <= d(d+1) H B_cof since |R| >= 1)
    double log2K = std::log2(static_cast<double>(d) * (d + 1)) + log2_abs(H) + std::log2(B_cof) + 2.0;
    int W = std::max(256, 64 + N * static_cast<int>(std::ceil(log2K + 2)));
    if (W > (1 << 14)) throw ResourceError("canonical_height: precision budget exceeded");

    // p-adic trackers for primes of R
    std::vector<PadicTracker> trackers;
    for (const auto& [prime, e] : factor_integer(R)) {
        PadicTracker t;
        t.prime = prime;
        t.e = e;
        t.capacity = e * (N + 1) + 4;
        BigInt mod = 1;
        for (int i = 0; i < t.capacity; ++i) mod *= prime;
        t.modulus = mod;
        t.p = x.px() % mod;
        t.q = x.py() % mod;
        if (t.p < 0) t.p += mod;
        if (t.q < 0) t.q += mod;
        trackers.push_back(std::move(t));
    }

    // normalized archimedean pair
    mpf_class s(x.px(), W), t(x.py(), W);
    {
        mpf_class as(abs(s)), at(abs(t));
        mpf_class mx = as > at ? as : at;
        s /= mx;
        t /= mx;
    }
    std::vector<mpf_class> Fm, Gm;
    for (const auto& c : Fc) Fm.emplace_back(c, W);
    for (const auto& c : Gc) Gm.emplace_back(c, W);

    auto eval_mpf = [&](const std::vector<mpf_class>& h, const mpf_class& a, const mpf_class& b) {
        mpf_class r(0, W), ap(1, W);
        std::vector<mpf_class> bp(h.size(), mpf_class(0, W));
        mpf_class cur(1, W);
        for (size_t i = 0; i < h.size(); ++i) {
            bp[h.size() - 1 - i] = cur;
            cur *= b;
        }
        for (size_t i = 0; i < h.size(); ++i) {
            r += h[i] * ap * bp[i];
            ap *= a;
        }
        return r;
    };

    double value = weil_height(x);
    double dpow = 1.0;
    for (int k = 0; k < N; ++k) {
        // archimedean growth increment
        mpf_class Fv = eval_mpf(Fm, s, t);
        mpf_class Gv = eval_mpf(Gm, s, t);
        mpf_class aF(abs(Fv)), aG(abs(Gv));
        mpf_class mx = aF > aG ? aF : aG;
        double a_k = std::log(mx.get_d());
        s = Fv / mx;
        t = Gv / mx;

        // gcd cancellation at the primes of R
        double log_g = 0.0;
        if (!trackers.empty()) {
            std::vector<BigInt> fvals(trackers.size()), gvals(trackers.size());
            std::vector<int> vals(trackers.size());
            BigInt g_k = 1;
            for (size_t i = 0; i < trackers.size(); ++i) {
                PadicTracker& tr = trackers[i];
                fvals[i] = eval_form(Fc, tr.p, tr.q) % tr.modulus;
                gvals[i] = eval_form(Gc, tr.p, tr.q) % tr.modulus;
                if (fvals[i] < 0) fvals[i] += tr.modulus;
                if (gvals[i] < 0) gvals[i] += tr.modulus;
                int vf = residue_valuation(fvals[i], tr.prime, tr.e + 1);
                int vg = residue_valuation(gvals[i], tr.prime, tr.e + 1);
                int v = std::min(vf, vg);
                if (v > tr.e) throw Error("canonical_height: gcd valuation exceeded resultant (internal)");
                vals[i] = v;
                for (int j = 0; j < v; ++j) g_k *= tr.prime;
            }
            for (size_t i = 0; i < trackers.size(); ++i) {
                PadicTracker& tr = trackers[i];
                int v = vals[i];
                // shrink capacity by v and divide out the full gcd
                tr.capacity -= v;
                BigInt newmod = tr.modulus;
                for (int j = 0; j < v; ++j) newmod /= tr.prime;
                tr.modulus = newmod;
                BigInt pv = 1;
                for (int j = 0; j < v; ++j) pv *= tr.prime;
                BigInt rest = g_k / pv;
                BigInt inv;
                if (mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), newmod.get_mpz_t()) == 0)
                    throw Error("canonical_height: residue inversion failed (internal)");
                tr.p = ((fvals[i] / pv) % newmod) * inv % newmod;
                tr.q = ((gvals[i] / pv) % newmod) * inv % newmod;
            }
            log_g = log_abs(g_k);
        }
        dpow *= d;  // d^(k+1)
        value += (a_k - log_g) / dpow;
    }

    CanonicalHeightEstimate est;
    double tail = C / ((d - 1) * std::pow(static_cast<double>(d), N));
    double float_budget = std::ldexp(1.0, -46) * (N + 1);
    est.value = value;
    est.error = tail + float_budget;
    est.iterations = N;
    est.telescope_constant = C + float_budget * (d - 1) * std::pow(static_cast<double>(d), N);
    return est;
}

bool is_preperiodic(const RationalMap& f, const ProjPoint& x) {
    if (!x.is_rational()) throw ValidationError("is_preperiodic: rational point required");
    const int d = f.degree();
    std::vector<BigInt> Fc = form_slots(f.F()), Gc = form_slots(f.G());
    BigInt R = map_resultant(f);
    BigInt H = 0;
    for (const auto& c : Fc) {
        BigInt a = abs(c);
        if (a > H) H = a;
    }
    for (const auto& c : Gc) {
        BigInt a = abs(c);
        if (a > H) H = a;
    }
    double C_arch = std::log(static_cast<double>(d + 1)) + log_abs(H);
    double C_low = std::log(bezout_cofactor_norm(f, R));
    double C = std::max(std::max(C_arch, C_low), 0.1);
    double cutoff = 2.0 * C / (d - 1) + weil_height(x) + 1e-9;

    std::map<std::pair<std::string, std::string>, int> seen;
    BigInt p = x.px(), q = x.py();
    for (long step = 0; step < 100000; ++step) {
        auto key = std::make_pair(p.get_str(), q.get_str());
        if (seen.count(key)) return true;  // cycle entered
        seen[key] = 1;
        BigInt np = eval_form(Fc, p, q);
        BigInt nq = eval_form(Gc, p, q);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), np.get_mpz_t(), nq.get_mpz_t());
        np /= g;
        nq /= g;
        if (nq < 0 || (nq == 0 && np < 0)) {
            np = -np;
            nq = -nq;
        }
        p = std::move(np);
        q = std::move(nq);
        BigInt ax = abs(p), ay = abs(q);
        double h = log_abs(ax > ay ? ax : ay);
        if (h > cutoff) return false;  // height certifiably grows from here
    }
    throw Error("is_preperiodic: orbit neither cycled nor escaped (impossible under the cutoff)");
}

}  // namespace perlab
