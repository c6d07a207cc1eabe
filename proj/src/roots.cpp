#include "perlab/roots.hpp"

#include <algorithm>
#include <cmath>

namespace perlab {

namespace {

struct Term {
    int exp;
    BigInt coeff;
};

// descending exponents, zero coefficients dropped
std::vector<Term> sparse_terms(const ZPoly& p) {
    std::vector<Term> t;
    for (int i = p.degree(); i >= 0; --i)
        if (p[i] != 0) t.push_back({i, p[i]});
    return t;
}

// Bini-style initial guesses: radii from the upper convex hull of
// (i, log2|a_i|), angles spread around each circle.
std::vector<std::complex<double>> initial_guesses(const ZPoly& p) {
    int n = p.degree();
    std::vector<std::pair<int, double>> pts;
    for (int i = 0; i <= n; ++i)
        if (p[i] != 0) pts.emplace_back(i, log2_abs(p[i]));
    // upper hull left to right
    std::vector<std::pair<int, double>> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            double cross = (static_cast<double>(b.first - a.first)) * (q.second - a.second) -
                           (static_cast<double>(q.first - a.first)) * (b.second - a.second);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(q);
    }
    std::vector<std::complex<double>> z;
    z.reserve(static_cast<size_t>(n));
    int placed = 0;
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        int k1 = hull[e].first, k2 = hull[e + 1].first;
        double r = std::exp2((hull[e].second - hull[e + 1].second) / static_cast<double>(k2 - k1));
        if (!std::isfinite(r) || r <= 0) r = 1.0;
        for (int j = 0; j < k2 - k1; ++j) {
            double theta = 2.0 * M_PI * (static_cast<double>(placed) / n) + 0.401 + 0.17 * static_cast<double>(e);
            z.push_back(std::polar(r, theta));
            ++placed;
        }
    }
    while (placed < n) {
        z.push_back(std::polar(1.0, 2.0 * M_PI * placed / n + 0.401));
        ++placed;
    }
    return z;
}

// ---- double-precision attempt ----

struct EvalD {
    std::complex<double> value;
    double abs_bound;  // sum |a_k| |z|^k
};

EvalD eval_sparse_d(const std::vector<Term>& t, const std::vector<double>& dcoeff,
                    const std::vector<double>& dabs, std::complex<double> z) {
    // Horner over exponent gaps with binary powering
    std::complex<double> acc(0, 0);
    double babs = 0;
    double az = std::abs(z);
    int prev = t.front().exp;
    acc = std::complex<double>(dcoeff[0], 0);
    babs = dabs[0];
    auto cpow = [](std::complex<double> b, int e) {
        std::complex<double> r(1, 0);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    };
    auto rpow = [](double b, int e) {
        double r = 1;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    };
    for (size_t i = 1; i < t.size(); ++i) {
        int gap = prev - t[i].exp;
        acc = acc * cpow(z, gap) + std::complex<double>(dcoeff[i], 0);
        babs = babs * rpow(az, gap) + dabs[i];
        prev = t[i].exp;
    }
    acc *= cpow(z, prev);
    babs *= rpow(az, prev);
    return {acc, babs};
}

struct AttemptResult {
    bool ok = false;
    std::vector<CertifiedRoot> roots;
};

AttemptResult attempt_double(const ZPoly& p, double target) {
    int n = p.degree();
    auto terms = sparse_terms(p);
    ZPoly dp = zp_derivative(p);
    auto dterms = sparse_terms(dp);
    // reject when coefficients or range exceed the double budget
    double h = log2_abs(p.height());
    if (h > 500) return {};
    std::vector<double> c, ca, d, da;
    for (const auto& t : terms) {
        c.push_back(t.coeff.get_d());
        ca.push_back(std::fabs(t.coeff.get_d()));
    }
    for (const auto& t : dterms) {
        d.push_back(t.coeff.get_d());
        da.push_back(std::fabs(t.coeff.get_d()));
    }
    auto z = initial_guesses(p);
    std::vector<bool> frozen(z.size(), false);
    int max_sweeps = 60 + n / 2;
    int last_progress = 0;
    size_t frozen_count = 0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        size_t before = frozen_count;
        bool all_frozen = true;
        for (size_t i = 0; i < z.size(); ++i) {
            if (frozen[i]) continue;
            EvalD pv = eval_sparse_d(terms, c, ca, z[i]);
            EvalD dv = eval_sparse_d(dterms, d, da, z[i]);
            if (!std::isfinite(pv.value.real()) || !std::isfinite(dv.value.real())) return {};
            if (std::abs(dv.value) == 0.0) {
                z[i] += std::complex<double>(1e-7, 2e-7);
                all_frozen = false;
                continue;
            }
            std::complex<double> N = pv.value / dv.value;
            std::complex<double> S(0, 0);
            for (size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                std::complex<double> diff = z[i] - z[j];
                if (std::abs(diff) == 0.0) diff = std::complex<double>(1e-12, 1e-12);
                S += 1.0 / diff;
            }
            std::complex<double> denom = 1.0 - N * S;
            std::complex<double> corr = std::abs(denom) == 0.0 ? N : N / denom;
            z[i] -= corr;
            if (std::abs(corr) <= 1e-15 * (std::abs(z[i]) + 1e-300) + 1e-300) {
                frozen[i] = true;
                ++frozen_count;
            } else {
                all_frozen = false;
            }
        }
        if (all_frozen) break;
        if (frozen_count > before) last_progress = sweep;
        if (sweep - last_progress > 40) break;  // stalled; try certifying anyway
    }
    // certification
    AttemptResult res;
    res.roots.reserve(z.size());
    double gamma = std::ldexp(2.0 * n + 8.0, -52);
    for (size_t i = 0; i < z.size(); ++i) {
        EvalD pv = eval_sparse_d(terms, c, ca, z[i]);
        EvalD dv = eval_sparse_d(dterms, d, da, z[i]);
        double E = gamma * pv.abs_bound;
        double Ed = gamma * dv.abs_bound;
        double den = std::abs(dv.value) - Ed;
        if (den <= 0) return {};
        double err = n * (std::abs(pv.value) + E) / den + std::ldexp(std::abs(z[i]) + 1, -51);
        if (!(err <= target)) return {};
        res.roots.push_back({z[i], err});
    }
    // distinct simple roots: separation must beat the certified radii
    for (size_t i = 0; i < res.roots.size(); ++i)
        for (size_t j = i + 1; j < res.roots.size(); ++j)
            if (std::abs(res.roots[i].z - res.roots[j].z) <= res.roots[i].err + res.roots[j].err) return {};
    res.ok = true;
    return res;
}

// ---- big-float attempt (gmp mpf) ----

struct CF {
    mpf_class re, im;
};

CF cf_make(double a, double b, int W) { return {mpf_class(a, W), mpf_class(b, W)}; }

CF cf_mul(const CF& a, const CF& b) {
    CF r;
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

CF cf_sub(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
CF cf_add(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }

mpf_class cf_norm(const CF& a) { return a.re * a.re + a.im * a.im; }

CF cf_div(const CF& a, const CF& b) {
    mpf_class nb = cf_norm(b);
    CF r;
    r.re = (a.re * b.re + a.im * b.im) / nb;
    r.im = (a.im * b.re - a.re * b.im) / nb;
    return r;
}

mpf_class cf_abs(const CF& a) {
    mpf_class n = cf_norm(a);
    mpf_class r;
    mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
    return r;
}

struct EvalF {
    CF value;
    mpf_class abs_bound;
};

EvalF eval_sparse_f(const std::vector<Term>& t, const std::vector<CF>& fc, const std::vector<mpf_class>& fa,
                    const CF& z, const mpf_class& az) {
    auto cpow = [](CF b, int e) {
        CF r = {mpf_class(1, b.re.get_prec()), mpf_class(0, b.re.get_prec())};
        while (e) {
            if (e & 1) r = cf_mul(r, b);
            b = cf_mul(b, b);
            e >>= 1;
        }
        return r;
    };
    auto rpow = [](mpf_class b, int e) {
        mpf_class r(1, b.get_prec());
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    };
    EvalF out;
    out.value = fc[0];
    out.abs_bound = fa[0];
    int prev = t.front().exp;
    for (size_t i = 1; i < t.size(); ++i) {
        int gap = prev - t[i].exp;
        out.value = cf_add(cf_mul(out.value, cpow(z, gap)), fc[i]);
        out.abs_bound = out.abs_bound * rpow(az, gap) + fa[i];
        prev = t[i].exp;
    }
    out.value = cf_mul(out.value, cpow(z, prev));
    out.abs_bound = out.abs_bound * rpow(az, prev);
    return out;
}

AttemptResult attempt_mpf(const ZPoly& p, double target, int W, std::vector<std::complex<double>>& warm) {
    int n = p.degree();
    auto terms = sparse_terms(p);
    ZPoly dp = zp_derivative(p);
    auto dterms = sparse_terms(dp);
    std::vector<CF> fc, fd;
    std::vector<mpf_class> fa, fda;
    for (const auto& t : terms) {
        CF c = {mpf_class(t.coeff, W), mpf_class(0, W)};
        fc.push_back(c);
        mpf_class a(t.coeff, W);
        fa.push_back(abs(a));
    }
    for (const auto& t : dterms) {
        CF c = {mpf_class(t.coeff, W), mpf_class(0, W)};
        fd.push_back(c);
        mpf_class a(t.coeff, W);
        fda.push_back(abs(a));
    }
    std::vector<std::complex<double>> init = warm.empty() ? initial_guesses(p) : warm;
    std::vector<CF> z;
    z.reserve(init.size());
    for (const auto& w : init) z.push_back(cf_make(w.real(), w.imag(), W));

    std::vector<bool> frozen(z.size(), false);
    mpf_class freeze_tol(0, W);
    mpf_div_2exp(freeze_tol.get_mpf_t(), mpf_class(1, W).get_mpf_t(), static_cast<unsigned long>(W * 6 / 10));

    int max_sweeps = 80 + n / 2;
    int last_progress = 0;
    size_t frozen_count = 0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        size_t before = frozen_count;
        bool all_frozen = true;
        for (size_t i = 0; i < z.size(); ++i) {
            if (frozen[i]) continue;
            mpf_class az = cf_abs(z[i]);
            EvalF pv = eval_sparse_f(terms, fc, fa, z[i], az);
            EvalF dv = eval_sparse_f(dterms, fd, fda, z[i], az);
            if (cf_norm(dv.value) == 0) {
                z[i].re += freeze_tol;
                z[i].im += freeze_tol;
                all_frozen = false;
                continue;
            }
            CF N = cf_div(pv.value, dv.value);
            CF S = cf_make(0, 0, W);
            for (size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                CF diff = cf_sub(z[i], z[j]);
                if (cf_norm(diff) == 0) {
                    diff.re += freeze_tol;
                    diff.im += freeze_tol;
                }
                S = cf_add(S, cf_div(cf_make(1, 0, W), diff));
            }
            CF denom = cf_sub(cf_make(1, 0, W), cf_mul(N, S));
            CF corr = cf_norm(denom) == 0 ? N : cf_div(N, denom);
            z[i] = cf_sub(z[i], corr);
            mpf_class ca = cf_abs(corr);
            if (ca <= freeze_tol * (cf_abs(z[i]) + 1)) {
                frozen[i] = true;
                ++frozen_count;
            } else {
                all_frozen = false;
            }
        }
        if (all_frozen) break;
        if (frozen_count > before) last_progress = sweep;
        if (sweep - last_progress > 40) break;
    }
    // certification with rounding-error inflation
    AttemptResult res;
    mpf_class gamma(0, W);
    mpf_div_2exp(gamma.get_mpf_t(), mpf_class(2.0 * n + 16.0, W).get_mpf_t(), static_cast<unsigned long>(W - 4));
    warm.clear();
    for (size_t i = 0; i < z.size(); ++i) {
        mpf_class az = cf_abs(z[i]);
        EvalF pv = eval_sparse_f(terms, fc, fa, z[i], az);
        EvalF dv = eval_sparse_f(dterms, fd, fda, z[i], az);
        mpf_class E = gamma * pv.abs_bound;
        mpf_class Ed = gamma * dv.abs_bound;
        mpf_class den = cf_abs(dv.value) - Ed;
        std::complex<double> zd(z[i].re.get_d(), z[i].im.get_d());
        warm.push_back(zd);
        if (den <= 0) return {};
        mpf_class err = mpf_class(n) * (cf_abs(pv.value) + E) / den;
        double errd = err.get_d() + std::ldexp(std::abs(zd) + 1, -51);
        if (!(errd <= target)) return {};
        res.roots.push_back({zd, errd});
    }
    for (size_t i = 0; i < res.roots.size(); ++i)
        for (size_t j = i + 1; j < res.roots.size(); ++j)
            if (std::abs(res.roots[i].z - res.roots[j].z) <= res.roots[i].err + res.roots[j].err) return {};
    res.ok = true;
    return res;
}

}  // namespace

std::vector<CertifiedRoot> complex_roots(const ZPoly& p_in, int precision_bits) {
    if (precision_bits < 8) throw ValidationError("complex_roots: precision_bits too small");
    if (precision_bits > 104)
        throw ValidationError("complex_roots: certificates beyond double output are unsupported");
    if (p_in.is_zero()) throw ValidationError("complex_roots: zero polynomial");
    ZPoly p = zp_primitive(p_in);
    if (!zp_is_squarefree(p)) throw ValidationError("complex_roots: input not squarefree");

    std::vector<CertifiedRoot> out;
    if (p.degree() == 0) return out;
    // squarefree implies at most one root at the origin; peel it off exactly
    if (p[0] == 0) {
        out.push_back({{0.0, 0.0}, 0.0});
        std::vector<BigInt> c(p.coeffs().begin() + 1, p.coeffs().end());
        p = ZPoly(std::move(c));
    }
    if (p.degree() >= 1) {
        double target = std::exp2(-static_cast<double>(precision_bits) / 2.0);
        AttemptResult r = attempt_double(p, target);
        if (!r.ok) {
            std::vector<std::complex<double>> warm;
            for (int W = std::max(128, 2 * precision_bits + 32); W <= (1 << 15); W *= 2) {
                r = attempt_mpf(p, target, W, warm);
                if (r.ok) break;
            }
        }
        if (!r.ok) throw ResourceError("complex_roots: precision budget exhausted");
        for (const auto& cr : r.roots) out.push_back(cr);
    }
    std::sort(out.begin(), out.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return out;
}

std::vector<CertifiedRoot> complex_roots(const Poly& p, int precision_bits) {
    if (p.form() != PolyForm::Univariate)
        throw FormMismatchError("complex_roots: univariate input required");
    auto [unit, z] = p.to_zpoly();
    return complex_roots(z, precision_bits);
}

}  // namespace perlab
