#include "perlab/periodic.hpp"

#include "perlab/nfpoly.hpp"

#include <algorithm>
#include <cmath>

namespace perlab {

namespace {

BigInt pow_int(long b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// squarefree finite part, infinity flag and factor degrees of a form
void analyze_form(const Poly& form, bool with_factorization, Poly& set_poly, bool& inf_flag,
                  std::vector<int>& degrees, BigInt& count) {
    auto [finite, yorder] = form.dehomogenize();
    inf_flag = yorder >= 1;
    auto [unit, zfin] = finite.to_zpoly();
    ZPoly sf = zp_squarefree_part(zfin);
    set_poly = Poly::from_zpoly(sf);
    count = BigInt(sf.degree()) + (inf_flag ? 1 : 0);
    degrees.clear();
    if (with_factorization) {
        degrees = zp_factor_degrees(sf);
        if (inf_flag) degrees.push_back(1);  // infinity is a rational orbit
        std::sort(degrees.begin(), degrees.end());
    }
}

double fit_lambda_hat(const std::vector<std::pair<int, long>>& pts) {
    // least squares slope of log(max_orbit) against n
    if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, v] : pts) {
        double x = n, y = std::log(static_cast<double>(v));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    double denom = m * sxx - sx * sx;
    if (denom == 0) return std::numeric_limits<double>::quiet_NaN();
    double slope = (m * sxy - sx * sy) / denom;
    return std::exp(slope);
}

}  // namespace

PeriodicSpectrum periodic_polynomial(const RationalMap& f, int n, bool with_factorization, long degree_cap) {
    if (n < 1) throw ValidationError("periodic_polynomial: n must be >= 1");
    RationalMap fn = iterate_map(f, n, degree_cap);
    // Phi_n = Y * F_n - X * G_n
    Poly Y = Poly::homogeneous({BigRat(1), BigRat(0)});
    Poly X = Poly::homogeneous({BigRat(0), BigRat(1)});
    Poly phi = poly_sub(poly_mul(Y, fn.F()), poly_mul(X, fn.G()));
    if (phi.is_zero()) throw Error("periodic_polynomial: Phi_n vanished (map is the identity?)");

    PeriodicSpectrum out;
    out.n = n;
    out.raw_degree = BigInt(phi.degree());
    analyze_form(phi, with_factorization, out.set_polynomial, out.includes_infinity, out.orbit_degrees,
                 out.count);
    // exact instance of the degree-growth law: deg Phi_n = d^n + 1
    if (out.raw_degree != pow_int(f.degree(), n) + 1)
        throw Error("periodic_polynomial: degree law violated (internal)");
    return out;
}

PreimageSpectrum preimage_polynomial(const RationalMap& f, int n, const ProjPoint& a,
                                     bool with_factorization, long degree_cap) {
    if (n < 1) throw ValidationError("preimage_polynomial: n must be >= 1");
    if (!a.is_rational()) throw ValidationError("preimage_polynomial: exact rational target required");
    RationalMap fn = iterate_map(f, n, degree_cap);
    // P = a_y * F_n - a_x * G_n
    Poly P = poly_sub(poly_mul(Poly::homogeneous({BigRat(a.py())}), fn.F()),
                      poly_mul(Poly::homogeneous({BigRat(a.px())}), fn.G()));
    if (P.is_zero()) throw Error("preimage_polynomial: degenerate preimage form");

    PreimageSpectrum out;
    out.n = n;
    out.target = a;
    analyze_form(P, with_factorization, out.set_polynomial, out.includes_infinity, out.orbit_degrees,
                 out.count);
    return out;
}

std::vector<int> galois_spectrum(const Poly& p) {
    if (p.form() != PolyForm::Univariate) throw FormMismatchError("galois_spectrum: univariate input required");
    auto [unit, z] = p.to_zpoly();
    return zp_factor_degrees(z);  // throws on non-squarefree input
}

std::optional<long> exact_splitting_degree(const Poly& set_polynomial, long budget) {
    auto [unit, z] = set_polynomial.to_zpoly();
    if (z.degree() < 1) return 1;
    return splitting_degree(z, budget);
}

namespace {

OrbitRow make_row(int n, const BigInt& raw_degree, const BigInt& count, const std::vector<int>& degrees,
                  double lambda) {
    OrbitRow row;
    row.n = n;
    row.raw_degree = raw_degree;
    row.count = count;
    long points_large = 0;
    double threshold = std::pow(lambda, n);
    for (int d : degrees) {
        row.max_orbit = std::max(row.max_orbit, static_cast<long>(d));
        if (static_cast<double>(d) >= threshold) points_large += d;
    }
    row.splitting_lower_bound = row.max_orbit;
    row.proportion_large = count == 0 ? 0.0 : static_cast<double>(points_large) / count.get_d();
    return row;
}

void finalize_report(OrbitReport& rep) {
    std::vector<std::pair<int, long>> pts;
    for (auto& row : rep.rows) {
        pts.emplace_back(row.n, std::max(row.max_orbit, 1L));
        row.lambda_hat_running = fit_lambda_hat(pts);
    }
    rep.lambda_hat = fit_lambda_hat(pts);
    rep.n0.reset();
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        bool holds = true;
        for (size_t j = i; j < rep.rows.size(); ++j) {
            double bound = 1.0 - std::pow(rep.lambda, -rep.rows[j].n);
            if (rep.rows[j].proportion_large < bound) {
                holds = false;
                break;
            }
        }
        if (holds) {
            rep.n0 = rep.rows[i].n;
            break;
        }
    }
}

}  // namespace

OrbitReport orbit_report(const RationalMap& f, int n_from, int n_to, double lambda, const ReportOptions& opts) {
    if (n_from > n_to || n_from < 1) throw ValidationError("orbit_report: empty or invalid n range");
    if (!(lambda > 1.0)) throw ValidationError("orbit_report: lambda must be > 1");
    OrbitReport rep;
    rep.lambda = lambda;
    for (int n = n_from; n <= n_to; ++n) {
        PeriodicSpectrum sp = periodic_polynomial(f, n, true, opts.degree_cap);
        OrbitRow row = make_row(n, sp.raw_degree, sp.count, sp.orbit_degrees, lambda);
        if (opts.exact_splitting && n <= 6)
            row.exact_splitting = exact_splitting_degree(sp.set_polynomial, opts.splitting_budget);
        rep.rows.push_back(std::move(row));
    }
    finalize_report(rep);
    return rep;
}

OrbitReport preimage_report(const RationalMap& f, const ProjPoint& a, int n_from, int n_to, double lambda,
                            double lambda1, const ReportOptions& opts) {
    if (n_from > n_to || n_from < 1) throw ValidationError("preimage_report: empty or invalid n range");
    if (!(lambda > 1.0)) throw ValidationError("preimage_report: lambda must be > 1");
    if (in_exceptional_set(f, a))
        throw HypothesisError("preimage_report: target lies in the exceptional set of the map");
    if (lambda1 <= 0.0) lambda1 = lambda;
    OrbitReport rep;
    rep.lambda = lambda;
    rep.lambda1 = lambda1;
    for (int n = n_from; n <= n_to; ++n) {
        PreimageSpectrum sp = preimage_polynomial(f, n, a, true, opts.degree_cap);
        OrbitRow row = make_row(n, pow_int(f.degree(), n), sp.count, sp.orbit_degrees, lambda);
        if (opts.exact_splitting && n <= 6)
            row.exact_splitting = exact_splitting_degree(sp.set_polynomial, opts.splitting_budget);
        MultiplicityRecord rec = kappa_minus(f, n, a, opts.degree_cap);
        row.kappa = rec.kappa;
        row.kappa_ok = static_cast<double>(rec.kappa) <= std::pow(lambda1, n);
        rep.rows.push_back(std::move(row));
    }
    finalize_report(rep);
    return rep;
}

}  // namespace perlab
