#include "perlab/equidist.hpp"

#include "perlab/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace perlab {

namespace {

// septic smoothstep: 0 at 0, 1 at 1, three vanishing derivatives at both ends
double smoothstep3(double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    double u4 = u * u * u * u;
    return u4 * (35.0 - 84.0 * u + 70.0 * u * u - 20.0 * u * u * u);
}

// derivative suprema of the profile: |S'| <= 2.1875, |S''| <= 6.7358,
// |S'''| <= 52.5; chain rule on the radial composition with r <= s <= 2r
// gives third-order partials <= (52.5 + 3*6.7358 + 3*2.1875)/r^3 < 80/r^3.
constexpr double kBumpC3Constant = 80.0;

}  // namespace

double BumpFunction::value(std::complex<double> z) const {
    double s = std::abs(z - center);
    if (s <= r) return 1.0;
    if (s >= 2.0 * r) return 0.0;
    return 1.0 - smoothstep3(s / r - 1.0);
}

double BumpFunction::value_chart2(std::complex<double> w) const {
    if (w == std::complex<double>(0.0, 0.0)) return 0.0;  // infinity: outside every compact support
    return value(1.0 / w);
}

BumpFunction bump(std::complex<double> center, double r) {
    if (!(r > 0)) throw ValidationError("bump: radius must be positive");
    BumpFunction b;
    b.center = center;
    b.r = r;
    b.c3_bound = std::max(1.0, kBumpC3Constant / (r * r * r));
    return b;
}

double bump_at(const BumpFunction& phi, const ChartPoint& p) {
    return p.second_chart ? phi.value_chart2(p.z) : phi.value(p.z);
}

EmpiricalMeasure sample_equilibrium(const RationalMap& f, int N, int burn_in, std::uint64_t seed,
                                    std::complex<double> start) {
    if (N < 1) throw ValidationError("sample_equilibrium: N must be >= 1");
    if (burn_in < 0) throw ValidationError("sample_equilibrium: negative burn-in");
    // exceptional start points stay exceptional under pullback
    if (std::abs(start.imag()) < 1e-12) {
        double re = start.real();
        if (std::fabs(re - std::round(re)) < 1e-12) {
            ProjPoint p = ProjPoint::rational(BigRat(static_cast<long>(std::llround(re))));
            if (in_exceptional_set(f, p))
                throw HypothesisError("sample_equilibrium: start point lies in the exceptional set");
        }
    }

    const int d = f.degree();
    // inverse branch: roots of F(w,1) - z G(w,1) = 0 in w, as a degree-d
    // complex polynomial (leading coefficient may vanish only on the
    // exceptional directions)
    std::vector<std::complex<double>> fc(static_cast<size_t>(d) + 1), gc(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        fc[static_cast<size_t>(i)] = f.F().coeff(i).get_d();
        gc[static_cast<size_t>(i)] = f.G().coeff(i).get_d();
    }

    std::mt19937_64 rng(seed);
    std::complex<double> z = start;
    EmpiricalMeasure mu;
    mu.map_id = f.id();
    mu.sampler = "inverse-branch";
    mu.burn_in = burn_in;
    mu.seed = seed;
    mu.samples.reserve(static_cast<size_t>(N));

    auto pull_back = [&](std::complex<double> zc) {
        // coefficients of F(w) - zc*G(w)
        std::vector<std::complex<double>> c(static_cast<size_t>(d) + 1);
        for (int i = 0; i <= d; ++i) c[static_cast<size_t>(i)] = fc[static_cast<size_t>(i)] - zc * gc[static_cast<size_t>(i)];
        while (c.size() > 1 && std::abs(c.back()) < 1e-300) c.pop_back();
        int deg = static_cast<int>(c.size()) - 1;
        if (deg < 1) throw Error("sample_equilibrium: degenerate pullback");
        // Durand-Kerner, deterministic starts
        std::vector<std::complex<double>> w(static_cast<size_t>(deg));
        for (int i = 0; i < deg; ++i) w[static_cast<size_t>(i)] = std::polar(0.7, 1.1 + 2.0 * M_PI * i / deg);
        for (int it = 0; it < 200; ++it) {
            double moved = 0;
            for (int i = 0; i < deg; ++i) {
                std::complex<double> num = c.back();
                for (int k = deg - 1; k >= 0; --k) num = num * w[static_cast<size_t>(i)] + c[static_cast<size_t>(k)];
                std::complex<double> den = c.back();
                for (int j = 0; j < deg; ++j) {
                    if (j == i) continue;
                    den *= (w[static_cast<size_t>(i)] - w[static_cast<size_t>(j)]);
                }
                if (std::abs(den) < 1e-300) den = 1e-300;
                std::complex<double> delta = num / den;
                w[static_cast<size_t>(i)] -= delta;
                moved = std::max(moved, std::abs(delta));
            }
            if (moved < 1e-14) break;
        }
        // deterministic branch order
        std::sort(w.begin(), w.end(), [](std::complex<double> a, std::complex<double> b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        return w[rng() % static_cast<std::uint64_t>(deg)];
    };

    for (int i = 0; i < burn_in; ++i) z = pull_back(z);
    for (int i = 0; i < N; ++i) {
        z = pull_back(z);
        mu.samples.push_back(z);
    }
    return mu;
}

double discrepancy(std::span<const ChartPoint> points, const BumpFunction& phi, const EmpiricalMeasure& mu) {
    if (points.empty()) throw ValidationError("discrepancy: empty point set");
    if (mu.samples.empty()) throw ValidationError("discrepancy: empty measure");
    double sp = 0;
    for (const auto& p : points) sp += bump_at(phi, p);
    double sm = 0;
    for (const auto& z : mu.samples) sm += phi.value(z);
    return std::fabs(sp / static_cast<double>(points.size()) - sm / static_cast<double>(mu.samples.size()));
}

double discrepancy(std::span<const std::complex<double>> points, const BumpFunction& phi,
                   const EmpiricalMeasure& mu) {
    std::vector<ChartPoint> cp;
    cp.reserve(points.size());
    for (const auto& z : points) cp.push_back({z, false});
    return discrepancy(std::span<const ChartPoint>(cp), phi, mu);
}

RateFit rate_fit(const std::vector<std::pair<int, double>>& series) {
    RateFit fit;
    for (const auto& [n, v] : series) {
        if (v > 0)
            fit.points.emplace_back(n, v);
        else
            ++fit.dropped;
    }
    if (fit.points.size() < 3)
        throw ValidationError("rate_fit: fewer than 3 usable points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [n, v] : fit.points) {
        double x = n, y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double m = static_cast<double>(fit.points.size());
    double denom = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.lambda_hat = std::exp(-fit.slope);
    double ss_tot = syy - sy * sy / m;
    double intercept = (sy - fit.slope * sx) / m;
    double ss_res = 0;
    for (const auto& [n, v] : fit.points) {
        double e = std::log(v) - (fit.slope * n + intercept);
        ss_res += e * e;
    }
    fit.r2 = ss_tot <= 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

bool cubes_dilate_disjoint(const Cube& a, const Cube& b, int dilate) {
    // open dilated cubes; touching boundaries count as disjoint
    double half = 0.5 * dilate;
    return std::fabs(a.cx - b.cx) >= half * (a.side + b.side) ||
           std::fabs(a.cy - b.cy) >= half * (a.side + b.side);
}

GreedyCubesResult greedy_cubes(const EmpiricalMeasure& mu, int D, int dilate, double kappa, double cprime) {
    if (D < 1) throw ValidationError("greedy_cubes: D must be >= 1");
    if (dilate < 1) throw ValidationError("greedy_cubes: dilate must be >= 1");
    if (!(kappa > 0) || !(cprime > 0)) throw ValidationError("greedy_cubes: kappa and c' must be positive");
    if (mu.samples.empty()) throw ValidationError("greedy_cubes: empty measure");

    double side = cprime * std::pow(static_cast<double>(D), -2.0 * kappa);
    double total = static_cast<double>(mu.samples.size());
    // empirical mass on the closed unit disc
    double delta = 0;
    for (const auto& z : mu.samples)
        if (std::abs(z) <= 1.0) delta += 1.0;
    delta /= total;

    // bucket samples on the grid covering [-2,2]^2
    std::map<std::pair<long, long>, long> counts;
    for (const auto& z : mu.samples) {
        if (std::fabs(z.real()) > 2.0 || std::fabs(z.imag()) > 2.0) continue;
        long ix = static_cast<long>(std::floor((z.real() + 2.0) / side));
        long iy = static_cast<long>(std::floor((z.imag() + 2.0) / side));
        ++counts[{ix, iy}];
    }
    std::vector<std::pair<Cube, double>> cells;
    cells.reserve(counts.size());
    for (const auto& [idx, cnt] : counts) {
        Cube c;
        c.cx = -2.0 + (static_cast<double>(idx.first) + 0.5) * side;
        c.cy = -2.0 + (static_cast<double>(idx.second) + 0.5) * side;
        c.side = side;
        cells.emplace_back(c, static_cast<double>(cnt) / total);
    }
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        if (a.first.cx != b.first.cx) return a.first.cx < b.first.cx;
        return a.first.cy < b.first.cy;
    });

    // floor c * D^(-4 k kappa), k = 1, c = delta (2c')^(2k) / 2
    double c_const = delta * (2.0 * cprime) * (2.0 * cprime) / 2.0;
    double floor_value = c_const * std::pow(static_cast<double>(D), -4.0 * kappa);

    GreedyCubesResult out;
    out.delta = delta;
    out.floor_value = floor_value;
    for (int pick = 0; pick < D; ++pick) {
        const std::pair<Cube, double>* best = nullptr;
        for (const auto& cell : cells) {
            bool ok = true;
            for (const auto& chosen : out.cubes)
                if (!cubes_dilate_disjoint(cell.first, chosen, dilate)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            best = &cell;
            break;  // cells sorted by measure descending
        }
        std::ostringstream line;
        if (!best || best->second < floor_value) {
            line << "pick " << (pick + 1) << ": no admissible cube meets the floor " << floor_value;
            out.trace.push_back(line.str());
            std::ostringstream msg;
            msg << "greedy_cubes: floor unmeetable at pick " << (pick + 1) << " of " << D << " (";
            for (const auto& t : out.trace) msg << t << "; ";
            msg << ")";
            throw ResourceError(msg.str());
        }
        line << "pick " << (pick + 1) << ": cube at (" << best->first.cx << ", " << best->first.cy
             << ") measure " << best->second;
        out.trace.push_back(line.str());
        out.cubes.push_back(best->first);
        out.measures.push_back(best->second);
    }
    return out;
}

EquidistReport equidist_report(const RationalMap& f, int n_from, int n_to,
                               const std::vector<BumpFunction>& bumps, const EmpiricalMeasure& mu,
                               int precision_bits, long degree_cap) {
    if (n_from > n_to || n_from < 1) throw ValidationError("equidist_report: empty or invalid n range");
    if (bumps.empty()) throw ValidationError("equidist_report: no bumps given");
    EquidistReport rep;
    std::vector<std::vector<std::pair<int, double>>> series(bumps.size());
    for (int n = n_from; n <= n_to; ++n) {
        PeriodicSpectrum sp = periodic_polynomial(f, n, /*with_factorization=*/false, degree_cap);
        std::vector<ChartPoint> pts;
        auto roots = complex_roots(sp.set_polynomial, precision_bits);
        for (const auto& r : roots) pts.push_back({r.z, false});
        if (sp.includes_infinity) pts.push_back({{0.0, 0.0}, true});
        for (size_t b = 0; b < bumps.size(); ++b) {
            double disc = discrepancy(std::span<const ChartPoint>(pts), bumps[b], mu);
            series[b].emplace_back(n, disc);
            EquidistRow row;
            row.bump_id = static_cast<int>(b);
            row.n = n;
            row.count = sp.count;
            row.disc = disc;
            row.c3_bound = bumps[b].c3_bound;
            // running fit over this bump's rows so far
            try {
                RateFit rf = rate_fit(series[b]);
                row.lambda_hat_running = rf.lambda_hat;
            } catch (const ValidationError&) {
                row.lambda_hat_running = std::numeric_limits<double>::quiet_NaN();
            }
            rep.rows.push_back(std::move(row));
        }
    }
    for (size_t b = 0; b < bumps.size(); ++b) {
        BumpRate br;
        br.bump_id = static_cast<int>(b);
        try {
            br.fit = rate_fit(series[b]);
        } catch (const ValidationError&) {
            br.degenerate = true;
        }
        rep.fits.push_back(std::move(br));
    }
    return rep;
}

}  // namespace perlab
