#pragma once

#include "perlab/dynamics.hpp"
#include "perlab/roots.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perlab {

struct EmpiricalMeasure {
    std::vector<std::complex<double>> samples;  // uniform weights 1/N
    std::string map_id;
    std::string sampler;
    int burn_in = 0;
    std::uint64_t seed = 0;
};

// N pullback samples after burn_in uniform random inverse-branch steps,
// deterministic for a fixed seed. The start point must avoid the exceptional
// set.
EmpiricalMeasure sample_equilibrium(const RationalMap& f, int N, int burn_in, std::uint64_t seed,
                                    std::complex<double> start = {2.0, 0.0});

// Radial C^3 test function: 1 inside radius r, 0 outside 2r, a fixed septic
// smoothstep profile between. c3_bound = max(1, A r^-3) with A = 80 from the
// profile's derivative suprema.
struct BumpFunction {
    std::complex<double> center;
    double r = 0.0;
    double c3_bound = 0.0;

    double value(std::complex<double> z) const;
    // value in the second chart (w = 1/z); w = 0 is the point at infinity
    double value_chart2(std::complex<double> w) const;
};

BumpFunction bump(std::complex<double> center, double r);

// A point of P^1(C) in one of the two charts.
struct ChartPoint {
    std::complex<double> z;
    bool second_chart = false;
};

double bump_at(const BumpFunction& phi, const ChartPoint& p);

// |mean of phi over the points - mean of phi over the measure samples|
double discrepancy(std::span<const ChartPoint> points, const BumpFunction& phi, const EmpiricalMeasure& mu);
double discrepancy(std::span<const std::complex<double>> points, const BumpFunction& phi,
                   const EmpiricalMeasure& mu);

struct RateFit {
    std::vector<std::pair<int, double>> points;  // (n, discrepancy) actually used
    double slope = 0.0;
    double lambda_hat = 0.0;  // exp(-slope)
    double r2 = 0.0;
    int dropped = 0;  // zero/negative discrepancies dropped before the fit
};

// Least squares on (n, log discrepancy); throws ValidationError with fewer
// than 3 usable points.
RateFit rate_fit(const std::vector<std::pair<int, double>>& series);

struct Cube {
    double cx = 0.0, cy = 0.0;
    double side = 0.0;
};

bool cubes_dilate_disjoint(const Cube& a, const Cube& b, int dilate);

struct GreedyCubesResult {
    std::vector<Cube> cubes;
    std::vector<double> measures;  // empirical measure of each chosen cube
    double floor_value = 0.0;      // c * D^(-4 k kappa), c = delta (2c')^(2k) / 2
    double delta = 0.0;            // empirical mass on the unit disc
    std::vector<std::string> trace;
};

// Greedy cube selection on the grid of side c' D^(-2 kappa) over [-2,2]^2
// (k = 1): repeatedly take the max-measure cube whose dilate avoids all
// previously chosen dilates. Throws ResourceError (with the greedy trace in
// the message) when D cubes meeting the floor cannot be found.
GreedyCubesResult greedy_cubes(const EmpiricalMeasure& mu, int D, int dilate, double kappa, double cprime);

struct EquidistRow {
    int bump_id = 0;
    int n = 0;
    BigInt count;
    double disc = 0.0;
    double lambda_hat_running = 0.0;
    double c3_bound = 0.0;
};

struct BumpRate {
    int bump_id = 0;
    bool degenerate = false;  // fewer than 3 usable points
    RateFit fit;
};

struct EquidistReport {
    std::vector<EquidistRow> rows;
    std::vector<BumpRate> fits;
};

// For each n: embed Per_n via complex_roots of the set polynomial (infinity
// through the second chart), then one discrepancy row per bump; per-bump
// rate fits at the end.
EquidistReport equidist_report(const RationalMap& f, int n_from, int n_to,
                               const std::vector<BumpFunction>& bumps, const EmpiricalMeasure& mu,
                               int precision_bits = 53, long degree_cap = kDefaultDegreeCap);

}  // namespace perlab
