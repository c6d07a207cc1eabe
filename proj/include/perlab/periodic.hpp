#pragma once

#include "perlab/dynamics.hpp"

#include <optional>
#include <vector>

namespace perlab {

// Root data of Phi_n = Y F_n - X G_n: the squarefree finite part plus the
// infinity flag. orbit_degrees lists irreducible factor degrees and counts
// the rational point at infinity as an orbit of size 1 when present.
struct PeriodicSpectrum {
    int n = 0;
    BigInt raw_degree;      // d^n + 1, the degree of Phi_n with multiplicity
    Poly set_polynomial;    // squarefree univariate, primitive integer
    bool includes_infinity = false;
    std::vector<int> orbit_degrees;  // sorted; empty if factorization skipped
    BigInt count;           // distinct points of Per_n
};

struct PreimageSpectrum {
    int n = 0;
    ProjPoint target;
    Poly set_polynomial;
    bool includes_infinity = false;
    std::vector<int> orbit_degrees;
    BigInt count;
};

PeriodicSpectrum periodic_polynomial(const RationalMap& f, int n, bool with_factorization = true,
                                     long degree_cap = kDefaultDegreeCap);

PreimageSpectrum preimage_polynomial(const RationalMap& f, int n, const ProjPoint& a,
                                     bool with_factorization = true, long degree_cap = kDefaultDegreeCap);

// Irreducible factor degrees of a squarefree polynomial (throws otherwise).
std::vector<int> galois_spectrum(const Poly& p);

struct OrbitRow {
    int n = 0;
    BigInt raw_degree;
    BigInt count;
    long max_orbit = 0;
    double proportion_large = 0.0;      // fraction of points with orbit >= lambda^n
    long splitting_lower_bound = 0;     // max factor degree
    std::optional<long> exact_splitting;  // experimental, n small and budget allowing
    double lambda_hat_running = 0.0;    // NaN until two rows exist
    long kappa = 0;                     // preimage reports only
    bool kappa_ok = true;               // kappa <= lambda1^n
};

struct OrbitReport {
    std::vector<OrbitRow> rows;
    double lambda = 0.0;
    double lambda1 = 0.0;   // preimage reports
    double lambda_hat = 0.0;
    std::optional<int> n0;  // least n after which proportion >= 1 - lambda^-n holds
};

struct ReportOptions {
    bool exact_splitting = false;
    long splitting_budget = 64;
    long degree_cap = kDefaultDegreeCap;
};

OrbitReport orbit_report(const RationalMap& f, int n_from, int n_to, double lambda,
                         const ReportOptions& opts = {});

// Guard: throws HypothesisError when a lies in the exceptional set.
OrbitReport preimage_report(const RationalMap& f, const ProjPoint& a, int n_from, int n_to,
                            double lambda, double lambda1 = 0.0, const ReportOptions& opts = {});

// Exact splitting-field degree of the set polynomial (experimental).
std::optional<long> exact_splitting_degree(const Poly& set_polynomial, long budget);

}  // namespace perlab
