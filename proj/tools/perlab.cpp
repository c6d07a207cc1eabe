// perlab: periodic points, Galois orbits, canonical heights, equidistribution
// rates and intersection counts for endomorphisms of P^1 over Q.

#include "perlab/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <string>

namespace {

// "a..b" or a single integer
bool parse_range(const std::string& s, int& from, int& to) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            from = to = std::stoi(s);
        } else {
            from = std::stoi(s.substr(0, pos));
            to = std::stoi(s.substr(pos + 2));
        }
    } catch (...) {
        return false;
    }
    return from >= 1 && from <= to;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perlab: desk-scale checks for periodic points of endomorphisms of P^1"};
    app.require_subcommand(1);

    perlab::RunConfig cfg;
    if (const char* cap = std::getenv("PERLAB_DEGREE_CAP")) cfg.degree_cap = std::atol(cap);

    std::string nrange;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file (stdout when omitted)");
        sub->add_option("--degree-cap", cfg.degree_cap, "iterate degree cap (default 4096)");
    };

    CLI::App* periodic = app.add_subcommand("periodic", "Per_n counts and Galois orbit spectrum");
    periodic->add_option("--map", cfg.map_path, "map JSON file")->required();
    periodic->add_option("--n", nrange, "period range a..b")->required();
    periodic->add_option("--lambda", cfg.lambda, "orbit growth threshold base (default 1.3)");
    periodic->add_flag("--exact-splitting", cfg.exact_splitting, "exact splitting degree for n <= 6 (experimental)");
    add_common(periodic);

    CLI::App* preimage = app.add_subcommand("preimage", "f^-n(a) counts and orbit spectrum");
    preimage->add_option("--map", cfg.map_path, "map JSON file")->required();
    preimage->add_option("--a", cfg.point, "target point (rational or 'inf')")->required();
    preimage->add_option("--n", nrange, "depth range a..b")->required();
    preimage->add_option("--lambda", cfg.lambda, "orbit growth threshold base");
    preimage->add_option("--lambda1", cfg.lambda1, "multiplicity bound base (default: lambda)");
    preimage->add_flag("--exact-splitting", cfg.exact_splitting, "exact splitting degree for n <= 6 (experimental)");
    add_common(preimage);

    CLI::App* galois = app.add_subcommand("galois", "factor-degree spectrum of a polynomial");
    galois->add_option("--poly", cfg.poly_path, "polynomial JSON file")->required();
    galois->add_flag("--exact-splitting", cfg.exact_splitting, "exact splitting degree (experimental)");
    add_common(galois);

    CLI::App* height = app.add_subcommand("height", "canonical height with certified error");
    height->add_option("--map", cfg.map_path, "map JSON file")->required();
    height->add_option("--point", cfg.point, "rational point, e.g. 7/3")->required();
    height->add_option("--tol", cfg.tol, "error tolerance (default 1e-9)");
    add_common(height);

    CLI::App* equidist = app.add_subcommand("equidist", "discrepancy decay of Per_n against the equilibrium measure");
    equidist->add_option("--map", cfg.map_path, "map JSON file")->required();
    equidist->add_option("--n", nrange, "period range a..b")->required();
    equidist->add_option("--bumps", cfg.bumps_path, "bump bank JSON file")->required();
    equidist->add_option("--samples", cfg.samples, "measure sample count (default 10000)");
    equidist->add_option("--burn-in", cfg.burn_in, "pullback burn-in steps (default 30)");
    equidist->add_option("--seed", cfg.seed, "sampler seed (required)")->required();
    equidist->add_option("--precision-bits", cfg.precision_bits, "root certificate precision (default 53)");
    add_common(equidist);

    CLI::App* cubes = app.add_subcommand("cubes", "greedy disjoint-dilate cube selection on an empirical measure");
    cubes->add_option("--map", cfg.map_path, "map JSON file")->required();
    cubes->add_option("--samples", cfg.samples, "measure sample count");
    cubes->add_option("--burn-in", cfg.burn_in, "pullback burn-in steps");
    cubes->add_option("--seed", cfg.seed, "sampler seed (required)")->required();
    cubes->add_option("--D", cfg.D, "number of cubes")->required();
    cubes->add_option("--dilate", cfg.dilate, "dilation factor (default 2)");
    cubes->add_option("--kappa", cfg.kappa, "Holder exponent parameter (default 1)");
    cubes->add_option("--cprime", cfg.cprime, "side constant c' (default 1)");
    add_common(cubes);

    CLI::App* intersect = app.add_subcommand("intersect", "periodic points of a product map on a curve");
    intersect->add_option("--map2", cfg.map2_path, "product map JSON file (array of two maps)")->required();
    intersect->add_option("--curve", cfg.curve_path, "curve JSON file")->required();
    intersect->add_option("--n", nrange, "period range a..b")->required();
    intersect->add_option("--c", cfg.c, "bound constant (default 2)");
    add_common(intersect);

    CLI::App* report = app.add_subcommand("report-all", "consolidated desk-scale checks of all three theorems");
    report->add_option("--config", cfg.config_path, "report configuration JSON")->required();
    add_common(report);

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    const CLI::Option* seed_opt = sub->get_option_no_throw("--seed");
    cfg.seed_set = seed_opt && seed_opt->count() > 0;
    const CLI::Option* n_opt = sub->get_option_no_throw("--n");
    if (n_opt && n_opt->count() > 0 && !parse_range(nrange, cfg.n_from, cfg.n_to)) {
        std::fprintf(stderr, "perlab: bad --n range '%s'\n", nrange.c_str());
        return perlab::kExitConfig;
    }
    return perlab::run(cfg);
}
