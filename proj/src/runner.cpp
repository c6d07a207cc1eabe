#include "perlab/runner.hpp"

#include "perlab/heights.hpp"
#include "perlab/io.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace perlab {

using nlohmann::json;

namespace {

ProjPoint parse_point(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return ProjPoint::infinity();
    return ProjPoint::rational(parse_rational(s));
}

long pow_long_checked(int d, int n, long cap) {
    long r = 1;
    for (int i = 0; i < n; ++i) {
        r *= d;
        if (r > cap) return -1;
    }
    return r;
}

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty())
        std::cout << content;
    else
        write_text_file(cfg.out_path, content);
}

std::string csv_preamble(const json& echo) {
    std::ostringstream os;
    os << "# " << kToolVersion << "\n";
    os << "# config: " << echo.dump() << "\n";
    return os.str();
}

std::string nan_safe(double v) { return std::isnan(v) ? "" : format_double(v); }

// ---- individual commands ----

int run_periodic(const RunConfig& cfg) {
    RationalMap f = map_from_json_file(cfg.map_path);
    if (pow_long_checked(f.degree(), cfg.n_to, cfg.degree_cap) < 0)
        throw ValidationError("periodic: n range exceeds the degree cap");
    ReportOptions opts;
    opts.exact_splitting = cfg.exact_splitting;
    opts.degree_cap = cfg.degree_cap;
    OrbitReport rep = orbit_report(f, cfg.n_from, cfg.n_to, cfg.lambda, opts);
    json echo{{"command", "periodic"}, {"map", cfg.map_path}, {"n_from", cfg.n_from},
              {"n_to", cfg.n_to},      {"lambda", cfg.lambda}, {"degree_cap", cfg.degree_cap}};
    std::ostringstream os;
    os << csv_preamble(echo);
    os << "n,raw_degree,count,max_orbit,proportion_large,lambda_hat_running\n";
    for (const auto& row : rep.rows) {
        os << row.n << "," << row.raw_degree.get_str() << "," << row.count.get_str() << "," << row.max_orbit
           << "," << format_double(row.proportion_large) << "," << nan_safe(row.lambda_hat_running) << "\n";
    }
    os << "# lambda_hat: " << nan_safe(rep.lambda_hat) << "\n";
    if (rep.n0) os << "# n0: " << *rep.n0 << "\n";
    emit(cfg, os.str());
    return kExitOk;
}

int run_preimage(const RunConfig& cfg) {
    RationalMap f = map_from_json_file(cfg.map_path);
    if (pow_long_checked(f.degree(), cfg.n_to, cfg.degree_cap) < 0)
        throw ValidationError("preimage: n range exceeds the degree cap");
    ProjPoint a = parse_point(cfg.point);
    ReportOptions opts;
    opts.exact_splitting = cfg.exact_splitting;
    opts.degree_cap = cfg.degree_cap;
    OrbitReport rep = preimage_report(f, a, cfg.n_from, cfg.n_to, cfg.lambda, cfg.lambda1, opts);
    json echo{{"command", "preimage"}, {"map", cfg.map_path}, {"a", cfg.point},
              {"n_from", cfg.n_from},  {"n_to", cfg.n_to},    {"lambda", cfg.lambda},
              {"lambda1", rep.lambda1}, {"degree_cap", cfg.degree_cap}};
    std::ostringstream os;
    os << csv_preamble(echo);
    os << "n,raw_degree,count,max_orbit,proportion_large,lambda_hat_running,kappa,kappa_ok\n";
    for (const auto& row : rep.rows) {
        os << row.n << "," << row.raw_degree.get_str() << "," << row.count.get_str() << "," << row.max_orbit
           << "," << format_double(row.proportion_large) << "," << nan_safe(row.lambda_hat_running) << ","
           << row.kappa << "," << (row.kappa_ok ? 1 : 0) << "\n";
    }
    os << "# lambda_hat: " << nan_safe(rep.lambda_hat) << "\n";
    emit(cfg, os.str());
    return kExitOk;
}

int run_galois(const RunConfig& cfg) {
    Poly p = poly_from_json(read_text_file(cfg.poly_path));
    std::vector<int> degrees = galois_spectrum(p);
    json echo{{"command", "galois"}, {"poly", cfg.poly_path}};
    json out{{"version", kToolVersion}, {"config", echo}, {"degrees", degrees}};
    if (cfg.exact_splitting) {
        auto sd = exact_splitting_degree(p, 64);
        if (sd)
            out["splitting_degree"] = *sd;
        else
            out["splitting_degree"] = nullptr;
    }
    emit(cfg, out.dump(2) + "\n");
    return kExitOk;
}

int run_height(const RunConfig& cfg) {
    RationalMap f = map_from_json_file(cfg.map_path);
    ProjPoint x = parse_point(cfg.point);
    CanonicalHeightEstimate est = canonical_height(f, x, cfg.tol);
    json echo{{"command", "height"}, {"map", cfg.map_path}, {"point", cfg.point}, {"tol", cfg.tol}};
    json out{{"version", kToolVersion},
             {"config", echo},
             {"value", est.value},
             {"error", est.error},
             {"iterations", est.iterations}};
    emit(cfg, out.dump(2) + "\n");
    return kExitOk;
}

int run_equidist(const RunConfig& cfg) {
    if (!cfg.seed_set) throw ValidationError("equidist: an explicit --seed is required for sampling");
    RationalMap f = map_from_json_file(cfg.map_path);
    if (pow_long_checked(f.degree(), cfg.n_to, cfg.degree_cap) < 0)
        throw ValidationError("equidist: n range exceeds the degree cap");
    std::vector<BumpFunction> bumps = bumps_from_json_file(cfg.bumps_path);
    EmpiricalMeasure mu = sample_equilibrium(f, cfg.samples, cfg.burn_in, cfg.seed);
    EquidistReport rep = equidist_report(f, cfg.n_from, cfg.n_to, bumps, mu, cfg.precision_bits, cfg.degree_cap);
    json echo{{"command", "equidist"}, {"map", cfg.map_path},     {"bumps", cfg.bumps_path},
              {"n_from", cfg.n_from},  {"n_to", cfg.n_to},        {"samples", cfg.samples},
              {"burn_in", cfg.burn_in}, {"seed", cfg.seed},       {"precision_bits", cfg.precision_bits},
              {"degree_cap", cfg.degree_cap}};
    std::ostringstream os;
    os << csv_preamble(echo);
    os << "bump_id,n,count,discrepancy,lambda_hat_running,c3_bound\n";
    for (const auto& row : rep.rows) {
        os << row.bump_id << "," << row.n << "," << row.count.get_str() << "," << format_double(row.disc)
           << "," << nan_safe(row.lambda_hat_running) << "," << format_double(row.c3_bound) << "\n";
    }
    for (const auto& fit : rep.fits) {
        os << "# fit bump_id=" << fit.bump_id;
        if (fit.degenerate) {
            os << " degenerate\n";
        } else {
            os << " lambda_hat=" << format_double(fit.fit.lambda_hat) << " r2=" << format_double(fit.fit.r2)
               << " points=" << fit.fit.points.size() << " dropped=" << fit.fit.dropped << "\n";
        }
    }
    emit(cfg, os.str());
    return kExitOk;
}

int run_cubes(const RunConfig& cfg) {
    if (!cfg.seed_set) throw ValidationError("cubes: an explicit --seed is required for sampling");
    RationalMap f = map_from_json_file(cfg.map_path);
    EmpiricalMeasure mu = sample_equilibrium(f, cfg.samples, cfg.burn_in, cfg.seed);
    GreedyCubesResult res = greedy_cubes(mu, cfg.D, cfg.dilate, cfg.kappa, cfg.cprime);
    json echo{{"command", "cubes"}, {"map", cfg.map_path}, {"samples", cfg.samples},
              {"burn_in", cfg.burn_in}, {"seed", cfg.seed}, {"D", cfg.D},
              {"dilate", cfg.dilate},  {"kappa", cfg.kappa}, {"cprime", cfg.cprime}};
    json cubes = json::array();
    for (size_t i = 0; i < res.cubes.size(); ++i) {
        cubes.push_back({{"cx", res.cubes[i].cx},
                         {"cy", res.cubes[i].cy},
                         {"side", res.cubes[i].side},
                         {"measure", res.measures[i]}});
    }
    json out{{"version", kToolVersion}, {"config", echo},        {"cubes", cubes},
             {"floor", res.floor_value}, {"delta", res.delta},   {"trace", res.trace}};
    emit(cfg, out.dump(2) + "\n");
    return kExitOk;
}

int run_intersect(const RunConfig& cfg) {
    ProductMap fg = product_from_json_file(cfg.map2_path);
    BihomCurve Z = curve_from_json_file(cfg.curve_path);
    if (pow_long_checked(fg.d, cfg.n_to, cfg.degree_cap) < 0)
        throw ValidationError("intersect: n range exceeds the degree cap");
    json echo{{"command", "intersect"}, {"map2", cfg.map2_path}, {"curve", cfg.curve_path},
              {"n_from", cfg.n_from},   {"n_to", cfg.n_to},      {"c", cfg.c},
              {"degree_cap", cfg.degree_cap}};
    std::ostringstream os;
    os << csv_preamble(echo);
    os << "n,count,bound,margin,pass,full_fiber\n";
    for (int n = cfg.n_from; n <= cfg.n_to; ++n) {
        BoundCheck bc = bound_check(fg, Z, n, cfg.c, cfg.degree_cap);
        CurveCount cc = count_periodic_on_curve(fg, Z, n, cfg.degree_cap);
        os << n << "," << bc.count.get_str() << "," << rational_string(bc.bound) << ","
           << format_double(bc.margin) << "," << (bc.pass ? 1 : 0) << "," << (cc.full_fiber ? 1 : 0) << "\n";
    }
    emit(cfg, os.str());
    return kExitOk;
}

std::string resolve_relative(const std::string& base_file, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_file).parent_path() / p).string();
}

int run_report_all(const RunConfig& cfg) {
    json conf = json::parse(read_text_file(cfg.config_path));
    json summary{{"version", kToolVersion}, {"config", conf}};
    std::string base = cfg.out_path.empty() ? std::string("report") : cfg.out_path;

    auto clamp_range = [&](int d, int from, int to, std::vector<std::string>& skips, const char* tag) {
        int hi = to;
        while (hi >= from && pow_long_checked(d, hi, cfg.degree_cap) < 0) {
            std::ostringstream msg;
            msg << tag << ": n=" << hi << " skipped (degree cap " << cfg.degree_cap << ")";
            skips.push_back(msg.str());
            --hi;
        }
        return hi;
    };

    std::vector<std::string> skips;
    // Theorem 1.1 block: periodic orbit growth
    if (conf.contains("thm11")) {
        const json& b = conf["thm11"];
        RationalMap f = map_from_json_file(resolve_relative(cfg.config_path, b.at("map")));
        int from = b.value("n_from", 2), to = b.value("n_to", 8);
        double lambda = b.value("lambda", 1.3);
        int hi = clamp_range(f.degree(), from, to, skips, "thm11");
        json th{{"lambda", lambda}};
        if (hi < from) {
            th["status"] = "skipped";
        } else {
            ReportOptions opts;
            opts.degree_cap = cfg.degree_cap;
            OrbitReport rep = orbit_report(f, from, hi, lambda, opts);
            RunConfig sub = cfg;
            sub.out_path = base + ".thm11.csv";
            sub.map_path = resolve_relative(cfg.config_path, b.at("map"));
            sub.n_from = from;
            sub.n_to = hi;
            sub.lambda = lambda;
            sub.command = "periodic";
            run_periodic(sub);
            th["rows"] = rep.rows.size();
            th["lambda_hat"] = rep.lambda_hat;
            th["n0"] = rep.n0 ? json(*rep.n0) : json(nullptr);
            th["pass"] = rep.lambda_hat > 1.0 && rep.n0.has_value();
            th["artifact"] = sub.out_path;
        }
        summary["thm11"] = th;
    }
    // Theorem 1.2 block: preimage towers
    if (conf.contains("thm12")) {
        const json& b = conf["thm12"];
        RationalMap f = map_from_json_file(resolve_relative(cfg.config_path, b.at("map")));
        int from = b.value("n_from", 1), to = b.value("n_to", 8);
        double lambda = b.value("lambda", 1.3);
        double lambda1 = b.value("lambda1", 0.0);
        ProjPoint a = parse_point(b.at("a").get<std::string>());
        int hi = clamp_range(f.degree(), from, to, skips, "thm12");
        json th{{"lambda", lambda}};
        if (hi < from) {
            th["status"] = "skipped";
        } else {
            ReportOptions opts;
            opts.degree_cap = cfg.degree_cap;
            OrbitReport rep = preimage_report(f, a, from, hi, lambda, lambda1, opts);
            RunConfig sub = cfg;
            sub.out_path = base + ".thm12.csv";
            sub.map_path = resolve_relative(cfg.config_path, b.at("map"));
            sub.point = b.at("a").get<std::string>();
            sub.n_from = from;
            sub.n_to = hi;
            sub.lambda = lambda;
            sub.lambda1 = lambda1;
            sub.command = "preimage";
            run_preimage(sub);
            bool kappas_ok = true;
            for (const auto& row : rep.rows) kappas_ok = kappas_ok && row.kappa_ok;
            th["lambda_hat"] = rep.lambda_hat;
            th["kappa_ok"] = kappas_ok;
            th["pass"] = rep.lambda_hat > 1.0 && kappas_ok;
            th["artifact"] = sub.out_path;
        }
        summary["thm12"] = th;
    }
    // Theorem 1.3 block: equidistribution rates
    if (conf.contains("thm13")) {
        const json& b = conf["thm13"];
        RationalMap f = map_from_json_file(resolve_relative(cfg.config_path, b.at("map")));
        int from = b.value("n_from", 3), to = b.value("n_to", 8);
        int hi = clamp_range(f.degree(), from, to, skips, "thm13");
        json th;
        if (hi < from) {
            th["status"] = "skipped";
        } else {
            std::vector<BumpFunction> bumps =
                bumps_from_json_file(resolve_relative(cfg.config_path, b.at("bumps")));
            EmpiricalMeasure mu = sample_equilibrium(f, b.value("samples", 10000), b.value("burn_in", 30),
                                                     b.value("seed", 7));
            EquidistReport rep =
                equidist_report(f, from, hi, bumps, mu, b.value("precision_bits", 53), cfg.degree_cap);
            RunConfig sub = cfg;
            sub.out_path = base + ".thm13.csv";
            sub.map_path = resolve_relative(cfg.config_path, b.at("map"));
            sub.bumps_path = resolve_relative(cfg.config_path, b.at("bumps"));
            sub.n_from = from;
            sub.n_to = hi;
            sub.samples = b.value("samples", 10000);
            sub.burn_in = b.value("burn_in", 30);
            sub.seed = b.value("seed", 7);
            sub.seed_set = true;
            sub.precision_bits = b.value("precision_bits", 53);
            sub.command = "equidist";
            run_equidist(sub);
            json fits = json::array();
            bool pass = true;
            int usable = 0;
            for (const auto& fit : rep.fits) {
                if (fit.degenerate) {
                    fits.push_back({{"bump_id", fit.bump_id}, {"degenerate", true}});
                } else {
                    ++usable;
                    fits.push_back({{"bump_id", fit.bump_id},
                                    {"lambda_hat", fit.fit.lambda_hat},
                                    {"r2", fit.fit.r2}});
                    pass = pass && fit.fit.lambda_hat > 1.0;
                }
            }
            pass = pass && usable > 0;
            th["fits"] = fits;
            th["pass"] = pass;
            th["artifact"] = sub.out_path;
        }
        summary["thm13"] = th;
    }
    summary["skips"] = skips;
    emit(cfg, summary.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        if (cfg.command == "periodic") return run_periodic(cfg);
        if (cfg.command == "preimage") return run_preimage(cfg);
        if (cfg.command == "galois") return run_galois(cfg);
        if (cfg.command == "height") return run_height(cfg);
        if (cfg.command == "equidist") return run_equidist(cfg);
        if (cfg.command == "cubes") return run_cubes(cfg);
        if (cfg.command == "intersect") return run_intersect(cfg);
        if (cfg.command == "report-all") return run_report_all(cfg);
        std::cerr << "perlab: unknown command '" << cfg.command << "'\n";
        return kExitConfig;
    } catch (const HypothesisError& e) {
        std::cerr << "perlab: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const ValidationError& e) {
        std::cerr << "perlab: " << e.what() << "\n";
        return kExitConfig;
    } catch (const FormMismatchError& e) {
        std::cerr << "perlab: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DegreeCapError& e) {
        std::cerr << "perlab: " << e.what() << "\n";
        return kExitResource;
    } catch (const ResourceError& e) {
        std::cerr << "perlab: " << e.what() << "\n";
        return kExitResource;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "perlab: bad JSON input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "perlab: " << e.what() << "\n";
        return kExitResource;
    }
}

}  // namespace perlab
