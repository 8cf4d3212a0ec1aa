// Command-line surface: parse domain/config JSON, run the analyses, emit
// CSV/JSON/SVG-path artifacts with fixed seeds.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "indicatrix/apnorms.hpp"
#include "indicatrix/boundary.hpp"
#include "indicatrix/errors.hpp"
#include "indicatrix/geometry.hpp"
#include "indicatrix/integrability.hpp"
#include "indicatrix/modulus.hpp"
#include "indicatrix/sobolev.hpp"
#include "indicatrix/spectra.hpp"
#include "indicatrix/theorem3.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace indicatrix;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEngine = 3;
constexpr int kExitAccuracy = 4;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

// Every artifact carries the run configuration and its hash so outputs are
// reproducible byte for byte.
json run_header(const std::string& command, const json& config) {
    return {{"schema", "v1"},
            {"command", command},
            {"config", config},
            {"config_hash", fnv1a(config.dump())}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

geometry::DomainSpec domain_from_config(const json& config) {
    if (!config.contains("domain")) throw ConfigError("config needs a 'domain' entry");
    const json& d = config["domain"];
    return d.is_string() ? geometry::DomainSpec::from_json(load_json(d.get<std::string>()))
                         : geometry::DomainSpec::from_json(d);
}

std::vector<double> parse_range(const json& spec, const char* what) {
    // Either an explicit array or {"lo":..,"hi":..,"count":..} (geometric
    // when "log" is true).
    std::vector<double> out;
    if (spec.is_array()) {
        for (const auto& v : spec) out.push_back(v.get<double>());
    } else if (spec.is_object()) {
        double lo = spec.at("lo").get<double>(), hi = spec.at("hi").get<double>();
        int count = spec.at("count").get<int>();
        if (count < 2 || !(hi > lo)) throw ConfigError(std::string(what) + ": bad range");
        bool log = spec.value("log", false);
        for (int i = 0; i < count; ++i) {
            double t = static_cast<double>(i) / (count - 1);
            out.push_back(log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
        }
    } else {
        throw ConfigError(std::string(what) + ": expected array or range object");
    }
    if (out.empty()) throw ConfigError(std::string(what) + ": empty");
    return out;
}

int cmd_transform(const json& config, const fs::path& out_dir) {
    geometry::DomainSpec d = domain_from_config(config);
    std::string engine_name = config.value("engine", std::string("closed"));
    spectra::Engine engine = spectra::engine_from_name(engine_name);
    json header = run_header("transform", config);

    if (engine == spectra::Engine::Grid) {
        int n = config.value("grid", 1024);
        auto [lo, hi] = d.bounding_box();
        Vec2 pad{0.1 * (hi.x - lo.x) + 0.05, 0.1 * (hi.y - lo.y) + 0.05};
        Vec2 blo = lo - pad, bhi = hi + pad;
        double side = std::max(bhi.x - blo.x, bhi.y - blo.y);
        bhi = {blo.x + side, blo.y + side};
        spectra::SpectrumGrid g = spectra::grid_transform(d, n, blo, bhi);

        std::ostringstream csv;
        spectra::write_spectrum_csv(csv, g, config.value("max_freq", 64.0));
        write_text(out_dir / "spectrum.csv", csv.str());
        std::ostringstream bin;
        spectra::write_spectrum_binary(bin, g);
        write_text(out_dir / "spectrum.bin", bin.str());

        // Cross-check against pointwise engines where they apply.
        json cross = json::array();
        for (spectra::Engine other : spectra::pointwise_engines(d)) {
            double max_err = 0.0;
            int kmax = std::min(g.n / 2 - 1, static_cast<int>(32.0 / g.freq_step()));
            for (int ky = -kmax; ky <= kmax; ++ky)
                for (int kx = -kmax; kx <= kmax; ++kx) {
                    Vec2 u = g.freq_at(kx, ky);
                    if (u.norm() > 32.0) continue;
                    max_err = std::max(max_err,
                                       std::abs(g.value_at(kx, ky) -
                                                spectra::transform_value(d, u, other)));
                }
            cross.push_back({{"engine", spectra::engine_name(other)},
                             {"max_abs_error", max_err},
                             {"freq_cap", 32.0}});
        }
        header["grid"] = {{"n", g.n},
                          {"raster_area", g.raster_area},
                          {"error_estimate", g.error_estimate}};
        header["cross_check"] = cross;
        write_json(out_dir / "transform.json", header);
        return 0;
    }

    if (engine == spectra::Engine::Lemma1) {
        double u = config.value("u", 1.0), lambda = config.value("lambda", 2.0);
        auto v = spectra::lemma1_transform(d, u, lambda);
        header["value"] = {{"u", u}, {"lambda", lambda}, {"re", v.real()}, {"im", v.imag()}};
        write_json(out_dir / "transform.json", header);
        std::string csv = "u1,u2,re,im,abs\n" + fmt(u) + "," + fmt(lambda) + "," +
                          fmt(v.real()) + "," + fmt(v.imag()) + "," + fmt(std::abs(v)) + "\n";
        write_text(out_dir / "spectrum.csv", csv);
        return 0;
    }

    // Pointwise engines on a polar frequency set.
    auto radii = parse_range(config.value("radial", json{{"lo", 0.0}, {"hi", 64.0}, {"count", 65}}),
                             "radial");
    int angles = config.value("angles", 8);
    std::string csv = "u1,u2,re,im,abs\n";
    for (double r : radii) {
        for (int a = 0; a < (r == 0.0 ? 1 : angles); ++a) {
            double th = 2.0 * M_PI * a / angles;
            Vec2 u{r * std::cos(th), r * std::sin(th)};
            auto v = spectra::transform_value(d, u, engine);
            csv += fmt(u.x) + "," + fmt(u.y) + "," + fmt(v.real()) + "," + fmt(v.imag()) +
                   "," + fmt(std::abs(v)) + "\n";
        }
    }
    write_text(out_dir / "spectrum.csv", csv);

    json cross = json::array();
    for (spectra::Engine other : spectra::pointwise_engines(d)) {
        if (other == engine) continue;
        double max_err = 0.0;
        for (double r : radii) {
            if (r == 0.0) continue;
            Vec2 u{r, 0.3 * r};
            max_err = std::max(max_err, std::abs(spectra::transform_value(d, u, engine) -
                                                 spectra::transform_value(d, u, other)));
        }
        cross.push_back({{"engine", spectra::engine_name(other)}, {"max_abs_error", max_err}});
    }
    header["cross_check"] = cross;
    write_json(out_dir / "transform.json", header);
    return 0;
}

int cmd_lp_scan(const json& config, const fs::path& out_dir) {
    geometry::DomainSpec d = domain_from_config(config);
    auto ps = parse_range(config.value("p", json::array({1.1, 1.25, 4.0 / 3.0, 1.5})), "p");
    int j_lo = config.value("j_lo", 3), j_hi = config.value("j_hi", 12);
    integrability::EnergyOptions opts;
    opts.angular_samples = config.value("angular", 512);

    bool exploratory = std::holds_alternative<geometry::AssembledShape>(d.shape());
    json header = run_header("lp-scan", config);
    if (exploratory)
        header["exploratory"] =
            "surrogate-profile domain: integrability reports are not certified";

    json results = json::array();
    std::string csv = "p,j,S_j,err\n";
    for (double p : ps) {
        auto rep = integrability::dyadic_energies(d, p, j_lo, j_hi, opts);
        auto verdict = integrability::membership_verdict(rep);
        for (const auto& le : rep.levels)
            csv += fmt(p) + "," + std::to_string(le.j) + "," + fmt(le.value) + "," +
                   fmt(le.err_estimate) + "\n";
        results.push_back({{"p", p},
                           {"slope", rep.slope},
                           {"ci", rep.slope_ci},
                           {"residual", rep.slope_residual},
                           {"verdict", integrability::verdict_name(verdict.verdict)}});
    }
    header["results"] = results;

    if (config.contains("p_bracket")) {
        auto br = parse_range(config["p_bracket"], "p_bracket");
        auto ce = integrability::critical_exponent_estimate(d, br.front(), br.back(), j_lo,
                                                            j_hi, opts);
        header["critical_exponent"] = {{"p_star", ce.p_star}, {"uncertainty", ce.uncertainty}};
    }
    write_text(out_dir / "dyadic.csv", csv);
    write_json(out_dir / "lp_scan.json", header);
    return 0;
}

int cmd_sobolev(const json& config, const fs::path& out_dir) {
    geometry::DomainSpec d = domain_from_config(config);
    auto s_grid = parse_range(config.value("s", json{{"lo", 0.3}, {"hi", 0.7}, {"count", 17}}),
                              "s");
    std::uint64_t budget = config.value("budget", 100000);
    std::uint64_t seed = config.value("seed", 42);
    int k_lo = config.value("k_lo", 4), k_hi = config.value("k_hi", 12);

    auto rep = sobolev::sobolev_membership_sweep(d, s_grid, budget, seed, k_lo, k_hi);
    std::ostringstream csv;
    sobolev::write_sobolev_csv(csv, rep);
    write_text(out_dir / "sobolev.csv", csv.str());

    json header = run_header("sobolev", config);
    header["seed"] = seed;
    header["s_hat"] = rep.s_hat;
    header["l2_term"] = rep.l2_term;
    json cls = json::array();
    for (std::size_t i = 0; i < rep.s_values.size(); ++i)
        cls.push_back({{"s", rep.s_values[i]},
                       {"classification", rep.divergent[i] ? "divergent" : "convergent"}});
    header["classifications"] = cls;
    write_json(out_dir / "sobolev.json", header);
    return 0;
}

int cmd_minkowski(const json& config, const fs::path& out_dir) {
    geometry::DomainSpec d = domain_from_config(config);
    auto deltas = parse_range(
        config.value("delta", json{{"lo", 1e-3}, {"hi", 1.0}, {"count", 13}, {"log", true}}),
        "delta");
    auto est = geometry::minkowski_dimension(d, deltas);

    std::string csv = "delta,area\n";
    for (auto [delta, area] : est.areas) csv += fmt(delta) + "," + fmt(area) + "\n";
    write_text(out_dir / "minkowski.csv", csv);

    json header = run_header("minkowski", config);
    header["dimension"] = est.dimension;
    header["slope_residual"] = est.slope_residual;
    if (config.value("remark1", true))
        header["remark1_bound"] = sobolev::remark1_bound(est.dimension, 2);
    write_json(out_dir / "minkowski.json", header);
    return 0;
}

int cmd_moduli(const json& config, const fs::path& out_dir) {
    moduli::Modulus m = moduli::Modulus::from_json(
        config.contains("modulus") ? config["modulus"] : json{{"kind", "power"}, {"alpha", 1.0}});
    int n = config.value("n", 2);
    auto ps = parse_range(config.value("p", json{{"lo", 1.05}, {"hi", 1.95}, {"count", 19}}),
                          "p");
    moduli::ChiMap chi(m);

    json header = run_header("moduli", config);
    std::string csv = "p,J_1e-4,identity6_residual,verdict\n";
    json rows = json::array();
    for (double p : ps) {
        const double eps = 1e-4;
        double big_j = moduli::theorem2_integral(m, n, p, eps);
        double big_i = moduli::lemma2_dual_integral(chi, n, p, 1.0 / chi.chi(eps));
        double rhs = (std::pow(eps, n * (p - 1.0)) / std::pow(m(eps), n - p) -
                      1.0 / std::pow(m(1.0), n - p)) /
                     (n - p);
        double lhs = big_i - (n - 1.0) * p / (n - p) * big_j;
        double residual = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
        auto verdict = moduli::theorem2_divergence(m, n, p);
        const char* name =
            verdict == moduli::IntegralVerdict::Diverges ? "diverges" : "converges";
        csv += fmt(p) + "," + fmt(big_j) + "," + fmt(residual) + "," + name + "\n";
        rows.push_back({{"p", p}, {"J", big_j}, {"identity6_residual", residual},
                        {"verdict", name}});
    }
    header["rows"] = rows;
    if (m.kind() == moduli::ModulusKind::Power)
        header["critical_exponent"] = moduli::critical_exponent_power(n, m
                                                                          .alpha());

    // Regularized modulus doubling table.
    moduli::Modulus star = moduli::regularize_modulus(m);
    std::string table = "delta,w,w_star,doubling_ratio\n";
    for (int k = 1; k <= 20; ++k) {
        double delta = std::ldexp(1.0, -k);
        table += fmt(delta) + "," + fmt(m(delta)) + "," + fmt(star(delta)) + "," +
                 fmt(star(2.0 * delta) / star(delta)) + "\n";
    }
    write_text(out_dir / "modulus_star.csv", table);
    write_text(out_dir / "moduli.csv", csv);
    write_json(out_dir / "moduli.json", header);
    return 0;
}

int cmd_apnorm(const json& config, const fs::path& out_dir) {
    geometry::Profile phi = config.contains("profile")
                                ? geometry::Profile::from_json(config["profile"])
                                : geometry::Profile::cosine();
    double p = config.value("p", 4.0 / 3.0);
    auto ladder = parse_range(
        config.value("lambda", json{{"lo", 10.0}, {"hi", 1000.0}, {"count", 17}, {"log", true}}),
        "lambda");

    apnorms::NormCurve curve = apnorms::growth_fit(phi, p, ladder);
    std::ostringstream csv;
    apnorms::write_norm_curve_csv(csv, curve);
    write_text(out_dir / "norm_curve.csv", csv.str());

    json header = run_header("apnorm", config);
    header["fit"] = {{"slope", curve.slope},
                     {"ci", curve.slope_ci},
                     {"residual", curve.residual},
                     {"fit_points", curve.fit_points}};
    auto scan = apnorms::lemma1_integrand_scan(phi, p, ladder);
    header["lemma1_scan"] = {
        {"fitted_exponent", scan.fitted_exponent},
        {"truncated_integral", scan.truncated_integral},
        {"verdict", scan.verdict == apnorms::ScanVerdict::Converges ? "converges" : "diverges"}};
    write_json(out_dir / "apnorm.json", header);
    return 0;
}

int cmd_construct(const json& config, const fs::path& out_dir) {
    moduli::Modulus m = moduli::Modulus::from_json(
        config.contains("modulus") ? config["modulus"] : json{{"kind", "power"}, {"alpha", 0.5}});
    double eta = config.value("eta", 0.25);
    int depth = config.value("depth", 20);
    double c = 0.0, b = 1.0;
    if (config.contains("interval")) {
        c = config["interval"].at(0).get<double>();
        b = config["interval"].at(1).get<double>();
    }
    double tol = config.value("tol", 1e-6);

    geometry::Profile phi = geometry::make_surrogate_profile(m, c, b, eta, depth);
    geometry::DomainSpec d = geometry::build_theorem3_domain(phi, tol);
    write_json(out_dir / "domain.json", d.to_json());

    auto rep = geometry::theorem3_junction_report(d);
    json header = run_header("construct", config);
    header["junctions"] = {{"corner_mismatch", rep.corner_mismatch},
                           {"apex_mismatch", rep.apex_mismatch},
                           {"max_mismatch", rep.max_mismatch()}};
    header["no_straight_segment"] = geometry::boundary_has_no_straight_segment(d);

    auto fit = geometry::normal_modulus_fit(d, geometry::log_spaced(3e-5, 3e-3, 7));
    header["normal_modulus"] = {{"exponent", fit.exponent}, {"residual", fit.residual}};

    // Boundary as SVG path data plus the sampled CSV.
    geometry::BoundarySampling bs = geometry::sample_boundary(d, config.value("step", 1e-2));
    std::ostringstream csv;
    geometry::write_boundary_csv(csv, bs);
    write_text(out_dir / "boundary.csv", csv.str());
    std::string path = "M " + fmt(bs.points[0].x) + " " + fmt(bs.points[0].y);
    for (std::size_t i = 1; i < bs.size(); ++i)
        path += " L " + fmt(bs.points[i].x) + " " + fmt(bs.points[i].y);
    path += " Z";
    write_text(out_dir / "boundary.svgpath", path + "\n");
    header["svg_path_file"] = "boundary.svgpath";
    write_json(out_dir / "construct.json", header);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"indicatrix: Fourier transforms of planar indicator functions"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", domain_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--domain", domain_path, "domain JSON file path");
    };

    CLI::App* transform = app.add_subcommand("transform", "evaluate the transform engines");
    std::string engine;
    transform->add_option("--engine", engine, "closed|boundary|grid|lemma1");
    double u_opt = 1.0, lambda_opt = 2.0;
    int grid_n = 1024;
    transform->add_option("--u", u_opt, "first frequency (lemma1 engine)");
    transform->add_option("--lambda", lambda_opt, "second frequency (lemma1 engine)");
    transform->add_option("--grid", grid_n, "grid size per axis");
    add_common(transform);

    CLI::App* lp = app.add_subcommand("lp-scan", "dyadic energy report and verdicts");
    add_common(lp);
    CLI::App* sob = app.add_subcommand("sobolev", "difference-norm sweep");
    add_common(sob);
    CLI::App* mink = app.add_subcommand("minkowski", "box-counting dimension");
    add_common(mink);
    CLI::App* mod = app.add_subcommand("moduli", "modulus integral criteria");
    add_common(mod);
    CLI::App* ap = app.add_subcommand("apnorm", "exponential norm growth");
    add_common(ap);
    CLI::App* con = app.add_subcommand("construct", "assemble the glued-arch domain");
    add_common(con);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        json config = json::object();
        if (!config_path.empty()) config = load_json(config_path);
        if (!domain_path.empty()) config["domain"] = domain_path;
        fs::create_directories(out_dir);

        if (transform->parsed()) {
            if (!engine.empty()) config["engine"] = engine;
            if (transform->count("--u")) config["u"] = u_opt;
            if (transform->count("--lambda")) config["lambda"] = lambda_opt;
            if (transform->count("--grid")) config["grid"] = grid_n;
            return cmd_transform(config, out_dir);
        }
        if (lp->parsed()) return cmd_lp_scan(config, out_dir);
        if (sob->parsed()) return cmd_sobolev(config, out_dir);
        if (mink->parsed()) return cmd_minkowski(config, out_dir);
        if (mod->parsed()) return cmd_moduli(config, out_dir);
        if (ap->parsed()) return cmd_apnorm(config, out_dir);
        if (con->parsed()) return cmd_construct(config, out_dir);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
        return kExitConfig;
    } catch (const EngineMismatchError& e) {
        std::cerr << json{{"error", "engine"}, {"message", e.what()}}.dump() << "\n";
        return kExitEngine;
    } catch (const AccuracyError& e) {
        std::cerr << json{{"error", "accuracy"}, {"message", e.what()}}.dump() << "\n";
        return kExitAccuracy;
    } catch (const InvariantViolation& e) {
        std::cerr << json{{"error", "invariant"}, {"message", e.what()}}.dump() << "\n";
        return kExitAccuracy;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
