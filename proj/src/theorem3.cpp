#include "indicatrix/theorem3.hpp"

#include <cmath>
#include <stdexcept>

#include "indicatrix/boundary.hpp"
#include "indicatrix/errors.hpp"

namespace indicatrix::geometry {

Profile make_surrogate_profile(const moduli::Modulus& m, double c, double b, double eta,
                               int depth) {
    if (!(b > c)) throw std::invalid_argument("surrogate profile: empty interval");
    if (eta < 0.0 || eta >= 0.5)
        throw std::invalid_argument("surrogate profile: eta must be in [0, 1/2)");
    if (depth < 1 || depth > 30)
        throw std::invalid_argument("surrogate profile: depth in [1, 30]");
    if (eta > 0.0 && !m.doubling())
        throw std::invalid_argument("surrogate profile: modulus must satisfy doubling");
    if (m.delta_max() < 0.5)
        throw std::invalid_argument("surrogate profile: modulus must cover delta = 1/2");

    const double len = b - c;
    std::vector<double> coef(depth), freq(depth);
    double coef_sum = 0.0;
    for (int k = 1; k <= depth; ++k) {
        coef[k - 1] = m(std::ldexp(1.0, -k));
        freq[k - 1] = 2.0 * M_PI * std::ldexp(1.0, k) / len;
        coef_sum += coef[k - 1];
    }
    if (eta * coef_sum >= 0.98)
        throw std::invalid_argument("surrogate profile: eta too large for positivity");
    const double norm = 1.0 + eta * coef_sum; // = 1 + eta W(0), makes phi'(c) = 1

    auto wiggle = [coef, freq, depth](double u) {
        double w = 0.0;
        for (int k = 0; k < depth; ++k) w += coef[k] * std::cos(freq[k] * u);
        return w;
    };
    auto dphi = [wiggle, eta, norm, len, c](double t) {
        double u = t - c;
        return (len - u) / len * (1.0 + eta * wiggle(u)) / norm;
    };
    auto phi = [coef, freq, depth, eta, norm, len, c](double t) {
        double u = t - c;
        double acc = u - u * u / (2.0 * len);
        for (int k = 0; k < depth; ++k) {
            double nu = freq[k], s = std::sin(nu * u), cs = std::cos(nu * u);
            acc += eta * coef[k] * ((len - u) * s / nu + (1.0 - cs) / (nu * nu)) / len;
        }
        return acc / norm;
    };
    auto antideriv = [coef, freq, depth, eta, norm, len, c](double t) {
        double u = t - c;
        double acc = u * u / 2.0 - u * u * u / (6.0 * len);
        for (int k = 0; k < depth; ++k) {
            double nu = freq[k], s = std::sin(nu * u), cs = std::cos(nu * u);
            acc += eta * coef[k] *
                   ((len + u - (len - u) * cs) / (nu * nu) - 2.0 * s / (nu * nu * nu)) / len;
        }
        return acc / norm;
    };

    // Positivity of 1 + eta W on the contract grid.
    const int grid = 100000;
    for (int i = 0; i <= grid; ++i) {
        double u = len * i / grid;
        if (!(1.0 + eta * wiggle(u) > 0.0))
            throw std::invalid_argument("surrogate profile: eta too large for positivity");
    }

    // Nowhere-linearity: every window must show a nonzero second difference.
    const int windows = 256;
    for (int w = 0; w < windows; ++w) {
        double t0 = c + len * w / windows;
        double h = len / windows / 4.0;
        double dev = 0.0;
        for (int i = 1; i <= 2; ++i) {
            double t = t0 + i * h;
            dev = std::max(dev, std::abs(phi(t - h) - 2.0 * phi(t) + phi(t + h)));
        }
        if (dev <= 1e-12)
            throw InvariantViolation("surrogate profile: linear on a subinterval");
    }

    nlohmann::json desc = {{"kind", "surrogate"},
                           {"modulus", m.to_json()},
                           {"interval", {c, b}},
                           {"eta", eta},
                           {"depth", depth}};
    return Profile::from_functions(phi, dphi, c, b, m, 1.0, len / std::ldexp(1.0, depth),
                                   false, antideriv, std::move(desc));
}

double JunctionReport::max_mismatch() const {
    double m = 0.0;
    for (double v : corner_mismatch) m = std::max(m, v);
    for (double v : apex_mismatch) m = std::max(m, v);
    return m;
}

JunctionReport theorem3_junction_report(const DomainSpec& assembled) {
    const auto* shape = std::get_if<AssembledShape>(&assembled.shape());
    if (!shape) throw std::logic_error("theorem3_junction_report: assembled domains only");
    const double side = shape->side;

    auto angle_between = [](Vec2 u, Vec2 v) {
        return std::abs(std::atan2(cross(u, v), dot(u, v)));
    };

    JunctionReport rep;
    // One-sided tangents in each side's graph frame; H'(0) = phi'(c),
    // H'(side) = -phi'(c), H'(side/2 -/+) = +/- phi'(b) up to sign.
    double h0 = assembled.arch_height_deriv(0.0);
    double h1 = assembled.arch_height_deriv(side);
    for (int k = 0; k < 4; ++k) {
        // Incoming arch ends with tangent (1, -H'(side)); across the corner
        // the next frame is rotated by +90 degrees, so its start tangent
        // (1, -H'(0)) maps to (H'(0), 1) in the incoming frame.
        Vec2 u_in{1.0, -h1};
        Vec2 u_out{h0, 1.0};
        rep.corner_mismatch.push_back(angle_between(normalized(u_in), normalized(u_out)));
    }
    const double half = 0.5 * side;
    const double eps = half * 1e-9;
    double hl = assembled.arch_height_deriv(half - eps);
    double hr = assembled.arch_height_deriv(half + eps);
    for (int k = 0; k < 4; ++k) {
        Vec2 u_l{1.0, -hl}, u_r{1.0, -hr};
        rep.apex_mismatch.push_back(angle_between(normalized(u_l), normalized(u_r)));
    }
    return rep;
}

DomainSpec build_theorem3_domain(const Profile& profile, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("build_theorem3_domain: tol must be positive");
    Profile rescaled = profile;
    double dc = profile.deriv(profile.c());
    if (!(dc > 0.0))
        throw InvariantViolation("theorem3 profile: phi'(c) must be positive");
    if (std::abs(dc - 1.0) > 1e-12) {
        // Vertical rescale making phi'(c) = 1; the gluing assumes it.
        double scale = 1.0 / dc;
        Profile base = profile;
        rescaled = Profile::from_functions(
            [base, scale](double t) { return scale * base(t); },
            [base, scale](double t) { return scale * base.deriv(t); }, base.c(), base.b(),
            base.gradient_modulus(), scale * base.max_abs_deriv(), base.finest_scale(), false,
            [base, scale](double t) { return scale * base.antiderivative(t); });
    }
    DomainSpec d = DomainSpec::assembled(rescaled);
    JunctionReport rep = theorem3_junction_report(d);
    if (!(rep.max_mismatch() < tol))
        throw InvariantViolation("build_theorem3_domain: junction tangent mismatch " +
                                 std::to_string(rep.max_mismatch()) + " exceeds tolerance");
    return d;
}

bool boundary_has_no_straight_segment(const DomainSpec& assembled, double window_arc,
                                      double flat_tol) {
    BoundarySampling bs = sample_boundary(assembled, window_arc / 64.0);
    const std::size_t n = bs.size();
    std::size_t lo = 0;
    for (std::size_t hi = 0; lo < n; ++lo) {
        while (hi < n && bs.arc[hi] - bs.arc[lo] < window_arc) ++hi;
        if (hi >= n) break;
        Vec2 a = bs.points[lo], b = bs.points[hi];
        double dev = 0.0;
        for (std::size_t k = lo + 1; k < hi; ++k) {
            Vec2 ab = b - a;
            double len = ab.norm();
            dev = std::max(dev, std::abs(cross(ab, bs.points[k] - a)) / len);
        }
        if (dev <= flat_tol) return false;
    }
    return true;
}

Profile Profile::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        auto iv = j.at("interval");
        return constant(j.at("height").get<double>(), iv.at(0).get<double>(),
                        iv.at(1).get<double>());
    }
    if (kind == "linear") {
        auto iv = j.at("interval");
        return linear(iv.at(0).get<double>(), iv.at(1).get<double>());
    }
    if (kind == "cosine") return cosine();
    if (kind == "surrogate") {
        auto iv = j.at("interval");
        return make_surrogate_profile(moduli::Modulus::from_json(j.at("modulus")),
                                      iv.at(0).get<double>(), iv.at(1).get<double>(),
                                      j.at("eta").get<double>(), j.value("depth", 20));
    }
    throw ConfigError("Profile: unknown kind '" + kind + "'");
}

} // namespace indicatrix::geometry
