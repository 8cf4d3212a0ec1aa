#include "indicatrix/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "indicatrix/errors.hpp"
#include "indicatrix/quadrature.hpp"

namespace indicatrix::geometry {

Profile Profile::constant(double height, double c, double b) {
    if (!(height > 0.0)) throw std::invalid_argument("Profile::constant: height must be > 0");
    if (!(b > c)) throw std::invalid_argument("Profile: empty interval");
    Profile p;
    p.f_ = [height](double) { return height; };
    p.df_ = [](double) { return 0.0; };
    p.antideriv_ = [height, c](double t) { return height * (t - c); };
    p.c_ = c;
    p.b_ = b;
    p.max_abs_deriv_ = 0.0;
    p.grad_modulus_ = moduli::Modulus::power(1.0);
    p.descriptor_ = {{"kind", "constant"}, {"height", height}, {"interval", {c, b}}};
    return p;
}

Profile Profile::linear(double c, double b) {
    if (!(b > c)) throw std::invalid_argument("Profile: empty interval");
    if (c < 0.0) throw std::invalid_argument("Profile::linear: needs c >= 0 for positivity");
    Profile p;
    p.f_ = [](double t) { return t; };
    p.df_ = [](double) { return 1.0; };
    p.antideriv_ = [c](double t) { return 0.5 * (t * t - c * c); };
    p.c_ = c;
    p.b_ = b;
    p.max_abs_deriv_ = 1.0;
    p.grad_modulus_ = moduli::Modulus::power(1.0);
    p.descriptor_ = {{"kind", "linear"}, {"interval", {c, b}}};
    return p;
}

Profile Profile::cosine() {
    Profile p;
    p.f_ = [](double t) { return std::cos(t); };
    p.df_ = [](double t) { return -std::sin(t); };
    p.antideriv_ = [](double t) { return std::sin(t); };
    p.c_ = 0.0;
    p.b_ = 2.0 * M_PI;
    p.periodic_ = true;
    p.max_abs_deriv_ = 1.0;
    p.grad_modulus_ = moduli::Modulus::power(1.0);
    p.descriptor_ = {{"kind", "cosine"}};
    return p;
}

Profile Profile::from_functions(std::function<double(double)> f, std::function<double(double)> df,
                                double c, double b, moduli::Modulus grad_modulus,
                                double max_abs_deriv, double finest_scale, bool periodic,
                                std::function<double(double)> antiderivative,
                                nlohmann::json descriptor) {
    if (!(b > c)) throw std::invalid_argument("Profile: empty interval");
    Profile p;
    p.f_ = std::move(f);
    p.df_ = std::move(df);
    p.antideriv_ = std::move(antiderivative);
    p.c_ = c;
    p.b_ = b;
    p.periodic_ = periodic;
    p.max_abs_deriv_ = max_abs_deriv;
    p.finest_scale_ = finest_scale;
    p.grad_modulus_ = std::move(grad_modulus);
    p.descriptor_ = std::move(descriptor);
    return p;
}

double Profile::antiderivative(double t) const {
    if (antideriv_) return antideriv_(t);
    return integrate_adaptive([this](double s) { return f_(s); }, c_, t, 1e-12, 1e-14);
}

nlohmann::json Profile::to_json() const {
    if (descriptor_.is_null())
        throw std::logic_error("Profile: no serializable descriptor");
    return descriptor_;
}

std::vector<std::pair<double, double>> gradient_modulus_samples(
    const Profile& p, const std::vector<double>& deltas, int samples_per_delta) {
    if (deltas.empty()) throw std::invalid_argument("gradient_modulus_samples: empty grid");
    std::vector<std::pair<double, double>> out;
    out.reserve(deltas.size());
    const double len = p.b() - p.c();
    for (double d : deltas) {
        if (!(d > 0.0) || d >= len)
            throw std::invalid_argument("gradient_modulus_samples: delta outside (0, b-c)");
        double sup = 0.0;
        const int n = samples_per_delta;
        for (int i = 0; i < n; ++i) {
            double t = p.c() + (len - d) * i / (n - 1.0);
            sup = std::max(sup, std::abs(p.deriv(t + d) - p.deriv(t)));
        }
        out.emplace_back(d, sup);
    }
    return out;
}

double gradient_modulus_fit_constant(const Profile& p, const std::vector<double>& deltas) {
    auto measured = gradient_modulus_samples(p, deltas);
    double cfit = 0.0;
    for (const auto& [d, sup] : measured) {
        double w = p.gradient_modulus()(std::min(d, p.gradient_modulus().delta_max()));
        if (w > 0.0) cfit = std::max(cfit, sup / w);
    }
    return cfit;
}

void check_theorem3_profile(const Profile& p, double tol) {
    if (std::abs(p(p.c())) > tol)
        throw InvariantViolation("theorem3 profile: phi(c) != 0");
    if (std::abs(p.deriv(p.c()) - 1.0) > tol)
        throw InvariantViolation("theorem3 profile: phi'(c) != 1");
    if (std::abs(p.deriv(p.b())) > tol)
        throw InvariantViolation("theorem3 profile: phi'(b) != 0");
    const int grid = 4096;
    for (int i = 1; i < grid; ++i) {
        double t = p.c() + (p.b() - p.c()) * i / grid;
        if (!(p.deriv(t) > 0.0))
            throw InvariantViolation("theorem3 profile: phi' not positive on (c, b)");
    }
}

} // namespace indicatrix::geometry
