#ifndef INDICATRIX_PROFILE_HPP
#define INDICATRIX_PROFILE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "indicatrix/modulus.hpp"

namespace indicatrix::geometry {

// A real function phi on an interval [c, b] (or on the circle, as a
// 2pi-periodic function) with derivative access and a declared modulus of
// continuity for phi'.
class Profile {
public:
    static Profile constant(double height, double c, double b);
    // phi(t) = t; requires c >= 0 so that phi > 0 on the open interval.
    static Profile linear(double c, double b);
    // phi = cos t on [0, 2pi], periodic.
    static Profile cosine();
    static Profile from_functions(std::function<double(double)> f,
                                  std::function<double(double)> df, double c, double b,
                                  moduli::Modulus grad_modulus, double max_abs_deriv,
                                  double finest_scale = 0.0, bool periodic = false,
                                  std::function<double(double)> antiderivative = nullptr,
                                  nlohmann::json descriptor = nullptr);

    double operator()(double t) const { return f_(t); }
    double deriv(double t) const { return df_(t); }

    double c() const { return c_; }
    double b() const { return b_; }
    bool periodic() const { return periodic_; }
    double max_abs_deriv() const { return max_abs_deriv_; }
    // Wavelength of the finest oscillation baked into phi'; 0 for smooth
    // profiles. Oscillation-aware quadratures subdivide down to this scale.
    double finest_scale() const { return finest_scale_; }
    const moduli::Modulus& gradient_modulus() const { return grad_modulus_; }

    // Integral of phi from c to t (closed form when available).
    double antiderivative(double t) const;

    nlohmann::json to_json() const;
    static Profile from_json(const nlohmann::json& j);

private:
    Profile() : grad_modulus_(moduli::Modulus::power(1.0)) {}

    std::function<double(double)> f_, df_, antideriv_;
    double c_ = 0.0, b_ = 1.0;
    bool periodic_ = false;
    double max_abs_deriv_ = 0.0;
    double finest_scale_ = 0.0;
    moduli::Modulus grad_modulus_;
    nlohmann::json descriptor_;
};

// Measured modulus of phi' on a sample grid: for each delta, the max of
// |phi'(t + delta) - phi'(t)| over t.
std::vector<std::pair<double, double>> gradient_modulus_samples(
    const Profile& p, const std::vector<double>& deltas, int samples_per_delta = 4096);

// Largest measured/declared ratio over the deltas; finite iff phi is
// C^{1,w} for the declared w (up to the grid).
double gradient_modulus_fit_constant(const Profile& p, const std::vector<double>& deltas);

// Theorem-3 profile contract: phi(c) = 0, phi'(c) = 1, phi'(b) = 0 within
// tol, phi' > 0 on the open interval. Throws InvariantViolation naming the
// failing condition.
void check_theorem3_profile(const Profile& p, double tol = 1e-9);

} // namespace indicatrix::geometry

#endif
