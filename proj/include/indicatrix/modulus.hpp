#ifndef INDICATRIX_MODULUS_HPP
#define INDICATRIX_MODULUS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace indicatrix::moduli {

enum class ModulusKind { Power, PowerLog, Table, Analytic };

// A modulus of continuity: nondecreasing, continuous, w(0) = 0, defined up
// to delta_max (default 1). Table moduli interpolate piecewise-linearly,
// which preserves monotonicity exactly.
class Modulus {
public:
    static Modulus power(double alpha, double delta_max = 1.0);
    // w(d) = d^alpha * log(e/d)^beta; monotonicity is checked on a grid.
    static Modulus power_log(double alpha, double beta, double delta_max = 1.0);
    // samples must start at (0, 0), have strictly increasing deltas and
    // nondecreasing values; delta_max is the last sample's delta.
    static Modulus table(std::vector<std::pair<double, double>> samples);
    static Modulus analytic(std::function<double(double)> f, double delta_max = 1.0,
                            std::string label = "analytic");

    double operator()(double delta) const;
    double delta_max() const { return delta_max_; }
    ModulusKind kind() const { return kind_; }
    bool doubling() const { return doubling_; } // w(2d) < 2 w(d) on the dyadic grid
    double alpha() const;                        // Power / PowerLog only
    double beta() const;                         // PowerLog only

    nlohmann::json to_json() const;
    static Modulus from_json(const nlohmann::json& j);

private:
    Modulus() = default;
    void validate_and_flag();

    ModulusKind kind_ = ModulusKind::Power;
    double alpha_ = 1.0;
    double beta_ = 0.0;
    double delta_max_ = 1.0;
    bool doubling_ = false;
    std::vector<std::pair<double, double>> samples_;
    std::function<double(double)> fn_;
    std::string label_;
};

inline double eval_modulus(const Modulus& m, double delta) { return m(delta); }

// chi(d) = d w(d) and its inverse by monotone bisection (relative tolerance
// 1e-10). Construction verifies strict monotonicity of chi on a grid.
class ChiMap {
public:
    explicit ChiMap(Modulus m);

    double chi(double delta) const;
    double inverse(double y) const; // y must lie in chi((0, delta_max])
    const Modulus& base() const { return base_; }

private:
    Modulus base_;
};

inline double chi_inverse(const ChiMap& c, double y) { return c.inverse(y); }

// J(eps) = int_eps^1 d^{n(p-1)-1} / w(d)^{n-p} dd.
double theorem2_integral(const Modulus& m, int n, double p, double eps);

// I over [1/chi(1), Lambda] of lambda^{n-1-p} (chi^{-1}(1/lambda))^{(n-1)p}.
double lemma2_dual_integral(const ChiMap& c, int n, double p, double lambda_max);

// p* = 1 + (n-1) alpha / (n + alpha); the Theorem 2 integral flips between
// convergent and divergent exactly here for power moduli.
double critical_exponent_power(int n, double alpha);

// Theta_p(y) = ( int_1^y (chi^{-1}(1/tau))^p dtau )^{1/p}, y > 1.
double theta_p(const ChiMap& c, double p, double y);

// w*(d) = d/(1+d) + d inf_{0<x<=d} w(x)/x: nondecreasing, satisfies the
// strict doubling inequality, and w* = O(w) as d -> 0.
Modulus regularize_modulus(const Modulus& m);

enum class IntegralVerdict { Converges, Diverges };

// Closed-form exponent test for power / power-log kinds; the truncation-growth
// heuristic J(1e-8) > 1e4 J(1e-2) otherwise.
IntegralVerdict theorem2_divergence(const Modulus& m, int n, double p);

} // namespace indicatrix::moduli

#endif
