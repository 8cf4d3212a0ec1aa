#include "indicatrix/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "indicatrix/errors.hpp"
#include "indicatrix/quadrature.hpp"

namespace indicatrix::moduli {

namespace {

double eval_kind(ModulusKind kind, double alpha, double beta,
                 const std::vector<std::pair<double, double>>& samples,
                 const std::function<double(double)>& fn, double delta) {
    switch (kind) {
    case ModulusKind::Power:
        return delta == 0.0 ? 0.0 : std::pow(delta, alpha);
    case ModulusKind::PowerLog: {
        if (delta == 0.0) return 0.0;
        return std::pow(delta, alpha) * std::pow(std::log(M_E / delta), beta);
    }
    case ModulusKind::Table: {
        auto it = std::lower_bound(samples.begin(), samples.end(), delta,
                                   [](const auto& s, double d) { return s.first < d; });
        if (it == samples.begin()) return it->second;
        if (it == samples.end()) return samples.back().second;
        auto prev = std::prev(it);
        double t = (delta - prev->first) / (it->first - prev->first);
        return prev->second + t * (it->second - prev->second);
    }
    case ModulusKind::Analytic:
        return fn(delta);
    }
    return 0.0;
}

} // namespace

double Modulus::operator()(double delta) const {
    if (!(delta >= 0.0) || delta > delta_max_ * (1.0 + 1e-12))
        throw std::domain_error("Modulus: delta outside [0, delta_max]");
    return eval_kind(kind_, alpha_, beta_, samples_, fn_, std::min(delta, delta_max_));
}

double Modulus::alpha() const {
    if (kind_ != ModulusKind::Power && kind_ != ModulusKind::PowerLog)
        throw std::logic_error("Modulus: alpha only defined for power kinds");
    return alpha_;
}

double Modulus::beta() const {
    if (kind_ != ModulusKind::PowerLog)
        throw std::logic_error("Modulus: beta only defined for power-log kind");
    return beta_;
}

void Modulus::validate_and_flag() {
    auto w = [&](double d) { return eval_kind(kind_, alpha_, beta_, samples_, fn_, d); };

    if (std::abs(w(0.0)) > 1e-12)
        throw InvariantViolation("Modulus: w(0) != 0");

    // Monotone, nonnegative on a grid.
    const int grid = 256;
    double prev = 0.0;
    for (int i = 1; i <= grid; ++i) {
        double d = delta_max_ * i / grid;
        double v = w(d);
        if (!(v >= prev - 1e-12 * std::max(1.0, std::abs(prev))))
            throw InvariantViolation("Modulus: not nondecreasing on sample grid");
        prev = v;
    }

    // Dyadic doubling check w(2d) < 2 w(d).
    doubling_ = true;
    for (int k = 1; k <= 40; ++k) {
        double d = delta_max_ * std::ldexp(1.0, -k);
        double lhs = w(2.0 * d), rhs = 2.0 * w(d);
        if (!(lhs < rhs)) {
            doubling_ = false;
            break;
        }
    }
}

Modulus Modulus::power(double alpha, double delta_max) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("Modulus::power: alpha must be in (0, 1]");
    if (!(delta_max > 0.0)) throw std::invalid_argument("Modulus: delta_max must be > 0");
    Modulus m;
    m.kind_ = ModulusKind::Power;
    m.alpha_ = alpha;
    m.delta_max_ = delta_max;
    m.validate_and_flag();
    return m;
}

Modulus Modulus::power_log(double alpha, double beta, double delta_max) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("Modulus::power_log: alpha must be in [0, 1]");
    if (!(delta_max > 0.0) || delta_max > 1.0)
        throw std::invalid_argument("Modulus::power_log: needs delta_max in (0, 1]");
    Modulus m;
    m.kind_ = ModulusKind::PowerLog;
    m.alpha_ = alpha;
    m.beta_ = beta;
    m.delta_max_ = delta_max;
    m.validate_and_flag();
    return m;
}

Modulus Modulus::table(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw std::invalid_argument("Modulus::table: need >= 2 samples");
    if (samples.front().first != 0.0 || samples.front().second != 0.0)
        throw std::invalid_argument("Modulus::table: first sample must be (0, 0)");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("Modulus::table: deltas must strictly increase");
        if (!(samples[i].second >= samples[i - 1].second))
            throw InvariantViolation("Modulus::table: values must be nondecreasing");
    }
    Modulus m;
    m.kind_ = ModulusKind::Table;
    m.delta_max_ = samples.back().first;
    m.samples_ = std::move(samples);
    m.validate_and_flag();
    return m;
}

Modulus Modulus::analytic(std::function<double(double)> f, double delta_max, std::string label) {
    if (!(delta_max > 0.0)) throw std::invalid_argument("Modulus: delta_max must be > 0");
    Modulus m;
    m.kind_ = ModulusKind::Analytic;
    m.delta_max_ = delta_max;
    m.fn_ = std::move(f);
    m.label_ = std::move(label);
    m.validate_and_flag();
    return m;
}

nlohmann::json Modulus::to_json() const {
    nlohmann::json j;
    switch (kind_) {
    case ModulusKind::Power:
        j = {{"kind", "power"}, {"alpha", alpha_}};
        break;
    case ModulusKind::PowerLog:
        j = {{"kind", "power-log"}, {"alpha", alpha_}, {"beta", beta_}};
        break;
    case ModulusKind::Table: {
        j["kind"] = "table";
        auto& arr = j["samples"] = nlohmann::json::array();
        for (const auto& [d, w] : samples_) arr.push_back({d, w});
        break;
    }
    case ModulusKind::Analytic:
        throw std::logic_error("Modulus: analytic kind is not serializable");
    }
    j["delta_max"] = delta_max_;
    return j;
}

Modulus Modulus::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double dmax = j.value("delta_max", 1.0);
    if (kind == "power") return power(j.at("alpha").get<double>(), dmax);
    if (kind == "power-log")
        return power_log(j.at("alpha").get<double>(), j.at("beta").get<double>(), dmax);
    if (kind == "table") {
        std::vector<std::pair<double, double>> samples;
        for (const auto& row : j.at("samples"))
            samples.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return table(std::move(samples));
    }
    throw ConfigError("Modulus: unknown kind '" + kind + "'");
}

ChiMap::ChiMap(Modulus m) : base_(std::move(m)) {
    const int grid = 256;
    double prev = 0.0;
    for (int i = 1; i <= grid; ++i) {
        double d = base_.delta_max() * i / grid;
        double c = chi(d);
        if (base_(d) > 0.0 && !(c > prev))
            throw InvariantViolation("ChiMap: chi is not strictly increasing");
        prev = c;
    }
}

double ChiMap::chi(double delta) const { return delta * base_(delta); }

double ChiMap::inverse(double y) const {
    if (!(y > 0.0)) throw std::out_of_range("ChiMap::inverse: y must be positive");
    const double hi0 = base_.delta_max();
    if (y > chi(hi0) * (1.0 + 1e-12))
        throw std::out_of_range("ChiMap::inverse: y above chi(delta_max)");
    double lo = 0.0, hi = hi0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (chi(mid) < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-10 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double theorem2_integral(const Modulus& m, int n, double p, double eps) {
    if (n < 2) throw std::invalid_argument("theorem2_integral: n >= 2 required");
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("theorem2_integral: p in (1,2)");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("theorem2_integral: eps in (0,1)");
    if (m.delta_max() < 1.0)
        throw std::domain_error("theorem2_integral: modulus must be defined up to 1");

    const double a = n * (p - 1.0) - 1.0, b = static_cast<double>(n) - p;
    auto integrand = [&](double d) {
        double w = m(d);
        if (!(w > 0.0))
            throw InvariantViolation("theorem2_integral: modulus vanishes inside (eps, 1)");
        return std::pow(d, a) / std::pow(w, b);
    };
    return composite_gauss_log(integrand, eps, 1.0, 6, 12);
}

double lemma2_dual_integral(const ChiMap& c, int n, double p, double lambda_max) {
    if (n < 2) throw std::invalid_argument("lemma2_dual_integral: n >= 2 required");
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("lemma2_dual_integral: p in (1,2)");
    const double lo = 1.0 / c.chi(1.0);
    if (!(lambda_max > lo) || !std::isfinite(lambda_max))
        throw std::invalid_argument("lemma2_dual_integral: Lambda must be finite and > 1/chi(1)");

    const double a = n - 1.0 - p, b = (n - 1.0) * p;
    auto integrand = [&](double lam) {
        return std::pow(lam, a) * std::pow(c.inverse(1.0 / lam), b);
    };
    return composite_gauss_log(integrand, lo, lambda_max, 8, 12);
}

double critical_exponent_power(int n, double alpha) {
    if (n < 2) throw std::invalid_argument("critical_exponent_power: n >= 2 required");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("critical_exponent_power: alpha in (0, 1]");
    return 1.0 + (n - 1.0) * alpha / (n + alpha);
}

double theta_p(const ChiMap& c, double p, double y) {
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("theta_p: p in (1,2)");
    if (!(y > 1.0)) throw std::invalid_argument("theta_p: y > 1 required");
    auto integrand = [&](double tau) { return std::pow(c.inverse(1.0 / tau), p); };
    double val = composite_gauss_log(integrand, 1.0, y, 8, 12);
    return std::pow(val, 1.0 / p);
}

Modulus regularize_modulus(const Modulus& m) {
    const double dmax = m.delta_max();
    {
        double probe = m(dmax);
        if (!(probe > 0.0))
            throw std::invalid_argument("regularize_modulus: w must be positive on (0, delta_max]");
    }
    auto star = [m](double d) {
        if (d == 0.0) return 0.0;
        // inf over a geometric grid reaching 2^-40 below d; the ratio w(x)/x
        // blows up toward 0 for any admissible w, so the floor is harmless.
        double inf_ratio = m(d) / d;
        for (int j = 1; j <= 160; ++j) {
            double x = d * std::exp2(-0.25 * j);
            inf_ratio = std::min(inf_ratio, m(x) / x);
        }
        return d / (1.0 + d) + d * inf_ratio;
    };
    return Modulus::analytic(star, dmax, "regularized");
}

IntegralVerdict theorem2_divergence(const Modulus& m, int n, double p) {
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("theorem2_divergence: p in (1,2)");
    const double np = static_cast<double>(n) - p;
    if (m.kind() == ModulusKind::Power || m.kind() == ModulusKind::PowerLog) {
        const double e = n * (p - 1.0) - 1.0 - m.alpha() * np;
        if (e > -1.0 + 1e-12) return IntegralVerdict::Converges;
        if (e < -1.0 - 1e-12) return IntegralVerdict::Diverges;
        // Exactly critical: the log factor decides for power-log.
        if (m.kind() == ModulusKind::PowerLog && m.beta() * np > 1.0)
            return IntegralVerdict::Converges;
        return IntegralVerdict::Diverges;
    }
    const double far = theorem2_integral(m, n, p, 1e-2);
    const double near = theorem2_integral(m, n, p, 1e-8);
    return near > 1e4 * far ? IntegralVerdict::Diverges : IntegralVerdict::Converges;
}

} // namespace indicatrix::moduli
