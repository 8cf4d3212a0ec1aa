#include "indicatrix/bessel.hpp"

#include <cmath>

namespace indicatrix {

namespace {

double j1_series(double x) {
    // (x/2) * sum_k (-1)^k (x^2/4)^k / (k! (k+1)!)
    const double q = 0.25 * x * x;
    double term = 0.5 * x;
    double sum = term;
    for (int k = 1; k <= 40; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double j1_asymptotic(double x) {
    // Hankel expansion with mu = 4: coefficients a_m generated on the fly,
    // summed until they stop decreasing.
    const double mu = 4.0;
    double p = 1.0, q = 0.0;
    double a = 1.0;
    double prev = 1.0;
    for (int m = 1; m <= 30; ++m) {
        const double odd = 2.0 * m - 1.0;
        a *= (mu - odd * odd) / (8.0 * m * x);
        if (std::abs(a) >= prev) break;
        prev = std::abs(a);
        const int phase = (m / 2) % 2 ? -1 : 1; // (-1)^{floor(m/2)}
        if (m % 2 == 0)
            p += phase * a;
        else
            q += phase * a;
    }
    const double w = x - 0.75 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(w) - q * std::sin(w));
}

} // namespace

double bessel_j1(double x) {
    if (x < 0.0) return -bessel_j1(-x);
    return x <= 12.0 ? j1_series(x) : j1_asymptotic(x);
}

} // namespace indicatrix
