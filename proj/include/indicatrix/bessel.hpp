#ifndef INDICATRIX_BESSEL_HPP
#define INDICATRIX_BESSEL_HPP

namespace indicatrix {

// J1 by power series for |x| <= 12 and the Hankel large-argument expansion
// beyond; the seam agrees with the series to ~1e-11.
double bessel_j1(double x);

} // namespace indicatrix

#endif
