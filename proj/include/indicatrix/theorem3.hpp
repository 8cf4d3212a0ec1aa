#ifndef INDICATRIX_THEOREM3_HPP
#define INDICATRIX_THEOREM3_HPP

#include <vector>

#include "indicatrix/domain.hpp"
#include "indicatrix/profile.hpp"

namespace indicatrix::geometry {

// Stand-in for the extremal profile: phi'(t) = ((b-t)/(b-c)) (1 + eta W(t)),
// renormalized so phi'(c) = 1, with W a lacunary cosine sum whose k-th
// coefficient is m(2^-k) and whose k-th frequency completes 2^k periods on
// the interval. Guarantees phi(c) = 0, phi' > 0 on (c, b), phi'(b) = 0,
// nowhere-linearity, and measured gradient modulus O(m).
//
// depth truncates the sum; wavelengths below (b-c) 2^-depth are dropped, so
// quadratures against the profile need to resolve only that scale.
Profile make_surrogate_profile(const moduli::Modulus& m, double c, double b, double eta,
                               int depth = 20);

struct JunctionReport {
    // Tangent-direction mismatch angles: 4 square corners where consecutive
    // arches meet across a 90-degree turn, then 4 arch apexes where a graph
    // piece meets its mirror copy.
    std::vector<double> corner_mismatch;
    std::vector<double> apex_mismatch;
    double max_mismatch() const;
};

// Square of side 2(b-c) with four rigid copies of W = G u G* u xi glued on
// the outer sides; the boundary is the single closed curve made of the four
// arches. Throws if the profile violates its contract or a junction
// mismatch reaches tol.
DomainSpec build_theorem3_domain(const Profile& profile, double tol);

JunctionReport theorem3_junction_report(const DomainSpec& assembled);

// True when no boundary window of the given arc length is flat: the max
// deviation of the window from its chord must exceed flat_tol everywhere.
bool boundary_has_no_straight_segment(const DomainSpec& assembled, double window_arc = 0.05,
                                      double flat_tol = 1e-10);

} // namespace indicatrix::geometry

#endif
