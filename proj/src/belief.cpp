#include "evim/belief.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evim/errors.hpp"

namespace evim {

Bba Bba::make(double mass_i, double mass_p, double mass_ip) {
    if (!(mass_i >= 0.0) || !(mass_p >= 0.0) || !(mass_ip >= 0.0)) {
        std::ostringstream msg;
        msg << "negative mass in (" << mass_i << ", " << mass_p << ", "
            << mass_ip << ")";
        throw NegativeMass(msg.str());
    }
    const double total = mass_i + mass_p + mass_ip;
    if (std::abs(total - 1.0) > kMassTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "masses sum to " << total << ", expected 1";
        throw NotNormalized(msg.str());
    }
    mass_i /= total;
    mass_p /= total;
    // Remainder goes to the frame so the three components sum to one.
    mass_ip = std::max(0.0, 1.0 - mass_i - mass_p);
    return Bba{mass_i, mass_p, mass_ip};
}

Bba combine_dempster(const Bba &a, const Bba &b) {
    const double k = conflict(a, b);
    if (k > 1.0 - kConflictTolerance) {
        throw TotalConflict("Dempster combination of fully conflicting BBAs");
    }
    const double norm = 1.0 - k;
    // {I}: I∩I, I∩Ω, Ω∩I.  {P}: symmetric.  Ω: Ω∩Ω.
    const double i = (a.mass_i_ * b.mass_i_ + a.mass_i_ * b.mass_ip_ +
                      a.mass_ip_ * b.mass_i_) /
                     norm;
    const double p = (a.mass_p_ * b.mass_p_ + a.mass_p_ * b.mass_ip_ +
                      a.mass_ip_ * b.mass_p_) /
                     norm;
    const double ip = a.mass_ip_ * b.mass_ip_ / norm;
    return Bba{i, p, ip};
}

Pignistic pignistic(const Bba &m) {
    return {m.mass_i() + 0.5 * m.mass_ip(), m.mass_p() + 0.5 * m.mass_ip()};
}

} // namespace evim
