#pragma once

// Belief functions over the two-element frame {I, P}
// (I: influencer, P: passive).

namespace evim {

/// Basic belief assignment on {I, P}. The empty set always carries zero mass.
class Bba {
  public:
    /// Vacuous assignment: all mass on {I, P}.
    constexpr Bba() = default;

    /// Validates and builds an assignment. Inputs must be non-negative and
    /// sum to one within 1e-9; the result is renormalized exactly.
    /// Throws NegativeMass or NotNormalized.
    static Bba make(double mass_i, double mass_p, double mass_ip);

    static constexpr Bba vacuous() { return Bba{}; }

    constexpr double mass_i() const { return mass_i_; }
    constexpr double mass_p() const { return mass_p_; }
    constexpr double mass_ip() const { return mass_ip_; }

    friend constexpr bool operator==(const Bba &, const Bba &) = default;

  private:
    constexpr Bba(double i, double p, double ip)
        : mass_i_(i), mass_p_(p), mass_ip_(ip) {}

    double mass_i_ = 0.0;
    double mass_p_ = 0.0;
    double mass_ip_ = 1.0;

    friend Bba combine_dempster(const Bba &, const Bba &);
};

inline constexpr double kMassTolerance = 1e-9;
inline constexpr double kConflictTolerance = 1e-12;

/// Conflict mass m1(I)m2(P) + m1(P)m2(I) that Dempster's rule discards.
constexpr double conflict(const Bba &a, const Bba &b) {
    return a.mass_i() * b.mass_p() + a.mass_p() * b.mass_i();
}

/// Dempster's rule of combination. Throws TotalConflict when the conflict
/// exceeds 1 - 1e-12.
Bba combine_dempster(const Bba &a, const Bba &b);

struct Pignistic {
    double betp_i;
    double betp_p;
};

Pignistic pignistic(const Bba &m);

} // namespace evim
