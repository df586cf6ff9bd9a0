// Lab-frame Compton kinematics: photon along +z hits an electron at rest,
// the scattering plane is xz.

#pragma once

#include "compton/dirac_algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace compton {

/// Raised when a physical input is outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Physical inputs of one scattering configuration (natural units).
struct ScatterParams {
    double omega = 1.0;                       ///< incident photon energy
    double mass = 1.0e6;                      ///< electron mass, same units
    double alpha = 1.0 / 137.035999;          ///< fine-structure constant
    double p = 1.0e-3;                        ///< channel strength 2 T sigma_t / 5 V

    /// Upper bound (exclusive) on the channel strength accepted here.
    static constexpr double max_strength = 0.4;

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("ScatterParams: omega must be positive");
        if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("ScatterParams: mass must be positive");
        if (!std::isfinite(alpha)) throw DomainError("ScatterParams: alpha must be finite");
        if (!(p >= 0.0 && p < max_strength)) throw DomainError("ScatterParams: p must lie in [0, 0.4)");
    }
};

/// Channel strength from the exposure T sigma_t / V.
constexpr double strength_from_exposure(double exposure) { return 2.0 * exposure / 5.0; }
constexpr double exposure_from_strength(double p) { return 5.0 * p / 2.0; }

struct EventKinematics {
    double theta = 0.0;
    double omega = 0.0;
    double omega_prime = 0.0;
    double mass = 0.0;

    FourVector k;         ///< incident photon
    FourVector kprime;    ///< scattered photon
    FourVector p_e;       ///< electron at rest
    FourVector pprime_e;  ///< recoil electron
    FourVector eps_H;     ///< in-plane incident polarization
    FourVector eps_V;     ///< polarization normal to the scattering plane
    FourVector eps_Hprime;
};

inline void check_angle(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw DomainError("scattering angle must lie in [0, pi], got " + std::to_string(theta));
    }
}

/// omega' = omega / (1 + omega (1 - cos theta) / m)
inline double scattered_frequency(double omega, double mass, double theta) {
    if (!(omega > 0.0)) throw DomainError("scattered_frequency: omega must be positive");
    if (!(mass > 0.0)) throw DomainError("scattered_frequency: mass must be positive");
    check_angle(theta);
    return omega / (1.0 + omega * (1.0 - std::cos(theta)) / mass);
}

/// Builds all four-vectors for one scattering angle. The scattered photon is
/// on shell, |k'| = omega', and the recoil momentum follows from conservation.
inline EventKinematics build_event(const ScatterParams& params, double theta) {
    EventKinematics ev;
    ev.theta = theta;
    ev.omega = params.omega;
    ev.mass = params.mass;
    ev.omega_prime = scattered_frequency(params.omega, params.mass, theta);

    const double w = params.omega;
    const double wp = ev.omega_prime;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    ev.k = {w, 0.0, 0.0, w};
    ev.kprime = {wp, wp * s, 0.0, wp * c};
    ev.p_e = {params.mass, 0.0, 0.0, 0.0};
    ev.pprime_e = ev.k + ev.p_e - ev.kprime;
    ev.eps_H = {0.0, 1.0, 0.0, 0.0};
    ev.eps_V = {0.0, 0.0, 1.0, 0.0};
    ev.eps_Hprime = {0.0, c, 0.0, -s};
    return ev;
}

}  // namespace compton
