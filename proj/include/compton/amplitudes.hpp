// Spin-summed products M M* of lowest-order Compton amplitudes for fixed
// photon polarizations.
//
// The exact route evaluates the electron-spin sum as a gamma-matrix trace
//
//   e^4 Tr[ A1 (p - m) A2 (p' - m) ],
//   A1 = e1 k' e1' / (2 m w') + e1' k e1 / (2 m w),
//   A2 = e2' k' e2 / (2 m w') + e2 k e2' / (2 m w),
//
// (slashes implied), with e^4 = (4 pi alpha)^2. The Thomson route is the
// large-mass closed form. State normalizations are not applied here.

#pragma once

#include "compton/dirac_algebra.hpp"
#include "compton/kinematics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compton {

class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// e^4 = (4 pi alpha)^2.
constexpr double e4(double alpha) {
    const double e2 = 4.0 * std::numbers::pi * alpha;
    return e2 * e2;
}

enum class InPol { H, V };
enum class OutPol { Hprime, V };

/// One polarization transition of the scattered photon.
struct PolChannel {
    InPol incoming = InPol::V;
    OutPol outgoing = OutPol::V;

    /// H -> V and V -> H' have vanishing amplitude.
    constexpr bool forbidden() const {
        return (incoming == InPol::H) != (outgoing == OutPol::Hprime);
    }

    constexpr bool operator==(const PolChannel&) const = default;
};

inline constexpr PolChannel kVtoV{InPol::V, OutPol::V};
inline constexpr PolChannel kHtoHprime{InPol::H, OutPol::Hprime};
inline constexpr PolChannel kHtoV{InPol::H, OutPol::V};
inline constexpr PolChannel kVtoHprime{InPol::V, OutPol::Hprime};

inline std::string to_string(const PolChannel& ch) {
    std::string s = ch.incoming == InPol::H ? "H" : "V";
    s += "->";
    s += ch.outgoing == OutPol::Hprime ? "H'" : "V";
    return s;
}

/// Spin-summed M(left) M*(right), in absolute units (includes e^4).
struct ChannelSum {
    PolChannel left;
    PolChannel right;
    double value = 0.0;
};

inline const FourVector& incoming_vector(const EventKinematics& ev, InPol pol) {
    return pol == InPol::H ? ev.eps_H : ev.eps_V;
}

inline const FourVector& outgoing_vector(const EventKinematics& ev, OutPol pol) {
    return pol == OutPol::Hprime ? ev.eps_Hprime : ev.eps_V;
}

namespace detail {

/// Complex trace of the spin sum, unscaled by e^4.
inline Complex spin_sum_trace(const EventKinematics& ev, const FourVector& eps1, const FourVector& eps_out1,
                              const FourVector& eps2, const FourVector& eps_out2, const GammaBasis& g) {
    const double m = ev.mass;
    const double d = 2.0 * m * ev.omega;
    const double dp = 2.0 * m * ev.omega_prime;

    const Matrix4c e1 = g.slash(eps1);
    const Matrix4c e1o = g.slash(eps_out1);
    const Matrix4c e2 = g.slash(eps2);
    const Matrix4c e2o = g.slash(eps_out2);
    const Matrix4c k = g.slash(ev.k);
    const Matrix4c kp = g.slash(ev.kprime);
    const Matrix4c id = Matrix4c::Identity();

    const Matrix4c a1 = e1 * kp * e1o / dp + e1o * k * e1 / d;
    const Matrix4c a2 = e2o * kp * e2 / dp + e2 * k * e2o / d;
    const Matrix4c prop_in = g.slash(ev.p_e) - m * id;
    const Matrix4c prop_out = g.slash(ev.pprime_e) - m * id;
    return trace_product({a1, prop_in, a2, prop_out});
}

}  // namespace detail

/// Exact spin-summed product via the gamma-matrix trace. The trace of
/// products of slashed real vectors is real; an imaginary part above
/// 1e-10 of max(|Re|, 8 e^4) signals a broken construction.
inline double mm_trace_exact(const EventKinematics& ev, const FourVector& eps1, const FourVector& eps_out1,
                             const FourVector& eps2, const FourVector& eps_out2, double alpha,
                             const GammaBasis& basis = GammaBasis::dirac()) {
    const Complex tr = detail::spin_sum_trace(ev, eps1, eps_out1, eps2, eps_out2, basis);
    const double scale = std::max(std::abs(tr.real()), 8.0);
    if (std::abs(tr.imag()) > 1e-10 * scale) {
        throw NumericalConsistencyError("mm_trace_exact: trace has imaginary part " + std::to_string(tr.imag()));
    }
    return e4(alpha) * tr.real();
}

inline double mm_trace_exact(const EventKinematics& ev, PolChannel left, PolChannel right, double alpha,
                             const GammaBasis& basis = GammaBasis::dirac()) {
    return mm_trace_exact(ev, incoming_vector(ev, left.incoming), outgoing_vector(ev, left.outgoing),
                          incoming_vector(ev, right.incoming), outgoing_vector(ev, right.outgoing), alpha, basis);
}

/// Large-mass channel product in units of e^4:
/// VV x VV = 8, HH' x HH' = 8 cos^2, VV x HH' = 8 cos, forbidden = 0.
inline double thomson_weight(PolChannel left, PolChannel right, double theta) {
    check_angle(theta);
    if (left.forbidden() || right.forbidden()) return 0.0;
    const double c = std::cos(theta);
    // Amplitude in the Thomson limit is proportional to eps . eps'.
    const double l = left.incoming == InPol::V ? 1.0 : c;
    const double r = right.incoming == InPol::V ? 1.0 : c;
    return 8.0 * l * r;
}

inline double channel_sum_thomson(PolChannel left, PolChannel right, double theta, double alpha) {
    return e4(alpha) * thomson_weight(left, right, theta);
}

/// One of the four traces of the V->V x H->H' interference term.
struct TraceTerm {
    std::string_view label;
    double closed_form = 0.0;
    double oracle = 0.0;
    double scale = 1.0;  ///< natural magnitude 8 m^2 w w'

    double discrepancy() const { return std::abs(closed_form - oracle); }

    /// Agreement relative to max(|closed form|, |oracle|, scale).
    bool agrees(double rel_tol = 1e-9) const {
        return discrepancy() <= rel_tol * std::max({std::abs(closed_form), std::abs(oracle), scale});
    }
};

struct CrossTraceTerms {
    std::array<TraceTerm, 4> terms;
    /// The four hand-evaluated traces combined with their propagator
    /// denominators (units of e^4).
    double closed_form_total = 0.0;
    /// The same interference product from the exact trace (units of e^4).
    double oracle_total = 0.0;
};

/// Finite-mass traces entering M(V->V) M*(H->H'), each with
/// (-p + m) and (-p' + m) propagator factors:
///   1: Tr[V k' V P H' k' H P'] = 8 m^2 w w' c - 8 m w w'^2 s^2
///   2: Tr[V k  V P H  k' H' P'] = 8 m^2 w w' c + 8 m w w'^2 s^2
///   3: Tr[V k' V P H  k  H' P'] = 4[m^2 (w^2 + w'^2) c + m (w + w') w w' s^2 + (w w')^2 (1 - c)^2]
///   4: Tr[V k  V P H' k  H  P'] = 4[m^2 (w^2 + w'^2) c - m (w + w') w w' s^2 + (w w')^2 (1 - c)^2]
/// The closed forms are reported next to the numeric traces; where they
/// disagree the numeric value is authoritative.
inline CrossTraceTerms cross_trace_terms(const EventKinematics& ev, const GammaBasis& g = GammaBasis::dirac()) {
    const double m = ev.mass;
    const double w = ev.omega;
    const double wp = ev.omega_prime;
    const double c = std::cos(ev.theta);
    const double s2 = std::sin(ev.theta) * std::sin(ev.theta);

    const Matrix4c id = Matrix4c::Identity();
    const Matrix4c v = g.slash(ev.eps_V);
    const Matrix4c h = g.slash(ev.eps_H);
    const Matrix4c hp = g.slash(ev.eps_Hprime);
    const Matrix4c k = g.slash(ev.k);
    const Matrix4c kp = g.slash(ev.kprime);
    const Matrix4c prop_in = m * id - g.slash(ev.p_e);
    const Matrix4c prop_out = m * id - g.slash(ev.pprime_e);

    auto tr = [&](const Matrix4c& ka, const Matrix4c& e3, const Matrix4c& kb, const Matrix4c& e4m) {
        return trace_product({v, ka, v, prop_in, e3, kb, e4m, prop_out}).real();
    };

    const double scale = 8.0 * m * m * w * wp;
    CrossTraceTerms out;
    out.terms[0] = {"V k' V | H' k' H", 8.0 * m * m * w * wp * c - 8.0 * m * w * wp * wp * s2, tr(kp, hp, kp, h)};
    out.terms[1] = {"V k V | H k' H'", 8.0 * m * m * w * wp * c + 8.0 * m * w * wp * wp * s2, tr(k, h, kp, hp)};
    out.terms[2] = {"V k' V | H k H'",
                    4.0 * (m * m * (w * w + wp * wp) * c + m * (w + wp) * w * wp * s2 +
                           (w * wp) * (w * wp) * (1.0 - c) * (1.0 - c)),
                    tr(kp, h, k, hp)};
    out.terms[3] = {"V k V | H' k H",
                    4.0 * (m * m * (w * w + wp * wp) * c - m * (w + wp) * w * wp * s2 +
                           (w * wp) * (w * wp) * (1.0 - c) * (1.0 - c)),
                    tr(k, hp, k, h)};

    for (auto& t : out.terms) t.scale = scale;

    const double dd = 4.0 * m * m * w * w;
    const double dpp = 4.0 * m * m * wp * wp;
    const double dmix = 4.0 * m * m * w * wp;
    out.closed_form_total = out.terms[0].closed_form / dpp + out.terms[1].closed_form / dmix +
                            out.terms[2].closed_form / dmix + out.terms[3].closed_form / dd;
    out.oracle_total = detail::spin_sum_trace(ev, ev.eps_V, ev.eps_V, ev.eps_H, ev.eps_Hprime, g).real();
    return out;
}

}  // namespace compton
