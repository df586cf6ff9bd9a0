// Polarization density matrices of the scattered photon (basis H, V, Z) and
// of the signal-idler pair (basis signal (x) idler, signal index major).
//
// The angle-resolved matrices carry the large-mass channel products times
// the projections of H' onto H (cos) and Z (sin), in units of e^4. Angular
// integration against dOmega' gives the O(T sigma_t / V) corrections; each
// element (i, j) is then divided by sqrt(N_i N_j), with N_H = 1 + x / 2 for
// H and Z and N_V = 1 + 3x / 2 for V, where x = T sigma_t / V = 5p / 2.

#pragma once

#include "compton/amplitudes.hpp"
#include "compton/kinematics.hpp"
#include "compton/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace compton {

using MatrixXc = Eigen::MatrixXcd;

struct DensityMatrix {
    MatrixXc entries;
    std::vector<std::string> basis;
    /// Trace before the final rescaling to unit trace (1 when unscaled).
    double raw_trace = 1.0;

    int dim() const { return static_cast<int>(entries.rows()); }
};

enum class SinglePol : int { H = 0, V = 1, Z = 2 };

inline const std::vector<std::string>& single_basis() {
    static const std::vector<std::string> b{"H", "V", "Z"};
    return b;
}

/// |H>_S|H>_I, |H>_S|V>_I, |H>_S|Z>_I, |V>_S|H>_I, ... |Z>_S|Z>_I
inline const std::vector<std::string>& pair_basis() {
    static const std::vector<std::string> b{"HH", "HV", "HZ", "VH", "VV", "VZ", "ZH", "ZV", "ZZ"};
    return b;
}

constexpr int pair_index(int signal, int idler) { return 3 * signal + idler; }

/// Where a scattered signal state lands in the pair basis: H and Z carry the
/// idler H, V carries the idler V.
constexpr int pair_index_of_signal(int signal) {
    return signal == static_cast<int>(SinglePol::V) ? pair_index(signal, 1) : pair_index(signal, 0);
}

/// Thomson cross section 8 pi alpha^2 / (3 m^2).
inline double sigma_total(double mass, double alpha) {
    if (!(mass > 0.0)) throw DomainError("sigma_total: mass must be positive");
    return 8.0 * std::numbers::pi * alpha * alpha / (3.0 * mass * mass);
}

/// Angle-resolved weight matrix of the scattered photon (units of e^4).
inline Eigen::Matrix3d single_dm_theta(double theta) {
    check_angle(theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    // Half of each channel product; H' contributes to H with cos and to Z with sin.
    const double hh = 0.5 * thomson_weight(kHtoHprime, kHtoHprime, theta);
    const double vh = 0.5 * thomson_weight(kVtoV, kHtoHprime, theta);
    const double vv = 0.5 * thomson_weight(kVtoV, kVtoV, theta);
    const std::array<double, 3> proj{c, 1.0, s};  // H, V, Z

    Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
    constexpr int H = 0, V = 1, Z = 2;
    w(H, H) = hh * proj[H] * proj[H];
    w(H, Z) = w(Z, H) = hh * proj[H] * proj[Z];
    w(Z, Z) = hh * proj[Z] * proj[Z];
    w(H, V) = w(V, H) = vh * proj[H];
    w(V, V) = vv;
    return w;
}

/// Angle-resolved 9x9 weight matrix of the pair.
inline Eigen::Matrix<double, 9, 9> entangled_dm_theta(double theta) {
    const Eigen::Matrix3d w = single_dm_theta(theta);
    Eigen::Matrix<double, 9, 9> out = Eigen::Matrix<double, 9, 9>::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out(pair_index_of_signal(i), pair_index_of_signal(j)) = w(i, j);
        }
    }
    return out;
}

inline constexpr int kDefaultQuadratureOrder = 64;

/// Coefficients of x = T sigma_t / V in the integrated matrix:
/// (3 / 32 pi) * integral of single_dm_theta over the full solid angle.
/// The normalization makes the V -> V coefficient equal to 3/2.
inline Eigen::Matrix3d exposure_coefficients(int order = kDefaultQuadratureOrder) {
    const GaussLegendreRule rule = gauss_legendre(order);
    const Eigen::Matrix3d integral =
        integrate_solid_angle([](double theta) -> Eigen::Matrix3d { return single_dm_theta(theta); }, rule);
    return (3.0 / (32.0 * std::numbers::pi)) * integral;
}

inline double norm_H(double exposure) { return 1.0 + exposure / 2.0; }
inline double norm_V(double exposure) { return 1.0 + 3.0 * exposure / 2.0; }

namespace detail {

inline double norm_for(int single_index, double exposure) {
    return single_index == static_cast<int>(SinglePol::V) ? norm_V(exposure) : norm_H(exposure);
}

/// Element-wise normalized single-photon matrix including the overall 1/2
/// of the superposition input, before trace rescaling.
inline Eigen::Matrix3d assemble_single(double exposure, int order) {
    if (!(exposure >= 0.0) || !std::isfinite(exposure)) throw DomainError("exposure must be non-negative");
    const Eigen::Matrix3d coeff = exposure_coefficients(order);
    Eigen::Matrix3d zeroth = Eigen::Matrix3d::Zero();
    zeroth.topLeftCorner<2, 2>().setOnes();

    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = 0.5 * (zeroth(i, j) + exposure * coeff(i, j)) /
                      std::sqrt(norm_for(i, exposure) * norm_for(j, exposure));
        }
    }
    return m;
}

inline DensityMatrix finalize(const MatrixXc& m, const std::vector<std::string>& basis) {
    DensityMatrix dm;
    dm.raw_trace = m.trace().real();
    dm.entries = m / dm.raw_trace;
    dm.basis = basis;
    return dm;
}

}  // namespace detail

/// Single-photon reduced density matrix for the exposure x = T sigma_t / V.
inline DensityMatrix integrate_single_dm_exposure(double exposure, int order = kDefaultQuadratureOrder) {
    const Eigen::Matrix3d m = detail::assemble_single(exposure, order);
    return detail::finalize(m.cast<Complex>(), single_basis());
}

/// Single-photon reduced density matrix after one scattering of the
/// superposition (|H> + |V>)/sqrt(2).
inline DensityMatrix integrate_single_dm(const ScatterParams& params, int order = kDefaultQuadratureOrder) {
    params.validate();
    return integrate_single_dm_exposure(exposure_from_strength(params.p), order);
}

inline DensityMatrix integrate_entangled_dm_exposure(double exposure, int order = kDefaultQuadratureOrder) {
    const Eigen::Matrix3d m = detail::assemble_single(exposure, order);
    MatrixXc out = MatrixXc::Zero(9, 9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) out(pair_index_of_signal(i), pair_index_of_signal(j)) = m(i, j);
    }
    return detail::finalize(out, pair_basis());
}

/// Pair density matrix after the signal photon of (|HH> + |VV>)/sqrt(2)
/// scatters.
inline DensityMatrix integrate_entangled_dm(const ScatterParams& params, int order = kDefaultQuadratureOrder) {
    params.validate();
    return integrate_entangled_dm_exposure(exposure_from_strength(params.p), order);
}

/// (|H> + |V>)/sqrt(2) as a density matrix.
inline DensityMatrix initial_single_dm() {
    MatrixXc m = MatrixXc::Zero(3, 3);
    m.topLeftCorner(2, 2).setConstant(0.5);
    return {m, single_basis(), 1.0};
}

/// Bell state (|HH> + |VV>)/sqrt(2).
inline DensityMatrix bell_state_dm() {
    MatrixXc m = MatrixXc::Zero(9, 9);
    for (int a : {0, 4}) {
        for (int b : {0, 4}) m(a, b) = 0.5;
    }
    return {m, pair_basis(), 1.0};
}

/// First-order-in-p single-photon final state
/// 1/2 [[1 - p/2, 1 - 5p/4, 0], [1 - 5p/4, 1, 0], [0, 0, p/2]].
inline DensityMatrix first_order_single_dm(double p) {
    MatrixXc m = MatrixXc::Zero(3, 3);
    m(0, 0) = 0.5 * (1.0 - p / 2.0);
    m(0, 1) = m(1, 0) = 0.5 * (1.0 - 5.0 * p / 4.0);
    m(1, 1) = 0.5;
    m(2, 2) = 0.5 * (p / 2.0);
    return {m, single_basis(), 1.0};
}

inline DensityMatrix first_order_entangled_dm(double p) {
    const DensityMatrix s = first_order_single_dm(p);
    MatrixXc m = MatrixXc::Zero(9, 9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m(pair_index_of_signal(i), pair_index_of_signal(j)) = s.entries(i, j);
    }
    return {m, pair_basis(), 1.0};
}

struct DensityChecks {
    double hermiticity_error = 0.0;  ///< max |rho - rho^dagger|
    double min_eigenvalue = 0.0;
    double trace_error = 0.0;        ///< |Tr rho - 1|

    bool valid(double herm_tol = 1e-12, double eig_tol = 1e-10, double trace_tol = 1e-10) const {
        return hermiticity_error <= herm_tol && min_eigenvalue >= -eig_tol && trace_error <= trace_tol;
    }
};

inline DensityChecks check_density_matrix(const MatrixXc& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw std::invalid_argument("density matrix must be square");
    DensityChecks c;
    c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const MatrixXc herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    c.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    return c;
}

inline DensityChecks check_density_matrix(const DensityMatrix& dm) { return check_density_matrix(dm.entries); }

}  // namespace compton
