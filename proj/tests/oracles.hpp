// Test-only reference computations and random generators. Nothing here
// calls into the code paths it is used to check.

#pragma once

#include "compton/dirac_algebra.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

namespace oracle {

using compton::FourVector;
using MatrixXc = Eigen::MatrixXcd;

inline double mdot(const FourVector& a, const FourVector& b) { return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z; }

/// Tr[a b c d] = 4[(a.b)(c.d) - (a.c)(b.d) + (a.d)(b.c)]
inline double four_slash_trace(const FourVector& a, const FourVector& b, const FourVector& c, const FourVector& d) {
    return 4.0 * (mdot(a, b) * mdot(c, d) - mdot(a, c) * mdot(b, d) + mdot(a, d) * mdot(b, c));
}

/// Adaptive Simpson on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 40) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid);
        const double rm = 0.5 * (mid + hi);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, d - 1) + rec(mid, hi, fmid, frm, fhi, right, d - 1);
    };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), depth);
}

/// Full solid-angle integral of f(theta), as 2 pi int_0^pi f sin(theta) dtheta.
inline double solid_angle_simpson(const std::function<double(double)>& f, double tol = 1e-14) {
    return 2.0 * std::numbers::pi *
           adaptive_simpson([&](double t) { return f(t) * std::sin(t); }, 0.0, std::numbers::pi, tol);
}

/// Eigenvalues (ascending) of the real symmetric 2x2 [[a, c], [c, b]].
inline std::array<double, 2> sym2_eigenvalues(double a, double b, double c) {
    const double mean = 0.5 * (a + b);
    const double r = std::hypot(0.5 * (a - b), c);
    return {mean - r, mean + r};
}

inline FourVector random_vector(std::mt19937_64& rng, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng), u(rng)};
}

inline MatrixXc ginibre(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXc m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    }
    return m;
}

inline MatrixXc random_unitary(std::mt19937_64& rng, int n) {
    Eigen::HouseholderQR<MatrixXc> qr(ginibre(rng, n));
    return qr.householderQ() * MatrixXc::Identity(n, n);
}

/// Random full-rank density matrix G G^dagger / Tr.
inline MatrixXc random_density(std::mt19937_64& rng, int n) {
    const MatrixXc g = ginibre(rng, n);
    const MatrixXc rho = g * g.adjoint();
    return rho / rho.trace();
}

inline MatrixXc random_hermitian(std::mt19937_64& rng, int n) {
    const MatrixXc g = ginibre(rng, n);
    return 0.5 * (g + g.adjoint());
}

/// Gell-Mann matrices lambda_1 ... lambda_8, index 0 holds the identity.
inline std::array<MatrixXc, 9> gell_mann() {
    using C = std::complex<double>;
    const C i{0.0, 1.0};
    std::array<MatrixXc, 9> l;
    for (auto& m : l) m = MatrixXc::Zero(3, 3);
    l[0] = MatrixXc::Identity(3, 3);
    l[1](0, 1) = l[1](1, 0) = 1.0;
    l[2](0, 1) = -i;
    l[2](1, 0) = i;
    l[3](0, 0) = 1.0;
    l[3](1, 1) = -1.0;
    l[4](0, 2) = l[4](2, 0) = 1.0;
    l[5](0, 2) = -i;
    l[5](2, 0) = i;
    l[6](1, 2) = l[6](2, 1) = 1.0;
    l[7](1, 2) = -i;
    l[7](2, 1) = i;
    l[8](0, 0) = l[8](1, 1) = 1.0 / std::sqrt(3.0);
    l[8](2, 2) = -2.0 / std::sqrt(3.0);
    return l;
}

/// Coefficients c_n with K = sum_n c_n lambda_n (lambda_0 = I).
inline std::array<std::complex<double>, 9> gell_mann_coefficients(const MatrixXc& k) {
    const auto l = gell_mann();
    std::array<std::complex<double>, 9> c{};
    c[0] = k.trace() / 3.0;
    for (int n = 1; n < 9; ++n) c[static_cast<std::size_t>(n)] = (l[static_cast<std::size_t>(n)] * k).trace() / 2.0;
    return c;
}

}  // namespace oracle
