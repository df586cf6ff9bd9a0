// von Neumann entropy, partial traces and mutual information (nats).

#pragma once

#include "compton/density_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace compton {

class NegativeEigenvalueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kEigenvalueErrorThreshold = 1e-8;

struct EntropyReport {
    std::vector<double> eigenvalues;  ///< ascending, negatives clamped to 0
    double entropy_nats = 0.0;
    /// Closed-form small-p value for the same state, NaN when not applicable.
    double expansion_value = std::numeric_limits<double>::quiet_NaN();
    double discrepancy = std::numeric_limits<double>::quiet_NaN();
};

/// -x ln x with 0 ln 0 = 0.
inline double entropy_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

/// S = -sum_j l_j ln l_j over the spectrum of the Hermitian part of rho.
inline EntropyReport von_neumann_entropy(const MatrixXc& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw std::invalid_argument("von_neumann_entropy: not square");
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    EntropyReport rep;
    rep.eigenvalues.reserve(static_cast<std::size_t>(rho.rows()));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        if (l < -kEigenvalueErrorThreshold) {
            throw NegativeEigenvalueError("von_neumann_entropy: eigenvalue " + std::to_string(l) + " below -1e-8");
        }
        rep.eigenvalues.push_back(std::max(l, 0.0));
    }
    for (double l : rep.eigenvalues) rep.entropy_nats += entropy_term(l);
    return rep;
}

inline EntropyReport von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.entries); }

/// -(p/4) ln(p/4) - (1 - 3p/4) ln(1 - 3p/4) - (p/2) ln(p/2)
inline double final_entropy_expansion(double p) {
    return entropy_term(p / 4.0) + entropy_term(1.0 - 3.0 * p / 4.0) + entropy_term(p / 2.0);
}

/// Leading-log form -(3p/4) ln p, valid when -p ln p >> p.
inline double final_entropy_leading_log(double p) { return p > 0.0 ? -0.75 * p * std::log(p) : 0.0; }

/// 2 ln 2 + (p/2) ln p
inline double final_mutual_information_expansion(double p) {
    return 2.0 * std::numbers::ln2 + (p > 0.0 ? 0.5 * p * std::log(p) : 0.0);
}

/// Entropy report with the small-p expansion of the scattered state filled in.
inline EntropyReport final_state_entropy_report(const DensityMatrix& rho, double p) {
    EntropyReport rep = von_neumann_entropy(rho);
    rep.expansion_value = final_entropy_expansion(p);
    rep.discrepancy = std::abs(rep.entropy_nats - rep.expansion_value);
    return rep;
}

enum class Subsystem { signal, idler };

/// Reduced state of one photon of a 9x9 pair density matrix.
inline MatrixXc partial_trace(const MatrixXc& rho, Subsystem keep) {
    if (rho.rows() != 9 || rho.cols() != 9) throw std::invalid_argument("partial_trace: expected a 9x9 matrix");
    MatrixXc out = MatrixXc::Zero(3, 3);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int t = 0; t < 3; ++t) {
                out(a, b) += keep == Subsystem::signal ? rho(pair_index(a, t), pair_index(b, t))
                                                       : rho(pair_index(t, a), pair_index(t, b));
            }
        }
    }
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    if (rho.dim() != 9) throw std::invalid_argument("partial_trace: expected a 9x9 density matrix");
    return {partial_trace(rho.entries, keep), single_basis(), 1.0};
}

/// I(S:I) = S(rho_S) + S(rho_I) - S(rho_SI)
inline double mutual_information(const DensityMatrix& rho) {
    const double s_sig = von_neumann_entropy(partial_trace(rho, Subsystem::signal)).entropy_nats;
    const double s_idl = von_neumann_entropy(partial_trace(rho, Subsystem::idler)).entropy_nats;
    const double s_all = von_neumann_entropy(rho).entropy_nats;
    return s_sig + s_idl - s_all;
}

/// Entropies of the pair, both marginals and the mutual information.
struct InfoBundle {
    double p = 0.0;
    EntropyReport system;
    EntropyReport signal;
    EntropyReport idler;
    double mutual_information = 0.0;
    double mutual_information_expansion = 0.0;
    double initial_mutual_information = 0.0;
};

inline InfoBundle information_bundle(const DensityMatrix& rho_pair, double p) {
    InfoBundle out;
    out.p = p;
    out.system = final_state_entropy_report(rho_pair, p);
    out.signal = von_neumann_entropy(partial_trace(rho_pair, Subsystem::signal));
    // Marginal of the first-order state: diag(1/2 - p/4, 1/2, p/4).
    out.signal.expansion_value = entropy_term(0.5 - p / 4.0) + entropy_term(0.5) + entropy_term(p / 4.0);
    out.signal.discrepancy = std::abs(out.signal.entropy_nats - out.signal.expansion_value);
    out.idler = von_neumann_entropy(partial_trace(rho_pair, Subsystem::idler));
    out.idler.expansion_value = std::numbers::ln2;
    out.idler.discrepancy = std::abs(out.idler.entropy_nats - out.idler.expansion_value);
    out.mutual_information = out.signal.entropy_nats + out.idler.entropy_nats - out.system.entropy_nats;
    out.mutual_information_expansion = final_mutual_information_expansion(p);
    out.initial_mutual_information = mutual_information(bell_state_dm());
    return out;
}

}  // namespace compton
