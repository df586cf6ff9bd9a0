// Kraus representation of the polarization channel of Compton scattering,
// its bipartite extension, and Kraus extraction from an arbitrary channel
// action through the Choi matrix.

#pragma once

#include "compton/density_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace compton {

class NotCompletelyPositiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operator norm of sum_i K_i^dagger K_i - I.
inline double completeness_defect(const std::vector<MatrixXc>& ops, int dim) {
    MatrixXc acc = -MatrixXc::Identity(dim, dim);
    for (const auto& k : ops) acc += k.adjoint() * k;
    const MatrixXc herm = 0.5 * (acc + acc.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

class KrausSet {
public:
    KrausSet(int dim, std::vector<MatrixXc> operators) : dim_{dim}, operators_{std::move(operators)} {
        if (dim_ <= 0) throw std::invalid_argument("KrausSet: dimension must be positive");
        if (operators_.empty()) throw std::invalid_argument("KrausSet: no operators");
        for (const auto& k : operators_) {
            if (k.rows() != dim_ || k.cols() != dim_) throw std::invalid_argument("KrausSet: operator dimension mismatch");
        }
        defect_ = compton::completeness_defect(operators_, dim_);
    }

    int dim() const { return dim_; }
    const std::vector<MatrixXc>& operators() const { return operators_; }
    std::size_t size() const { return operators_.size(); }
    const MatrixXc& operator[](std::size_t i) const { return operators_.at(i); }
    double completeness_defect() const { return defect_; }

    /// Trace preserving within tol.
    bool valid(double tol = 1e-12) const { return defect_ <= tol; }

private:
    int dim_;
    std::vector<MatrixXc> operators_;
    double defect_ = 0.0;
};

/// Upper bound (exclusive) on p keeping b = (1 - 5p/4) / sqrt(1 - p/2) in (0, 1].
inline constexpr double kKrausMaxStrength = 0.8;

struct KrausParameters {
    double a = 0.0;  ///< p / 2
    double b = 1.0;  ///< (1 - 5p/4) / sqrt(1 - p/2)
};

inline KrausParameters kraus_parameters(double p) {
    if (!(p >= 0.0 && p < kKrausMaxStrength)) {
        throw DomainError("kraus_from_p: p must lie in [0, 0.8), got " + std::to_string(p));
    }
    return {p / 2.0, (1.0 - 5.0 * p / 4.0) / std::sqrt(1.0 - p / 2.0)};
}

/// K0 = diag(sqrt(1-a), b, sqrt(1-a)), K1 = sqrt(a) (|H><Z| + |Z><H|),
/// K2 = sqrt(1-b^2) |V><V|.
inline KrausSet kraus_from_p(double p) {
    const auto [a, b] = kraus_parameters(p);
    MatrixXc k0 = MatrixXc::Zero(3, 3);
    MatrixXc k1 = MatrixXc::Zero(3, 3);
    MatrixXc k2 = MatrixXc::Zero(3, 3);
    k0(0, 0) = std::sqrt(1.0 - a);
    k0(1, 1) = b;
    k0(2, 2) = std::sqrt(1.0 - a);
    k1(0, 2) = k1(2, 0) = std::sqrt(a);
    k2(1, 1) = std::sqrt(std::max(0.0, 1.0 - b * b));
    return KrausSet(3, {k0, k1, k2});
}

/// The O(p) form sqrt(2p / (1 - p/2)) of the K2 entry.
inline double kraus_k2_first_order(double p) { return std::sqrt(2.0 * p / (1.0 - p / 2.0)); }

inline MatrixXc apply_kraus(const KrausSet& ks, const MatrixXc& rho) {
    if (rho.rows() != ks.dim() || rho.cols() != ks.dim()) {
        throw std::invalid_argument("apply_channel: dimension mismatch (channel " + std::to_string(ks.dim()) +
                                    ", state " + std::to_string(rho.rows()) + ")");
    }
    MatrixXc out = MatrixXc::Zero(ks.dim(), ks.dim());
    for (const auto& k : ks.operators()) out += k * rho * k.adjoint();
    return out;
}

/// sum_i K_i rho K_i^dagger
inline DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho) {
    return {apply_kraus(ks, rho.entries), rho.basis, rho.raw_trace};
}

inline MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// {K_i (x) I_3} acting on the signal factor of the pair basis.
inline KrausSet extend_to_bipartite(const KrausSet& ks) {
    if (ks.dim() != 3) throw std::invalid_argument("extend_to_bipartite: expected a qutrit channel");
    const MatrixXc id = MatrixXc::Identity(3, 3);
    std::vector<MatrixXc> ops;
    ops.reserve(ks.size());
    for (const auto& k : ks.operators()) ops.push_back(kron(k, id));
    return KrausSet(9, std::move(ops));
}

/// Linear map on dim x dim matrices.
using ChannelAction = std::function<MatrixXc(const MatrixXc&)>;

inline ChannelAction action_of(const KrausSet& ks) {
    return [ks](const MatrixXc& rho) { return apply_kraus(ks, rho); };
}

/// sum_ij |i><j| (x) action(|i><j|)
inline MatrixXc choi_matrix(const ChannelAction& action, int dim) {
    const Eigen::Index d = dim;
    MatrixXc choi = MatrixXc::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            MatrixXc unit = MatrixXc::Zero(d, d);
            unit(i, j) = 1.0;
            const MatrixXc image = action(unit);
            if (image.rows() != d || image.cols() != d) throw std::invalid_argument("kraus_from_choi: action changes dimension");
            choi.block(i * d, j * d, d, d) = image;
        }
    }
    return choi;
}

struct ChoiTolerances {
    double hermiticity = 1e-10;
    double negative_eigenvalue = 1e-10;
    double discard = 1e-12;
};

/// Kraus operators from the eigendecomposition of the Choi matrix.
/// Eigenvalues are taken in descending order; each eigenvector is rotated so
/// that its first component with magnitude above 1e-12 is real positive.
/// A returned set with valid(1e-10) == false describes a channel that is
/// not trace preserving.
inline KrausSet kraus_from_choi(const ChannelAction& action, int dim, const ChoiTolerances& tol = {}) {
    if (dim <= 0) throw std::invalid_argument("kraus_from_choi: dimension must be positive");
    const MatrixXc choi = choi_matrix(action, dim);
    const double herm_err = (choi - choi.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > tol.hermiticity) {
        throw NotCompletelyPositiveError("kraus_from_choi: Choi matrix is not Hermitian (error " +
                                         std::to_string(herm_err) + ")");
    }

    Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (choi + choi.adjoint()));
    const Eigen::VectorXd& evals = es.eigenvalues();
    if (evals.minCoeff() < -tol.negative_eigenvalue) {
        throw NotCompletelyPositiveError("kraus_from_choi: Choi matrix has eigenvalue " +
                                         std::to_string(evals.minCoeff()));
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(evals.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) { return evals(l) > evals(r); });

    std::vector<MatrixXc> ops;
    for (Eigen::Index idx : order) {
        const double lambda = evals(idx);
        if (lambda < tol.discard) continue;
        Eigen::VectorXcd v = es.eigenvectors().col(idx);
        for (Eigen::Index n = 0; n < v.size(); ++n) {
            if (std::abs(v(n)) > 1e-12) {
                v *= std::conj(v(n)) / std::abs(v(n));
                v(n) = std::abs(v(n));
                break;
            }
        }
        // Choi(i*d + k, j*d + l) = sum_a K_a(k, i) conj(K_a(l, j)).
        MatrixXc k(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index r = 0; r < dim; ++r) k(r, i) = std::sqrt(lambda) * v(i * dim + r);
        }
        ops.push_back(std::move(k));
    }
    if (ops.empty()) ops.push_back(MatrixXc::Zero(dim, dim));
    return KrausSet(dim, std::move(ops));
}

}  // namespace compton
