// Dirac algebra in four spinor dimensions: Minkowski four-vectors, gamma
// matrices, Feynman slash and traces of gamma-matrix products.
//
// Everything downstream only ever looks at traces, so the concrete
// representation is an implementation detail. GammaBasis can be conjugated
// by any unitary to check that nothing depends on it.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace compton {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

/// Contravariant four-vector (t, x, y, z), metric diag(+1, -1, -1, -1).
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr FourVector() = default;
    constexpr FourVector(double t_, double x_, double y_, double z_) : t{t_}, x{x_}, y{y_}, z{z_} {}

    constexpr double operator[](int mu) const {
        switch (mu) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }

    constexpr FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    constexpr FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    constexpr FourVector operator-() const { return {-t, -x, -y, -z}; }
    constexpr FourVector operator*(double s) const { return {s * t, s * x, s * y, s * z}; }
    friend constexpr FourVector operator*(double s, const FourVector& v) { return v * s; }

    constexpr bool operator==(const FourVector&) const = default;
};

/// Minkowski product a.b = a_t b_t - a_x b_x - a_y b_y - a_z b_z.
constexpr double dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Euclidean product of the spatial parts.
constexpr double spatial_dot(const FourVector& a, const FourVector& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Minkowski metric component g^{mu nu}.
constexpr double metric(int mu, int nu) {
    if (mu != nu) return 0.0;
    return mu == 0 ? 1.0 : -1.0;
}

/// A set of four gamma matrices satisfying {g^mu, g^nu} = 2 g^{mu nu} I.
class GammaBasis {
public:
    /// Standard Dirac representation.
    static const GammaBasis& dirac() {
        static const GammaBasis basis = make_dirac();
        return basis;
    }

    /// Unitarily equivalent set U g^mu U^dagger.
    GammaBasis transformed(const Matrix4c& unitary) const {
        if (!(unitary * unitary.adjoint()).isApprox(Matrix4c::Identity(), 1e-12)) {
            throw std::invalid_argument("GammaBasis::transformed: matrix is not unitary");
        }
        GammaBasis out;
        for (int mu = 0; mu < 4; ++mu) out.gamma_[mu] = unitary * gamma_[mu] * unitary.adjoint();
        return out;
    }

    const Matrix4c& operator[](int mu) const { return gamma_.at(static_cast<std::size_t>(mu)); }

    /// g^mu a_mu = a_t g^0 - a_x g^1 - a_y g^2 - a_z g^3.
    Matrix4c slash(const FourVector& a) const {
        return a.t * gamma_[0] - a.x * gamma_[1] - a.y * gamma_[2] - a.z * gamma_[3];
    }

private:
    GammaBasis() = default;

    static GammaBasis make_dirac() {
        const Complex i{0.0, 1.0};
        Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        Eigen::Matrix2cd sx, sy, sz;
        sx << 0, 1, 1, 0;
        sy << 0, -i, i, 0;
        sz << 1, 0, 0, -1;

        GammaBasis b;
        b.gamma_[0].setZero();
        b.gamma_[0].topLeftCorner<2, 2>() = id;
        b.gamma_[0].bottomRightCorner<2, 2>() = -id;
        const std::array<Eigen::Matrix2cd, 3> pauli{sx, sy, sz};
        for (std::size_t k = 0; k < 3; ++k) {
            Matrix4c& g = b.gamma_[k + 1];
            g.setZero();
            g.topRightCorner<2, 2>() = pauli[k];
            g.bottomLeftCorner<2, 2>() = -pauli[k];
        }
        return b;
    }

    std::array<Matrix4c, 4> gamma_{};
};

/// Gamma matrices of the default representation together with the identity.
struct GammaSet {
    Matrix4c g0, g1, g2, g3, identity;
};

inline GammaSet gamma_matrices() {
    const GammaBasis& b = GammaBasis::dirac();
    return {b[0], b[1], b[2], b[3], Matrix4c::Identity()};
}

inline Matrix4c slash(const FourVector& a) { return GammaBasis::dirac().slash(a); }

/// Trace of the left-to-right product of the given matrices.
inline Complex trace_product(std::span<const Matrix4c> ms) {
    if (ms.empty()) throw std::invalid_argument("trace_product: empty product");
    Matrix4c acc = ms.front();
    for (std::size_t k = 1; k < ms.size(); ++k) acc = acc * ms[k];
    return acc.trace();
}

inline Complex trace_product(std::initializer_list<Matrix4c> ms) {
    return trace_product(std::span<const Matrix4c>(ms.begin(), ms.size()));
}

}  // namespace compton
