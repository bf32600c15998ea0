#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "gme/errors.hpp"

namespace gme {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

/// Natural units, hbar = 1: vacuum variance per quadrature is 1/2 and the
/// Heisenberg condition reads V >= (i/2) sigma, i.e. nu_min >= 1/2.
inline constexpr double vacuum_variance = 0.5;

inline constexpr double default_physicality_tol = 1e-9;
inline constexpr double default_purity_tol = 1e-8;

/// Symplectic unity for two modes in (qA, pA, qB, pB) ordering.
inline const Mat4& symplectic_form() {
    static const Mat4 sigma = [] {
        Mat4 s = Mat4::Zero();
        s(0, 1) = 1.0;
        s(1, 0) = -1.0;
        s(2, 3) = 1.0;
        s(3, 2) = -1.0;
        return s;
    }();
    return sigma;
}

/// The two non-negative symplectic eigenvalues, in descending order.
struct SymplecticSpectrum {
    double nu_plus = 0.0;
    double nu_minus = 0.0;
};

/// Parameters (a, b, c+, c-) of the standard form: A = aI, B = bI, C = diag(c+, c-),
/// with |c+| >= |c-|, c+ >= 0 and sign(c+ c-) = sign(det C).
struct StandardFormParams {
    double a = 0.0;
    double b = 0.0;
    double c_plus = 0.0;
    double c_minus = 0.0;
};

/// 4x4 real symmetric covariance matrix of a zero-mean two-mode Gaussian state.
/// Storage ordering is (qA, pA, qB, pB) everywhere. The constructor symmetrizes
/// its argument, which also kills roundoff drift from S V S^T products; use
/// make_covariance to validate untrusted input instead.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(const Mat4& m) : m_((m + m.transpose()) / 2.0) {}

    const Mat4& matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Mat4 m_;
};

/// Validation gate for raw input: rejects non-finite entries and asymmetry
/// beyond tol, returns the symmetrized matrix otherwise.
inline CovarianceMatrix make_covariance(const Mat4& raw, double tol = 1e-9) {
    if (!raw.allFinite()) {
        throw NonFiniteEntry("covariance matrix has NaN or infinite entries");
    }
    const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        throw AsymmetricInput("covariance matrix asymmetry " + std::to_string(asym) +
                              " exceeds tolerance " + std::to_string(tol));
    }
    return CovarianceMatrix(raw);
}

/// A (mode A), B (mode B) and the correlation block C of V = [[A, C], [C^T, B]].
struct CovarianceBlocks {
    Mat2 A;
    Mat2 B;
    Mat2 C;
};

inline CovarianceBlocks block_decompose(const CovarianceMatrix& v) {
    const Mat4& m = v.matrix();
    return {m.block<2, 2>(0, 0), m.block<2, 2>(2, 2), m.block<2, 2>(0, 2)};
}

namespace detail {

/// Roots of nu^4 - delta nu^2 + det V = 0 for delta = det A + det B ± 2 det C.
/// The same biquadratic serves the ordinary and the partially transposed
/// spectrum; partial transposition only flips the sign of det C.
///
/// Pure states make the discriminant identically zero, where its ~eps-scale
/// roundoff would amplify through the square root to ~1e-8 in nu. A
/// discriminant below the roundoff noise floor of the determinant products
/// is therefore deflated to an exact degeneracy; splittings that small are
/// not resolvable from double-precision input anyway.
inline SymplecticSpectrum spectrum_from_invariants(double delta, double det_v, double tol) {
    double disc = delta * delta - 4.0 * det_v;
    if (disc < -tol) {
        throw ComplexSpectrum("symplectic spectrum is complex (disc = " + std::to_string(disc) + ")");
    }
    const double noise = 1e-12 * (delta * delta + 4.0 * std::abs(det_v));
    if (disc <= noise) disc = 0.0;
    const double root = std::sqrt(disc);
    const double hi = std::max((delta + root) / 2.0, 0.0);
    const double lo = std::max((delta - root) / 2.0, 0.0);
    return {std::sqrt(hi), std::sqrt(lo)};
}

inline bool positive_definite(const Mat4& m) {
    // Sylvester's criterion on the leading principal minors.
    if (m(0, 0) <= 0.0) return false;
    if (m.topLeftCorner<2, 2>().determinant() <= 0.0) return false;
    if (m.topLeftCorner<3, 3>().determinant() <= 0.0) return false;
    return m.determinant() > 0.0;
}

}  // namespace detail

/// Symplectic eigenvalues of V, i.e. the moduli of the eigenvalues of
/// sigma^-1 V, via the closed biquadratic form.
inline SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& v,
                                              double tol = default_physicality_tol) {
    const CovarianceBlocks blocks = block_decompose(v);
    const double delta =
        blocks.A.determinant() + blocks.B.determinant() + 2.0 * blocks.C.determinant();
    return detail::spectrum_from_invariants(delta, v.matrix().determinant(), tol);
}

/// Heisenberg condition V >= (i/2) sigma: positive definite and nu_min >= 1/2 - tol.
inline bool is_physical(const CovarianceMatrix& v, double tol = default_physicality_tol) {
    if (!detail::positive_definite(v.matrix())) return false;
    try {
        return symplectic_spectrum(v, tol).nu_minus >= vacuum_variance - tol;
    } catch (const ComplexSpectrum&) {
        return false;
    }
}

/// Pure states saturate the uncertainty relation: both symplectic eigenvalues
/// equal 1/2, equivalently det V = 1/16.
inline bool is_pure(const CovarianceMatrix& v, double tol = default_purity_tol) {
    return std::abs(v.matrix().determinant() - 1.0 / 16.0) <= tol;
}

/// Zero-mean Gaussian Wigner density W(x) = exp(-x^T V^-1 x / 2) / (4 pi^2 sqrt(det V)).
inline double wigner_density(const CovarianceMatrix& v, const Vec4& x) {
    const double det_v = v.matrix().determinant();
    if (det_v <= 0.0) {
        throw SingularCovariance("det V = " + std::to_string(det_v) + " <= 0");
    }
    const double quad = x.dot(v.matrix().inverse() * x);
    const double norm = 4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(det_v);
    return std::exp(-0.5 * quad) / norm;
}

}  // namespace gme
