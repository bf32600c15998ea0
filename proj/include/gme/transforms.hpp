#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <numbers>

#include "gme/covariance.hpp"
#include "gme/errors.hpp"

namespace gme {

using Mat2c = Eigen::Matrix2cd;

/// Chart of the number-conserving mode mixers: the four angles parametrizing
/// a 2x2 unitary U acting on the annihilation operators. theta lives in
/// [0, pi/2], the phases in [0, 2pi).
struct U2Chart {
    double theta = 0.0;
    double phi = 0.0;
    double phi1 = 0.0;  // phi'
    double phi2 = 0.0;  // phi''
};

enum class SymplecticKind { passive, local, general };

/// 4x4 real matrix S with S sigma S^T = sigma, in (qA, pA, qB, pB) ordering.
/// kind = passive additionally means S is orthogonal (a mode mixer);
/// kind = local means block-diagonal over the two modes.
struct SymplecticMatrix {
    Mat4 entries;
    SymplecticKind kind = SymplecticKind::general;
};

inline SymplecticMatrix operator*(const SymplecticMatrix& lhs, const SymplecticMatrix& rhs) {
    SymplecticKind kind = SymplecticKind::general;
    if (lhs.kind == rhs.kind) kind = lhs.kind;
    return {lhs.entries * rhs.entries, kind};
}

/// U(theta, phi, phi', phi'') with sin/cos amplitudes and the dependent phase
/// e^{i(-phi + phi' + phi'' - pi)} in the (1,1) slot.
inline Mat2c u2_matrix(const U2Chart& c) {
    const double st = std::sin(c.theta);
    const double ct = std::cos(c.theta);
    Mat2c u;
    u(0, 0) = st * std::polar(1.0, c.phi);
    u(0, 1) = ct * std::polar(1.0, c.phi1);
    u(1, 0) = ct * std::polar(1.0, c.phi2);
    u(1, 1) = st * std::polar(1.0, -c.phi + c.phi1 + c.phi2 - std::numbers::pi);
    return u;
}

namespace detail {

/// Permutation taking canonical (qA, pA, qB, pB) coordinates to the grouped
/// (qA, qB, pA, pB) layout in which the mixer has the [[X, -Y], [Y, X]] form.
inline const Mat4& grouping_permutation() {
    static const Mat4 p = [] {
        Mat4 m = Mat4::Zero();
        m(0, 0) = 1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 3) = 1.0;
        return m;
    }();
    return p;
}

}  // namespace detail

/// Symplectic image of the mode mixer U = X + iY: built as [[X, -Y], [Y, X]]
/// on grouped coordinates, then conjugated into the canonical ordering.
/// The result is both symplectic and orthogonal.
inline SymplecticMatrix passive_symplectic(const U2Chart& chart) {
    const Mat2c u = u2_matrix(chart);
    const Mat2 x = u.real();
    const Mat2 y = u.imag();
    Mat4 grouped;
    grouped << x, -y, y, x;
    const Mat4& p = detail::grouping_permutation();
    return {p.transpose() * grouped * p, SymplecticKind::passive};
}

/// V' = S V S^T, re-symmetrized.
inline CovarianceMatrix apply(const SymplecticMatrix& s, const CovarianceMatrix& v) {
    return CovarianceMatrix(s.entries * v.matrix() * s.entries.transpose());
}

/// Dimensionless per-mode squeeze factors.
struct LocalSqueezeParams {
    double eta_a = 1.0;
    double eta_b = 1.0;
};

/// diag(sqrt(eta_a), 1/sqrt(eta_a), sqrt(eta_b), 1/sqrt(eta_b)): scales the
/// covariance diagonal as a -> (eta a, a/eta) per mode.
inline SymplecticMatrix local_squeeze(const LocalSqueezeParams& p) {
    if (!(p.eta_a > 0.0) || !(p.eta_b > 0.0)) {
        throw NonPositiveSqueeze("squeeze factors must be > 0");
    }
    Mat4 s = Mat4::Zero();
    s(0, 0) = std::sqrt(p.eta_a);
    s(1, 1) = 1.0 / s(0, 0);
    s(2, 2) = std::sqrt(p.eta_b);
    s(3, 3) = 1.0 / s(2, 2);
    return {s, SymplecticKind::local};
}

namespace detail {

inline Mat2 rotation2(double t) {
    Mat2 r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
}

inline Mat2 squeeze2(double eta) {
    Mat2 s = Mat2::Zero();
    s(0, 0) = std::sqrt(eta);
    s(1, 1) = 1.0 / s(0, 0);
    return s;
}

inline Mat4 block_diag(const Mat2& a, const Mat2& b) {
    Mat4 m = Mat4::Zero();
    m.block<2, 2>(0, 0) = a;
    m.block<2, 2>(2, 2) = b;
    return m;
}

/// Square root of a symmetric positive-definite 2x2 matrix, closed form.
inline Mat2 sqrt_spd2(const Mat2& m) {
    const double d = std::sqrt(m.determinant());
    const double t = std::sqrt(m.trace() + 2.0 * d);
    return (m + d * Mat2::Identity()) / t;
}

}  // namespace detail

/// General element of Sp(2,R) + Sp(2,R) in Euler form: per mode
/// rotation(alpha) . diag(sqrt(eta), 1/sqrt(eta)) . rotation(beta).
inline SymplecticMatrix local_symplectic(double alpha_a, double sq_a, double beta_a,
                                         double alpha_b, double sq_b, double beta_b) {
    if (!(sq_a > 0.0) || !(sq_b > 0.0)) {
        throw NonPositiveSqueeze("squeeze factors must be > 0");
    }
    const Mat2 a = detail::rotation2(alpha_a) * detail::squeeze2(sq_a) * detail::rotation2(beta_a);
    const Mat2 b = detail::rotation2(alpha_b) * detail::squeeze2(sq_b) * detail::rotation2(beta_b);
    return {detail::block_diag(a, b), SymplecticKind::local};
}

struct StandardFormResult {
    StandardFormParams params;
    SymplecticMatrix transform;  // local symplectic L with L V L^T in standard form
};

/// Reduce V to the standard form A = aI, B = bI, C = diag(c+, c-) by local
/// symplectics: first the symmetric det-1 maps sqrt(a) A^{-1/2} (and likewise
/// for B) make the diagonal blocks isotropic, then per-mode rotations realize
/// the singular value decomposition of the correlation block. Conventions:
/// c+ >= 0, |c+| >= |c-|, sign(c+ c-) = sign(det C).
inline StandardFormResult standard_form(const CovarianceMatrix& v,
                                        double tol = default_physicality_tol) {
    if (!is_physical(v, tol)) {
        throw NotPhysical("standard_form requires a physical covariance matrix");
    }
    const CovarianceBlocks blocks = block_decompose(v);
    const double a = std::sqrt(blocks.A.determinant());
    const double b = std::sqrt(blocks.B.determinant());

    const Mat2 sa = std::sqrt(a) * detail::sqrt_spd2(blocks.A).inverse();
    const Mat2 sb = std::sqrt(b) * detail::sqrt_spd2(blocks.B).inverse();
    const Mat2 c1 = sa * blocks.C * sb.transpose();

    Eigen::JacobiSVD<Mat2> svd(c1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat2 u = svd.matrixU();
    Mat2 w = svd.matrixV();
    Eigen::Vector2d s = svd.singularValues();
    if (u.determinant() < 0.0) {
        u.col(1) *= -1.0;
        s(1) *= -1.0;
    }
    if (w.determinant() < 0.0) {
        w.col(1) *= -1.0;
        s(1) *= -1.0;
    }

    const Mat4 l = detail::block_diag(u.transpose() * sa, w.transpose() * sb);
    // +0.0 normalizes a possible -0.0 from the sign flips above
    return {{a, b, s(0) + 0.0, s(1) + 0.0}, {l, SymplecticKind::local}};
}

/// Assemble the standard-form covariance matrix from its four parameters.
inline CovarianceMatrix standard_form_matrix(const StandardFormParams& p) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 1) = p.a;
    m(2, 2) = m(3, 3) = p.b;
    m(0, 2) = m(2, 0) = p.c_plus;
    m(1, 3) = m(3, 1) = p.c_minus;
    return CovarianceMatrix(m);
}

}  // namespace gme
