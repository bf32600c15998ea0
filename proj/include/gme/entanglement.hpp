#pragma once

#include <cmath>

#include "gme/covariance.hpp"

namespace gme {

/// Logarithmic negativity in bits, together with the symplectic spectrum of
/// the partial transpose it was computed from. E_N = 0 iff nu~_minus >= 1/2.
struct NegativityResult {
    double log_negativity = 0.0;
    SymplecticSpectrum pt_spectrum;
};

/// Symplectic spectrum of the partial transpose V^{T_A}. Partial transposition
/// is the reflection p_A -> -p_A, which in the biquadratic invariants only
/// flips the sign of det C.
inline SymplecticSpectrum pt_symplectic_spectrum(const CovarianceMatrix& v,
                                                 double tol = default_physicality_tol) {
    const CovarianceBlocks blocks = block_decompose(v);
    const double delta =
        blocks.A.determinant() + blocks.B.determinant() - 2.0 * blocks.C.determinant();
    return detail::spectrum_from_invariants(delta, v.matrix().determinant(), tol);
}

/// E_N = (1/2) sum_i max(-log2(2|lambda_i|), 0) over the four eigenvalues of
/// sigma^-1 V^{T_A}; the +/- pairing collapses the sum onto the two distinct
/// moduli. For physical states only nu~_minus can fall below 1/2.
inline NegativityResult log_negativity(const CovarianceMatrix& v) {
    const SymplecticSpectrum pt = pt_symplectic_spectrum(v);
    double e = 0.0;
    for (double nu : {pt.nu_plus, pt.nu_minus}) {
        if (nu > 0.0) {
            e += std::max(-std::log2(2.0 * nu), 0.0);
        }
    }
    return {e, pt};
}

/// Simon PPT criterion, necessary and sufficient for 1x1-mode Gaussian states:
/// separable iff the partial transpose is again physical.
inline bool is_separable(const CovarianceMatrix& v, double tol = default_physicality_tol) {
    return pt_symplectic_spectrum(v, tol).nu_minus >= vacuum_variance - tol;
}

}  // namespace gme
