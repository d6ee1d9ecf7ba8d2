#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "predet/errors.hpp"

namespace predet {

using Cplx = std::complex<double>;

// Dense square complex matrix, the carrier for representations, defects and
// logs. All operations below are value-semantic: inputs are never mutated.
using Mat = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class TraceKind {
    Normalized,    // Tr/dim, trace of the identity is 1
    Unnormalized,  // Tr, trace of the identity is dim
};

const char* trace_kind_name(TraceKind kind);

// Largest singular value. Throws InvalidInput on non-finite entries or
// non-square input.
double op_norm(const Mat& m);

// Unnormalized Schatten p-norm (sum sigma_i^p)^(1/p) for p in (1, inf];
// p = inf is the operator norm. p <= 1 -> UnsupportedExponent.
double schatten_norm(const Mat& m, double p);

// Sum of diagonal entries, divided by dim for the normalized kind.
Cplx trace(const Mat& m, TraceKind kind);

// Matrix log by the power series centered at the identity,
// log(u) = -sum_k (1-u)^k / k. Requires op_norm(u - I) < 1, otherwise
// OutsideLogDomain. Terms are accumulated until their norm drops below 1e-17.
Mat log_near_identity(const Mat& u);

// Principal log of a unitary: diagonalize (unitary => normal) and take
// log(e^{i theta}) = i theta with theta in (-pi, pi). Eigenvalues within
// 1e-10 of -1 are refused (BranchCut) rather than silently rotated, since a
// wrong branch corrupts the quantized invariants built on top of this.
Mat unitary_log(const Mat& u);

// Haar-distributed unitary via QR of a complex Gaussian with the R-diagonal
// phase fix. Deterministic per (dim, seed).
Mat random_unitary(int dim, std::uint64_t seed);

// Rank-r orthogonal projection w diag(1_r, 0) w* with w Haar as above.
Mat random_projection(int dim, int rank, std::uint64_t seed);

// --- helpers shared across modules ---

// ||u* u - I|| as an operator norm; cheap unitarity measure.
double unitarity_defect(const Mat& u);

// Exponential of a skew-Hermitian matrix through the Hermitian
// eigendecomposition of -iK; the result is unitary to machine precision.
Mat exp_skew_hermitian(const Mat& k);

// General matrix exponential by scaling-and-squaring with a Taylor kernel.
// Independent of both log routes, so the exp/log round trips exercised by
// the check suites compare genuinely different algorithms.
Mat expm(const Mat& m);

// Principal square root of a unitary (no eigenvalue at -1).
Mat principal_unitary_sqrt(const Mat& u);

// Inverse through partial-pivot LU; throws InvalidInput when the matrix is
// singular to working precision.
Mat inverse(const Mat& m);

// Integer matrix power with LU inverse for negative exponents.
Mat matrix_power(const Mat& m, long long e);

}  // namespace predet
