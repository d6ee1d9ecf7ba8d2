#include "predet/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "predet/rng.hpp"

namespace predet {

namespace {

void require_square_finite(const Mat& m, const char* who) {
    if (m.rows() == 0 || m.rows() != m.cols())
        fail(ErrorKind::InvalidInput, std::string(who) + ": matrix must be square and nonempty");
    if (!m.allFinite())
        fail(ErrorKind::InvalidInput, std::string(who) + ": matrix has non-finite entries");
}

// Singular values through the Hermitian eigenproblem of m* m. Accurate for
// the large singular values, which is all the norms here need; callers that
// must resolve sigma_min near zero (path invertibility) use a dedicated SVD.
Eigen::VectorXd singular_values(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = std::sqrt(std::max(vals[i], 0.0));
    std::sort(vals.data(), vals.data() + vals.size(), std::greater<double>());
    return vals;
}

}  // namespace

const char* trace_kind_name(TraceKind kind) {
    return kind == TraceKind::Normalized ? "normalized" : "unnormalized";
}

double op_norm(const Mat& m) {
    require_square_finite(m, "op_norm");
    if (m.rows() == 1) return std::abs(m(0, 0));
    Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double schatten_norm(const Mat& m, double p) {
    require_square_finite(m, "schatten_norm");
    if (p <= 1.0)
        fail(ErrorKind::UnsupportedExponent, "schatten_norm: p must lie in (1, inf]");
    if (std::isinf(p)) return op_norm(m);
    if (p == 2.0) return m.norm();  // Frobenius equals Schatten-2
    Eigen::VectorXd sv = singular_values(m);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) sum += std::pow(sv[i], p);
    return std::pow(sum, 1.0 / p);
}

Cplx trace(const Mat& m, TraceKind kind) {
    require_square_finite(m, "trace");
    Cplx t = m.trace();
    return kind == TraceKind::Normalized ? t / static_cast<double>(m.rows()) : t;
}

Mat log_near_identity(const Mat& u) {
    require_square_finite(u, "log_near_identity");
    const Mat x = Mat::Identity(u.rows(), u.cols()) - u;
    double dist = op_norm(x);
    if (dist >= 1.0)
        fail(ErrorKind::OutsideLogDomain,
             "log_near_identity: ||u - I|| = " + std::to_string(dist) + " >= 1");
    Mat result = Mat::Zero(u.rows(), u.cols());
    Mat power = Mat::Identity(u.rows(), u.cols());
    for (long k = 1; k <= 100000; ++k) {
        power = power * x;
        Mat term = power / static_cast<double>(k);
        result -= term;
        if (term.norm() < 1e-17) return result;
    }
    fail(ErrorKind::ConsistencyFailure, "log_near_identity: series did not converge");
}

double unitarity_defect(const Mat& u) {
    require_square_finite(u, "unitarity_defect");
    return op_norm(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

Mat unitary_log(const Mat& u) {
    require_square_finite(u, "unitary_log");
    double defect = unitarity_defect(u);
    if (defect >= 1e-8)
        fail(ErrorKind::NotUnitary,
             "unitary_log: ||u*u - I|| = " + std::to_string(defect));
    // Unitary implies normal, so the Schur form is diagonal up to roundoff
    // and Q is an exactly unitary change of basis.
    Eigen::ComplexSchur<Mat> schur(u, true);
    const Mat& q = schur.matrixU();
    Eigen::VectorXcd logs(u.rows());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        Cplx lambda = schur.matrixT()(i, i);
        if (std::abs(lambda + 1.0) < 1e-10)
            fail(ErrorKind::BranchCut,
                 "unitary_log: eigenvalue at -1, principal branch is ambiguous");
        logs[i] = Cplx(std::log(std::abs(lambda)), std::arg(lambda));
    }
    return q * logs.asDiagonal() * q.adjoint();
}

Mat random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) fail(ErrorKind::InvalidInput, "random_unitary: dim must be >= 1");
    Rng rng(seed);
    Mat g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    // Phase-correct with the R diagonal so the distribution is Haar, not
    // merely orthonormal-column.
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i) {
        Cplx r = qr.matrixQR()(i, i);
        double a = std::abs(r);
        phases[i] = a > 0.0 ? r / a : Cplx(1.0, 0.0);
    }
    return q * phases.asDiagonal();
}

Mat random_projection(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) fail(ErrorKind::InvalidInput, "random_projection: dim must be >= 1");
    if (rank < 0 || rank > dim)
        fail(ErrorKind::InvalidInput, "random_projection: rank out of [0, dim]");
    Mat w = random_unitary(dim, seed);
    Mat d = Mat::Zero(dim, dim);
    for (int i = 0; i < rank; ++i) d(i, i) = 1.0;
    return w * d * w.adjoint();
}

Mat exp_skew_hermitian(const Mat& k) {
    require_square_finite(k, "exp_skew_hermitian");
    double skew_defect = op_norm(k + k.adjoint());
    if (skew_defect > 1e-10 * (1.0 + op_norm(k)))
        fail(ErrorKind::InvalidInput, "exp_skew_hermitian: input is not skew-Hermitian");
    Mat h = Cplx(0.0, -1.0) * k;  // Hermitian
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXcd phases(k.rows());
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        phases[i] = std::polar(1.0, es.eigenvalues()[i]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat expm(const Mat& m) {
    require_square_finite(m, "expm");
    double norm = op_norm(m);
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Mat t = m * scale;
    Mat result = Mat::Identity(m.rows(), m.cols());
    Mat term = Mat::Identity(m.rows(), m.cols());
    for (int k = 1; k <= 64; ++k) {
        term = term * t / static_cast<double>(k);
        result += term;
        if (term.norm() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Mat principal_unitary_sqrt(const Mat& u) {
    require_square_finite(u, "principal_unitary_sqrt");
    double defect = unitarity_defect(u);
    if (defect >= 1e-8)
        fail(ErrorKind::NotUnitary, "principal_unitary_sqrt: input is not unitary");
    Eigen::ComplexSchur<Mat> schur(u, true);
    Eigen::VectorXcd roots(u.rows());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        Cplx lambda = schur.matrixT()(i, i);
        if (std::abs(lambda + 1.0) < 1e-10)
            fail(ErrorKind::BranchCut,
                 "principal_unitary_sqrt: eigenvalue at -1, principal branch is ambiguous");
        roots[i] = std::polar(std::sqrt(std::abs(lambda)), 0.5 * std::arg(lambda));
    }
    return schur.matrixU() * roots.asDiagonal() * schur.matrixU().adjoint();
}

Mat inverse(const Mat& m) {
    require_square_finite(m, "inverse");
    Eigen::PartialPivLU<Mat> lu(m);
    Eigen::VectorXcd diag = lu.matrixLU().diagonal();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        double a = std::abs(diag[i]);
        dmin = std::min(dmin, a);
        dmax = std::max(dmax, a);
    }
    if (dmin == 0.0 || dmin < 1e-14 * dmax)
        fail(ErrorKind::InvalidInput, "inverse: matrix is singular to working precision");
    return lu.solve(Mat::Identity(m.rows(), m.cols()));
}

Mat matrix_power(const Mat& m, long long e) {
    require_square_finite(m, "matrix_power");
    Mat base = e < 0 ? inverse(m) : m;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                                 : static_cast<unsigned long long>(e);
    Mat result = Mat::Identity(m.rows(), m.cols());
    while (n > 0) {
        if (n & 1ULL) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
        case ErrorKind::OutsideLogDomain: return "OutsideLogDomain";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::BranchCut: return "BranchCut";
        case ErrorKind::NoNormalForm: return "NoNormalForm";
        case ErrorKind::InvalidGenus: return "InvalidGenus";
        case ErrorKind::NotACycle: return "NotACycle";
        case ErrorKind::NotARelator: return "NotARelator";
        case ErrorKind::PathTooCoarse: return "PathTooCoarse";
        case ErrorKind::EndpointMismatch: return "EndpointMismatch";
        case ErrorKind::DefectTooLarge: return "DefectTooLarge";
        case ErrorKind::AmbiguousBranch: return "AmbiguousBranch";
        case ErrorKind::TraceNotPreserved: return "TraceNotPreserved";
        case ErrorKind::ConsistencyFailure: return "ConsistencyFailure";
    }
    return "UnknownError";
}

}  // namespace predet
