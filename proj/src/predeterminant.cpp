#include "predet/predeterminant.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace predet {

namespace {

constexpr double kRatioBound = 0.5;
constexpr int kMaxDepth = 20;

double smallest_singular_value(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().minCoeff();
}

void require_invertible(const Mat& m, ErrorKind kind, const char* who) {
    if (smallest_singular_value(m) <= 1e-10)
        fail(kind, std::string(who) + ": sample is singular to tolerance 1e-10");
}

void append_refined(std::vector<Mat>& out, const Mat& a, const Mat& b, int depth) {
    Mat ratio = b * inverse(a);
    if (op_norm(ratio - Mat::Identity(a.rows(), a.cols())) < kRatioBound) {
        out.push_back(b);
        return;
    }
    if (depth >= kMaxDepth)
        fail(ErrorKind::PathTooCoarse,
             "PathOfInvertibles: segment ratio still outside the log domain at depth 20");
    Mat mid;
    if (unitarity_defect(ratio) < 1e-8) {
        mid = principal_unitary_sqrt(ratio) * a;
    } else {
        mid = 0.5 * (a + b);
        require_invertible(mid, ErrorKind::PathTooCoarse, "PathOfInvertibles midpoint");
    }
    append_refined(out, a, mid, depth + 1);
    append_refined(out, mid, b, depth + 1);
}

}  // namespace

Lattice Lattice::scaled(double g) {
    if (!(g > 0.0)) fail(ErrorKind::InvalidInput, "Lattice: generator must be positive");
    return {g};
}

long long Lattice::nearest_index(double x) const {
    if (is_trivial()) return 0;
    return static_cast<long long>(std::llround(x / generator));
}

double Lattice::residual(double x) const {
    if (is_trivial()) return std::abs(x);
    return std::abs(x - static_cast<double>(nearest_index(x)) * generator);
}

PathOfInvertibles::PathOfInvertibles(std::vector<Mat> samples) {
    if (samples.size() < 2)
        fail(ErrorKind::InvalidInput, "PathOfInvertibles: need at least two samples");
    const Eigen::Index dim = samples.front().rows();
    for (const Mat& s : samples) {
        if (s.rows() != dim || s.cols() != dim)
            fail(ErrorKind::InvalidInput, "PathOfInvertibles: samples of mixed dimension");
        if (!s.allFinite())
            fail(ErrorKind::InvalidInput, "PathOfInvertibles: non-finite sample");
        require_invertible(s, ErrorKind::InvalidInput, "PathOfInvertibles");
    }
    samples_.push_back(samples.front());
    for (size_t i = 0; i + 1 < samples.size(); ++i)
        append_refined(samples_, samples[i], samples[i + 1], 0);
}

Cplx l_tau(const Mat& u, TraceKind kind) {
    return trace(log_near_identity(u), kind) / Cplx(0.0, kTwoPi);
}

Cplx path_predeterminant(const PathOfInvertibles& path, TraceKind kind) {
    Cplx sum = 0.0;
    const auto& s = path.samples();
    for (size_t i = 0; i + 1 < s.size(); ++i) sum += l_tau(s[i + 1] * inverse(s[i]), kind);
    return sum;
}

DetModLattice determinant_mod_lattice(const Mat& u, const PathOfInvertibles& path,
                                      TraceKind kind, const Lattice& lat) {
    const Mat& start = path.samples().front();
    const Mat& end = path.samples().back();
    if (op_norm(start - Mat::Identity(start.rows(), start.cols())) > 1e-10)
        fail(ErrorKind::EndpointMismatch, "determinant_mod_lattice: path does not start at I");
    if (end.rows() != u.rows() || op_norm(end - u) > 1e-10)
        fail(ErrorKind::EndpointMismatch, "determinant_mod_lattice: path does not end at u");
    Cplx rep = path_predeterminant(path, kind);
    return {rep, lat.residual(rep.real())};
}

PathOfInvertibles projection_loop(const Mat& p, int segments) {
    if (segments < 2) fail(ErrorKind::InvalidInput, "projection_loop: need >= 2 segments");
    Mat one = Mat::Identity(p.rows(), p.cols());
    std::vector<Mat> samples;
    samples.reserve(static_cast<size_t>(segments) + 1);
    for (int k = 0; k <= segments; ++k) {
        double t = static_cast<double>(k) / segments;
        samples.push_back(one + (std::polar(1.0, kTwoPi * t) - 1.0) * p);
    }
    return PathOfInvertibles(std::move(samples));
}

PathOfInvertibles segment_path_to(const Mat& u, int segments) {
    if (segments < 1) fail(ErrorKind::InvalidInput, "segment_path_to: need >= 1 segment");
    Mat one = Mat::Identity(u.rows(), u.cols());
    std::vector<Mat> samples;
    samples.reserve(static_cast<size_t>(segments) + 1);
    for (int k = 0; k <= segments; ++k) {
        double t = static_cast<double>(k) / segments;
        samples.push_back((1.0 - t) * one + t * u);
    }
    return PathOfInvertibles(std::move(samples));
}

}  // namespace predet
