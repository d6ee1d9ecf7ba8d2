#pragma once

#include <vector>

#include "predet/linalg.hpp"

namespace predet {

// The trace lattice a determinant is reduced against: generator * Z, or the
// trivial lattice {0}. For M_k this is Z under the unnormalized trace and
// (1/k) Z under the normalized one.
struct Lattice {
    double generator = 0.0;  // 0 encodes the trivial lattice

    static Lattice integers() { return {1.0}; }
    static Lattice trivial() { return {0.0}; }
    static Lattice scaled(double g);

    bool is_trivial() const { return generator == 0.0; }
    // Index of the nearest lattice point (0 for the trivial lattice).
    long long nearest_index(double x) const;
    double residual(double x) const;
};

// Discrete piecewise path in GL: an ordered sample list with every sample
// invertible and every consecutive ratio within 1/2 of the identity. Inputs
// that violate the ratio bound are refined at construction, inserting
// geodesic midpoints exp(log(ratio)/2) * start for unitary ratios and linear
// midpoints otherwise; refinement past depth 20 fails with PathTooCoarse.
class PathOfInvertibles {
  public:
    explicit PathOfInvertibles(std::vector<Mat> samples);

    const std::vector<Mat>& samples() const { return samples_; }
    int dim() const { return static_cast<int>(samples_.front().rows()); }

  private:
    std::vector<Mat> samples_;
};

// L_tau(u) = (1 / 2 pi i) tau(log u) on the ball ||u - I|| < 1.
Cplx l_tau(const Mat& u, TraceKind kind);

// Pre-determinant of a discrete path: the telescoping sum of segment logs
// sum_i (1 / 2 pi i) tau(log(s_{i+1} s_i^-1)). Exact for piecewise-geodesic
// paths and invariant under refinement.
Cplx path_predeterminant(const PathOfInvertibles& path, TraceKind kind);

struct DetModLattice {
    Cplx representative;
    double residual;  // distance of Re(representative) to the lattice
};

// Pre-determinant of a path from I to u, reduced modulo the trace lattice.
// The path must start at I and end at u (EndpointMismatch otherwise).
DetModLattice determinant_mod_lattice(const Mat& u, const PathOfInvertibles& path,
                                      TraceKind kind, const Lattice& lat);

// The projection loop t -> (1 - p) + e^{2 pi i t} p sampled uniformly;
// its pre-determinant is tau(p).
PathOfInvertibles projection_loop(const Mat& p, int segments);

// Straight-line path (1-t) I + t u sampled uniformly.
PathOfInvertibles segment_path_to(const Mat& u, int segments);

}  // namespace predet
