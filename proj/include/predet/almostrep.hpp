#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "predet/groups.hpp"
#include "predet/linalg.hpp"

namespace predet {

// How an AlmostRep was built, enough to regenerate it exactly; matrices are
// never serialized.
struct RepProvenance {
    std::string family;  // z2_projective | z2_theta | heisenberg | surface_pullback
    int genus = 0;       // surface_pullback only
    long long theta_num = 1, theta_den = 1;
    double perturb_eps = 0.0;
    std::uint64_t perturb_seed = 0;
    int amplify_m = 1;
};

// A finite-n almost representation: generator images plus the evaluation
// section "expand the canonical word left to right". For unitary families
// every generator image is unitary within 1e-10.
struct AlmostRep {
    GroupModel model;
    int dim;
    std::vector<Mat> gen_images;
    TraceKind trace_kind;
    int n_param;
    double theta;
    std::vector<std::pair<Word, Word>> relator_pairs;  // surface families only
    RepProvenance provenance;
};

// The n x n cyclic shift and clock pair: u e_j = e_{j+1 mod n},
// v = diag(lambda, lambda^2, ..., lambda^n) with lambda = e^{2 pi i / n}.
// They satisfy v u = lambda u v exactly.
std::pair<Mat, Mat> voiculescu_pair(int n);

// True representation of the Heisenberg group at level n:
// a -> shift, b -> clock, z -> lambda_n I. Relations hold to roundoff.
AlmostRep heisenberg_rep(int n, TraceKind kind = TraceKind::Normalized);

// Projective representation of Z^2 with scalar defect
// rho(s) rho(t) rho(s+t)^-1 = lambda_n^{s_2 t_1} I, i.e. theta = 1/n against
// the standard cocycle.
AlmostRep z2_projective_rep(int n, TraceKind kind = TraceKind::Normalized);

// Rational-deformation variant: theta = num/den realized by the den x den
// shift and the num-th clock power; the built-in family is num = 1.
AlmostRep z2_theta_rep(long long num, long long den, TraceKind kind = TraceKind::Normalized);

// Pullback of the Z^2 family along Surface(g) -> Z^2: a1 -> shift,
// b1 -> clock, every other generator -> I, with the relator pair data kept
// for the commutator pairing.
AlmostRep surface_pullback(int g, int n, TraceKind kind = TraceKind::Normalized);

// rho(s) through the canonical word of s. Surface models have no canonical
// word; evaluate their free words with evaluate_word instead.
Mat evaluate(const AlmostRep& rep, const GroupElement& s);

// rho of a free word, letters expanded left to right.
Mat evaluate_word(const AlmostRep& rep, const Word& w);

// Multiplicativity defect rho(s) rho(t) rho(st)^-1.
Mat defect(const AlmostRep& rep, const GroupElement& s, const GroupElement& t);

// Difference-form defect table over a window of pairs:
// || rho(s) rho(t) - rho(st) || in operator and Schatten norms.
struct DefectReport {
    struct Entry {
        GroupElement s, t;
        double op_defect;
        std::map<double, double> schatten_defects;
    };
    std::vector<Entry> entries;

    double sup_op() const;
    double sup_schatten(double p) const;
};

DefectReport defect_report(const AlmostRep& rep,
                           const std::vector<std::pair<GroupElement, GroupElement>>& window,
                           const std::vector<double>& ps);

// Multiply every generator image by exp(K) for an independent random
// skew-Hermitian K with ||K|| = eps; unitarity is preserved. 0 <= eps < 0.1.
AlmostRep perturb(const AlmostRep& rep, double eps, std::uint64_t seed);

// Trace-preserving amplification g -> g (x) I_m. Requires the normalized
// trace: Tr is not preserved under tensoring with I_m.
AlmostRep amplify(const AlmostRep& rep, int m);

// JSON descriptor (family, n, theta, dim, trace, provenance); regeneration
// rebuilds the matrices from scratch.
nlohmann::json describe(const AlmostRep& rep);
AlmostRep rep_from_descriptor(const nlohmann::json& j);

}  // namespace predet
