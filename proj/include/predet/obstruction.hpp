#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "predet/almostrep.hpp"
#include "predet/cohomology.hpp"
#include "predet/predeterminant.hpp"

namespace predet {

// Component of the defect 2-cocycle: omega(s, t) = L_tau(defect(s, t)).
// The defect must be within the log domain (DefectTooLarge signals that n is
// too small for this pair).
Cplx omega(const AlmostRep& rep, const GroupElement& s, const GroupElement& t);

// Pairing of the defect cocycle with a bar 2-cycle: sum_j k_j omega(a_j, b_j),
// valid when every defect is within the additivity radius 1/4. When the
// product prod_j d_j^{k_j} stays in the log domain, its single log is
// computed as a cross-check and must agree within 1e-8.
Cplx pairing_bar(const AlmostRep& rep, const Chain2& c);

// Hopf-formula pairing: (1 / 2 pi i) tau(log prod_i [rho(a_i), rho(b_i)])
// through the principal log of the (unitary) commutator product. A spectrum
// touching -1 is reported as AmbiguousBranch, never rotated away.
Cplx pairing_hopf(const AlmostRep& rep, const std::vector<std::pair<Word, Word>>& pairs);

struct WindingResult {
    std::optional<long long> winding;  // lattice index, absent off-lattice
    double residual;
};

// Nearest lattice point of Re(pairing); winding is reported only when the
// residual clears the integrality tolerance 1e-6.
WindingResult winding(Cplx pairing, const Lattice& lat);

// The trace lattice of M_dim under the given convention: Z for the
// unnormalized trace, (1/dim) Z for the normalized one.
Lattice rep_lattice(const AlmostRep& rep);

// Checks that pairing_bar is unchanged under trace-preserving amplification
// g -> g (x) I_m, within 1e-9.
bool invariance_check(const AlmostRep& rep, const Chain2& c, int m);

struct PairingReport {
    int n = 0;
    int dim = 0;
    double theta = 0.0;
    Cplx pairing{0.0, 0.0};
    std::optional<long long> winding;
    double lattice_residual = 0.0;
    std::string route;  // "bar" | "hopf"
    double defect_op = 0.0;
    double defect_p2 = 0.0;
    std::string error;  // nonempty when this point failed
};

struct SweepVerdict {
    std::vector<PairingReport> reports;
    bool obstruction_present = false;
    std::string reason;
};

struct SweepRequest {
    std::string family;  // z2_projective | surface_pullback | heisenberg | z2_theta
    int genus = 2;
    // z2_theta only: explicit rational deformations theta = num/den per point.
    std::vector<std::pair<long long, long long>> thetas;
    std::optional<Chain2> chain;  // bar route
    bool use_hopf = false;        // hopf route on the family's relator data
    std::vector<int> n_grid;
    std::vector<double> ps{2.0};
    TraceKind trace_kind = TraceKind::Unnormalized;
    double eps_perturb = 0.0;
    std::uint64_t seed = 0;
    int threads = 1;
    int n0 = 8;
    double defect_threshold = 0.1;
};

// Runs the grid, one PairingReport per (n, route); per-point failures are
// recorded in the report rather than aborting the sweep. The verdict is
// true when every point with n >= n0 carries the same nonzero winding and
// the op-norm defect has fallen below the threshold at the largest n.
SweepVerdict sweep(const SweepRequest& request);

// Default generator-pair window the sweep measures defects over; surface
// families are routed through the Z^2 pullback (they carry no word problem).
std::vector<std::pair<GroupElement, GroupElement>> default_defect_window(
    const GroupModel& model);

// CSV with columns
// n,dim,theta,route,pairing_re,pairing_im,winding,lattice_residual,defect_op,defect_p2;
// byte-identical for identical (request, seed).
void write_sweep_csv(std::ostream& out, const SweepVerdict& verdict);

nlohmann::json report_json(const PairingReport& report);
nlohmann::json verdict_json(const SweepVerdict& verdict, const SweepRequest& request);

}  // namespace predet
