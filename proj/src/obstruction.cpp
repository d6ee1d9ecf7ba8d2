#include "predet/obstruction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "predet/rng.hpp"

namespace predet {

namespace {

constexpr double kIntegralityTol = 1e-6;
constexpr double kRouteAgreementTol = 1e-8;

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

Cplx omega(const AlmostRep& rep, const GroupElement& s, const GroupElement& t) {
    Mat d = defect(rep, s, t);
    double dist = op_norm(d - Mat::Identity(d.rows(), d.cols()));
    if (dist >= 1.0)
        fail(ErrorKind::DefectTooLarge,
             "omega: defect at distance " + std::to_string(dist) +
                 " from I; n is too small for this pair");
    return l_tau(d, rep.trace_kind);
}

Cplx pairing_bar(const AlmostRep& rep, const Chain2& c) {
    if (!(c.model == rep.model))
        fail(ErrorKind::InvalidInput, "pairing_bar: chain is over a different group");
    if (!is_cycle(c)) fail(ErrorKind::NotACycle, "pairing_bar: chain is not a 2-cycle");

    Cplx sum = 0.0;
    Mat product = Mat::Identity(rep.dim, rep.dim);
    for (const auto& term : c.terms) {
        Mat d = defect(rep, term.a, term.b);
        double dist = op_norm(d - Mat::Identity(rep.dim, rep.dim));
        if (dist >= 0.25)
            fail(ErrorKind::DefectTooLarge,
                 "pairing_bar: defect at distance " + std::to_string(dist) +
                     " exceeds the additivity radius 1/4");
        sum += static_cast<double>(term.k) * l_tau(d, rep.trace_kind);
        product = product * matrix_power(d, term.k);
    }
    // Single-log form of the same pairing; valid whenever the product of
    // defects stays in the log domain.
    if (op_norm(product - Mat::Identity(rep.dim, rep.dim)) < 1.0) {
        Cplx cross = l_tau(product, rep.trace_kind);
        if (std::abs(sum - cross) >= kRouteAgreementTol)
            fail(ErrorKind::ConsistencyFailure,
                 "pairing_bar: termwise sum and product log disagree");
    }
    return sum;
}

Cplx pairing_hopf(const AlmostRep& rep, const std::vector<std::pair<Word, Word>>& pairs) {
    Mat product = Mat::Identity(rep.dim, rep.dim);
    for (const auto& [wa, wb] : pairs) {
        Mat a = evaluate_word(rep, wa);
        Mat b = evaluate_word(rep, wb);
        product = product * a * b * inverse(a) * inverse(b);
    }
    try {
        return trace(unitary_log(product), rep.trace_kind) / Cplx(0.0, kTwoPi);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::BranchCut)
            fail(ErrorKind::AmbiguousBranch,
                 "pairing_hopf: commutator product has spectrum at -1");
        throw;
    }
}

WindingResult winding(Cplx pairing, const Lattice& lat) {
    double residual = lat.residual(pairing.real());
    if (residual >= kIntegralityTol) return {std::nullopt, residual};
    return {lat.nearest_index(pairing.real()), residual};
}

Lattice rep_lattice(const AlmostRep& rep) {
    return rep.trace_kind == TraceKind::Unnormalized
               ? Lattice::integers()
               : Lattice::scaled(1.0 / static_cast<double>(rep.dim));
}

bool invariance_check(const AlmostRep& rep, const Chain2& c, int m) {
    Cplx base = pairing_bar(rep, c);
    Cplx amplified = pairing_bar(amplify(rep, m), c);
    return std::abs(base - amplified) < 1e-9;
}

std::vector<std::pair<GroupElement, GroupElement>> default_defect_window(
    const GroupModel& model) {
    if (!model.has_normal_form())
        fail(ErrorKind::NoNormalForm,
             "default_defect_window: surface families measure defects through "
             "their Z^2 pullback");
    std::vector<GroupElement> points;
    for (int g = 0; g < model.generator_count(); ++g) {
        points.push_back(generator(model, g, 1));
        points.push_back(generator(model, g, -1));
    }
    std::vector<std::pair<GroupElement, GroupElement>> window;
    for (const auto& s : points)
        for (const auto& t : points) window.push_back({s, t});
    return window;
}

namespace {

struct GridPoint {
    int n;
    long long theta_num, theta_den;
};

AlmostRep build_rep(const SweepRequest& req, const GridPoint& point) {
    if (req.family == "z2_projective") return z2_projective_rep(point.n, req.trace_kind);
    if (req.family == "z2_theta")
        return z2_theta_rep(point.theta_num, point.theta_den, req.trace_kind);
    if (req.family == "heisenberg") return heisenberg_rep(point.n, req.trace_kind);
    if (req.family == "surface_pullback")
        return surface_pullback(req.genus, point.n, req.trace_kind);
    fail(ErrorKind::InvalidInput, "sweep: unknown family '" + req.family + "'");
}

// Surface reps carry no word problem; their measured window is the pullback
// of the Z^2 generator window through a1 -> x, b1 -> y.
AlmostRep defect_carrier(const AlmostRep& rep) {
    if (rep.model.kind() != GroupKind::Surface) return rep;
    AlmostRep aux = rep;
    aux.model = GroupModel::zd(2);
    aux.gen_images = {rep.gen_images[0], rep.gen_images[1]};
    aux.relator_pairs.clear();
    return aux;
}

std::vector<std::pair<Word, Word>> hopf_pairs_for(const AlmostRep& rep) {
    if (rep.model.kind() == GroupKind::Surface) return rep.relator_pairs;
    if (rep.model.kind() == GroupKind::ZD && rep.model.param() == 2)
        return {{Word{{{0, 1}}}, Word{{{1, 1}}}}};
    fail(ErrorKind::InvalidInput,
         "sweep: no relator data for the hopf route on " + rep.model.describe());
}

void validate_request(const SweepRequest& req) {
    if (req.family == "z2_theta") {
        if (req.thetas.empty())
            fail(ErrorKind::InvalidInput, "sweep: z2_theta needs a theta sequence");
        for (size_t i = 0; i + 1 < req.thetas.size(); ++i)
            if (req.thetas[i].second >= req.thetas[i + 1].second)
                fail(ErrorKind::InvalidInput,
                     "sweep: theta denominators must be strictly ascending");
    } else {
        if (req.n_grid.empty()) fail(ErrorKind::InvalidInput, "sweep: empty n grid");
        for (size_t i = 0; i + 1 < req.n_grid.size(); ++i)
            if (req.n_grid[i] >= req.n_grid[i + 1])
                fail(ErrorKind::InvalidInput, "sweep: n grid must be strictly ascending");
    }
    if (!req.chain && !req.use_hopf)
        fail(ErrorKind::InvalidInput, "sweep: need a chain cycle, the hopf route, or both");
    if (req.eps_perturb < 0.0 || req.eps_perturb >= 0.1)
        fail(ErrorKind::InvalidInput, "sweep: eps_perturb must lie in [0, 0.1)");
    if (req.family == "heisenberg" && req.use_hopf)
        fail(ErrorKind::InvalidInput,
             "sweep: the Heisenberg family has no product-of-commutators relator; "
             "pair it with a chain cycle");
    if (req.family == "surface_pullback" && req.chain)
        fail(ErrorKind::InvalidInput,
             "sweep: surface families pair through the hopf route only");
    if (req.chain) {
        GroupModel expected =
            req.family == "heisenberg" ? GroupModel::heisenberg() : GroupModel::zd(2);
        if (!(req.chain->model == expected))
            fail(ErrorKind::InvalidInput, "sweep: chain is over " +
                                              req.chain->model.describe() + ", expected " +
                                              expected.describe());
    }
}

std::vector<PairingReport> compute_point(const SweepRequest& req, const GridPoint& point,
                                         std::uint64_t point_seed) {
    std::vector<std::string> routes;
    if (req.chain) routes.push_back("bar");
    if (req.use_hopf) routes.push_back("hopf");

    PairingReport base;
    base.n = point.n;
    base.theta = static_cast<double>(point.theta_num) / static_cast<double>(point.theta_den);

    std::vector<PairingReport> rows;
    AlmostRep rep = [&]() -> AlmostRep {
        AlmostRep r = build_rep(req, point);
        if (req.eps_perturb > 0.0) r = perturb(r, req.eps_perturb, point_seed);
        return r;
    }();
    base.dim = rep.dim;
    base.theta = rep.theta;

    std::string defect_error;
    try {
        DefectReport table =
            defect_report(defect_carrier(rep), default_defect_window(defect_carrier(rep).model),
                          {2.0});
        base.defect_op = table.sup_op();
        base.defect_p2 = table.sup_schatten(2.0);
    } catch (const Error& e) {
        defect_error = e.what();
    }

    Lattice lat = rep_lattice(rep);
    for (const std::string& route : routes) {
        PairingReport row = base;
        row.route = route;
        row.error = defect_error;
        try {
            row.pairing = route == "bar" ? pairing_bar(rep, *req.chain)
                                         : pairing_hopf(rep, hopf_pairs_for(rep));
            WindingResult w = winding(row.pairing, lat);
            row.winding = w.winding;
            row.lattice_residual = w.residual;
        } catch (const Error& e) {
            row.error = row.error.empty() ? e.what() : row.error + "; " + e.what();
        }
        rows.push_back(std::move(row));
    }

    if (rows.size() == 2 && rows[0].error.empty() && rows[1].error.empty() &&
        std::abs(rows[0].pairing - rows[1].pairing) >= kRouteAgreementTol) {
        for (auto& row : rows)
            row.error = "route disagreement: |bar - hopf| = " +
                        fmt_double(std::abs(rows[0].pairing - rows[1].pairing));
    }
    return rows;
}

}  // namespace

SweepVerdict sweep(const SweepRequest& req) {
    validate_request(req);

    std::vector<GridPoint> points;
    if (req.family == "z2_theta") {
        for (auto& [num, den] : req.thetas)
            points.push_back({static_cast<int>(den), num, den});
    } else {
        for (int n : req.n_grid) points.push_back({n, 1, n});
    }

    std::vector<std::vector<PairingReport>> results(points.size());
    auto run_point = [&](size_t i) {
        std::uint64_t point_seed = derive_seed(req.seed, i);
        try {
            results[i] = compute_point(req, points[i], point_seed);
        } catch (const Error& e) {
            PairingReport row;
            row.n = points[i].n;
            row.theta = static_cast<double>(points[i].theta_num) /
                        static_cast<double>(points[i].theta_den);
            row.route = req.chain ? "bar" : "hopf";
            row.error = e.what();
            results[i] = {row};
        }
    };

    int threads = std::max(1, req.threads);
    if (threads == 1 || points.size() <= 1) {
        for (size_t i = 0; i < points.size(); ++i) run_point(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1))
                run_point(i);
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(threads, static_cast<int>(points.size())); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepVerdict verdict;
    for (auto& rows : results)
        verdict.reports.insert(verdict.reports.end(), rows.begin(), rows.end());

    // Verdict: every point with n >= n0 must carry a nonzero winding while
    // the measured defect has fallen below the threshold at the largest n.
    std::vector<const PairingReport*> eligible;
    for (const auto& r : verdict.reports)
        if (r.n >= req.n0) eligible.push_back(&r);

    if (eligible.empty()) {
        verdict.obstruction_present = false;
        verdict.reason = "no grid points with n >= " + std::to_string(req.n0);
        return verdict;
    }
    for (const auto* r : eligible) {
        if (!r->error.empty()) {
            verdict.obstruction_present = false;
            verdict.reason = "point n=" + std::to_string(r->n) + " failed: " + r->error;
            return verdict;
        }
        if (!r->winding || *r->winding == 0) {
            verdict.obstruction_present = false;
            verdict.reason = "point n=" + std::to_string(r->n) +
                             (r->winding ? " has zero winding" : " is off-lattice");
            return verdict;
        }
    }
    double final_defect = 0.0;
    int max_n = 0;
    for (const auto* r : eligible)
        if (r->n >= max_n) {
            max_n = r->n;
            final_defect = r->defect_op;
        }
    if (final_defect >= req.defect_threshold) {
        verdict.obstruction_present = false;
        verdict.reason = "defect " + fmt_double(final_defect) + " at n=" +
                         std::to_string(max_n) + " is not below " +
                         fmt_double(req.defect_threshold);
        return verdict;
    }
    verdict.obstruction_present = true;
    bool constant = std::all_of(eligible.begin(), eligible.end(), [&](const PairingReport* r) {
        return *r->winding == *eligible.front()->winding;
    });
    verdict.reason = "windings nonzero" +
                     std::string(constant ? " and constant at " +
                                                std::to_string(*eligible.front()->winding)
                                          : " (but varying across n)") +
                     " while the defect decays to " + fmt_double(final_defect) + " at n=" +
                     std::to_string(max_n);
    return verdict;
}

void write_sweep_csv(std::ostream& out, const SweepVerdict& verdict) {
    out << "n,dim,theta,route,pairing_re,pairing_im,winding,lattice_residual,defect_op,"
           "defect_p2\n";
    std::vector<const PairingReport*> rows;
    for (const auto& r : verdict.reports) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
        return a->n != b->n ? a->n < b->n : a->route < b->route;
    });
    for (const auto* r : rows) {
        out << r->n << ',' << r->dim << ',' << fmt_double(r->theta) << ',' << r->route << ',';
        if (r->error.empty()) {
            out << fmt_double(r->pairing.real()) << ',' << fmt_double(r->pairing.imag()) << ',';
            if (r->winding) out << *r->winding;
            out << ',' << fmt_double(r->lattice_residual) << ',' << fmt_double(r->defect_op)
                << ',' << fmt_double(r->defect_p2) << '\n';
        } else {
            out << ",,,,," << '\n';
        }
    }
}

nlohmann::json report_json(const PairingReport& r) {
    nlohmann::json j{{"n", r.n}, {"dim", r.dim}, {"theta", r.theta}, {"route", r.route}};
    if (r.error.empty()) {
        j["pairing_re"] = r.pairing.real();
        j["pairing_im"] = r.pairing.imag();
        j["winding"] = r.winding ? nlohmann::json(*r.winding) : nlohmann::json(nullptr);
        j["lattice_residual"] = r.lattice_residual;
        j["defect_op"] = r.defect_op;
        j["defect_p2"] = r.defect_p2;
    } else {
        j["error"] = r.error;
    }
    return j;
}

nlohmann::json verdict_json(const SweepVerdict& verdict, const SweepRequest& req) {
    nlohmann::json j{{"family", req.family},
                     {"trace", trace_kind_name(req.trace_kind)},
                     {"eps_perturb", req.eps_perturb},
                     {"seed", req.seed},
                     {"n0", req.n0},
                     {"defect_threshold", req.defect_threshold},
                     {"obstruction_present", verdict.obstruction_present},
                     {"reason", verdict.reason}};
    if (req.family == "surface_pullback") j["genus"] = req.genus;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : verdict.reports) reports.push_back(report_json(r));
    j["reports"] = reports;
    return j;
}

}  // namespace predet
