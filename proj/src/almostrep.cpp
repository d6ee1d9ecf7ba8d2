#include "predet/almostrep.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "predet/rng.hpp"

namespace predet {

namespace {

void require_unitary_images(const AlmostRep& rep) {
    for (const Mat& g : rep.gen_images)
        if (unitarity_defect(g) >= 1e-10)
            fail(ErrorKind::ConsistencyFailure, "AlmostRep: generator image is not unitary");
}

Mat kron_identity(const Mat& g, int m) {
    const Eigen::Index n = g.rows();
    Mat out = Mat::Zero(n * m, n * m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (int r = 0; r < m; ++r) out(i * m + r, j * m + r) = g(i, j);
    return out;
}

}  // namespace

std::pair<Mat, Mat> voiculescu_pair(int n) {
    if (n < 2) fail(ErrorKind::InvalidInput, "voiculescu_pair: n must be >= 2");
    Mat u = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) u((j + 1) % n, j) = 1.0;
    Mat v = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) v(j, j) = std::polar(1.0, kTwoPi * (j + 1) / n);
    return {u, v};
}

AlmostRep heisenberg_rep(int n, TraceKind kind) {
    auto [u, v] = voiculescu_pair(n);
    Mat z = std::polar(1.0, kTwoPi / n) * Mat::Identity(n, n);
    AlmostRep rep{GroupModel::heisenberg(), n,          {u, v, z}, kind, n, 1.0 / n,
                  {},                       RepProvenance{"heisenberg", 0, 1, n, 0.0, 0, 1}};
    require_unitary_images(rep);
    return rep;
}

AlmostRep z2_theta_rep(long long num, long long den, TraceKind kind) {
    if (den < 2) fail(ErrorKind::InvalidInput, "z2_theta_rep: denominator must be >= 2");
    if (num < 0) fail(ErrorKind::InvalidInput, "z2_theta_rep: numerator must be >= 0");
    int n = static_cast<int>(den);
    Mat u = voiculescu_pair(n).first;
    Mat v = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j)
        v(j, j) = std::polar(1.0, kTwoPi * static_cast<double>(num) * (j + 1) / n);
    AlmostRep rep{GroupModel::zd(2),
                  n,
                  {u, v},
                  kind,
                  n,
                  static_cast<double>(num) / static_cast<double>(den),
                  {},
                  RepProvenance{num == 1 ? "z2_projective" : "z2_theta", 0, num, den, 0.0, 0, 1}};
    require_unitary_images(rep);
    return rep;
}

AlmostRep z2_projective_rep(int n, TraceKind kind) { return z2_theta_rep(1, n, kind); }

AlmostRep surface_pullback(int g, int n, TraceKind kind) {
    if (g < 2) fail(ErrorKind::InvalidGenus, "surface_pullback: genus must be >= 2");
    if (n < 2) fail(ErrorKind::InvalidInput, "surface_pullback: n must be >= 2");
    auto [u, v] = voiculescu_pair(n);
    std::vector<Mat> images(static_cast<size_t>(2 * g), Mat::Identity(n, n));
    images[0] = u;
    images[1] = v;
    AlmostRep rep{GroupModel::surface(g),
                  n,
                  std::move(images),
                  kind,
                  n,
                  1.0 / n,
                  surface_relator(g),
                  RepProvenance{"surface_pullback", g, 1, n, 0.0, 0, 1}};
    require_unitary_images(rep);
    return rep;
}

Mat evaluate_word(const AlmostRep& rep, const Word& w) {
    Mat result = Mat::Identity(rep.dim, rep.dim);
    for (const Letter& l : w.letters) {
        if (l.gen < 0 || l.gen >= static_cast<int>(rep.gen_images.size()))
            fail(ErrorKind::InvalidInput, "evaluate_word: generator index out of range");
        result = result * matrix_power(rep.gen_images[static_cast<size_t>(l.gen)], l.exp);
    }
    return result;
}

Mat evaluate(const AlmostRep& rep, const GroupElement& s) {
    if (!(s.model == rep.model))
        fail(ErrorKind::InvalidInput, "evaluate: element is not in the representation's group");
    if (!rep.model.has_normal_form())
        fail(ErrorKind::NoNormalForm,
             "evaluate: surface elements have no canonical word; use evaluate_word");
    return evaluate_word(rep, s.canonical);
}

Mat defect(const AlmostRep& rep, const GroupElement& s, const GroupElement& t) {
    Mat st = evaluate(rep, multiply(s, t));
    return evaluate(rep, s) * evaluate(rep, t) * inverse(st);
}

double DefectReport::sup_op() const {
    double sup = 0.0;
    for (const auto& e : entries) sup = std::max(sup, e.op_defect);
    return sup;
}

double DefectReport::sup_schatten(double p) const {
    double sup = 0.0;
    for (const auto& e : entries) {
        auto it = e.schatten_defects.find(p);
        if (it != e.schatten_defects.end()) sup = std::max(sup, it->second);
    }
    return sup;
}

DefectReport defect_report(const AlmostRep& rep,
                           const std::vector<std::pair<GroupElement, GroupElement>>& window,
                           const std::vector<double>& ps) {
    DefectReport report;
    for (const auto& [s, t] : window) {
        Mat diff = evaluate(rep, s) * evaluate(rep, t) - evaluate(rep, multiply(s, t));
        DefectReport::Entry entry{s, t, op_norm(diff), {}};
        for (double p : ps) {
            double value = schatten_norm(diff, p);
            entry.schatten_defects[p] = value;
            // ||d||_p <= ||d|| dim^{1/p} for every entry
            double root = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(rep.dim), 1.0 / p);
            if (value > entry.op_defect * root + 1e-9)
                fail(ErrorKind::ConsistencyFailure,
                     "defect_report: Schatten/operator-norm inequality violated");
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

AlmostRep perturb(const AlmostRep& rep, double eps, std::uint64_t seed) {
    if (eps < 0.0 || eps >= 0.1)
        fail(ErrorKind::InvalidInput, "perturb: eps must lie in [0, 0.1)");
    AlmostRep out = rep;
    out.provenance.perturb_eps = eps;
    out.provenance.perturb_seed = seed;
    if (eps == 0.0) return out;
    for (size_t g = 0; g < out.gen_images.size(); ++g) {
        Rng rng(derive_seed(seed, g));
        Mat noise(rep.dim, rep.dim);
        for (int j = 0; j < rep.dim; ++j)
            for (int i = 0; i < rep.dim; ++i) noise(i, j) = rng.complex_normal();
        Mat skew = 0.5 * (noise - noise.adjoint().eval());
        double norm = op_norm(skew);
        if (norm == 0.0) continue;
        skew *= eps / norm;
        out.gen_images[g] = exp_skew_hermitian(skew) * out.gen_images[g];
    }
    return out;
}

AlmostRep amplify(const AlmostRep& rep, int m) {
    if (m < 1) fail(ErrorKind::InvalidInput, "amplify: m must be >= 1");
    if (rep.trace_kind != TraceKind::Normalized)
        fail(ErrorKind::TraceNotPreserved,
             "amplify: tensoring with I_m does not preserve the unnormalized trace");
    if (m == 1) return rep;
    AlmostRep out = rep;
    out.dim = rep.dim * m;
    for (Mat& g : out.gen_images) g = kron_identity(g, m);
    out.provenance.amplify_m = rep.provenance.amplify_m * m;
    return out;
}

nlohmann::json describe(const AlmostRep& rep) {
    nlohmann::json j{{"family", rep.provenance.family},
                     {"n", rep.n_param},
                     {"theta", rep.theta},
                     {"dim", rep.dim},
                     {"trace", trace_kind_name(rep.trace_kind)},
                     {"group", rep.model.describe()}};
    if (rep.provenance.genus > 0) j["genus"] = rep.provenance.genus;
    if (rep.provenance.family == "z2_theta") {
        j["theta_num"] = rep.provenance.theta_num;
        j["theta_den"] = rep.provenance.theta_den;
    }
    if (rep.provenance.perturb_eps > 0.0) {
        j["perturb_eps"] = rep.provenance.perturb_eps;
        j["perturb_seed"] = rep.provenance.perturb_seed;
    }
    if (rep.provenance.amplify_m > 1) j["amplify"] = rep.provenance.amplify_m;
    return j;
}

AlmostRep rep_from_descriptor(const nlohmann::json& j) {
    std::string family = j.at("family").get<std::string>();
    TraceKind kind = TraceKind::Normalized;
    if (j.contains("trace")) {
        std::string t = j.at("trace").get<std::string>();
        if (t == "unnormalized" || t == "unnorm")
            kind = TraceKind::Unnormalized;
        else if (t != "normalized" && t != "norm")
            fail(ErrorKind::InvalidInput, "rep_from_descriptor: unknown trace kind '" + t + "'");
    }
    AlmostRep rep = [&]() {
        if (family == "heisenberg") return heisenberg_rep(j.at("n").get<int>(), kind);
        if (family == "z2_projective") return z2_projective_rep(j.at("n").get<int>(), kind);
        if (family == "z2_theta")
            return z2_theta_rep(j.at("theta_num").get<long long>(),
                                j.at("theta_den").get<long long>(), kind);
        if (family == "surface_pullback")
            return surface_pullback(j.value("genus", 2), j.at("n").get<int>(), kind);
        fail(ErrorKind::InvalidInput, "rep_from_descriptor: unknown family '" + family + "'");
    }();
    if (j.contains("perturb_eps"))
        rep = perturb(rep, j.at("perturb_eps").get<double>(),
                      j.value("perturb_seed", std::uint64_t{0}));
    if (j.contains("amplify")) rep = amplify(rep, j.at("amplify").get<int>());
    return rep;
}

}  // namespace predet
