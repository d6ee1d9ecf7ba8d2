#include "predet/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "predet/cohomology.hpp"
#include "predet/predeterminant.hpp"
#include "predet/rng.hpp"

namespace predet {

namespace {

std::string max_err_detail(double max_err, int samples) {
    std::ostringstream out;
    out << "max error " << max_err << " over " << samples << " samples";
    return out.str();
}

// I + X with op_norm(X) = radius; general complex, not necessarily normal.
Mat near_identity_sample(Rng& rng, int dim, double radius) {
    Mat x(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) x(i, j) = rng.complex_normal();
    x *= radius / op_norm(x);
    return Mat::Identity(dim, dim) + x;
}

// w1 diag(s) w2 with singular values spread to the requested condition number.
Mat conditioned_sample(std::uint64_t seed, int dim, double cond) {
    Mat w1 = random_unitary(dim, derive_seed(seed, 1));
    Mat w2 = random_unitary(dim, derive_seed(seed, 2));
    Rng rng(derive_seed(seed, 3));
    Eigen::VectorXd s(dim);
    for (int i = 0; i < dim; ++i) s[i] = 1.0 + (cond - 1.0) * rng.uniform();
    s[0] = 1.0;
    s[dim - 1] = cond;
    Mat d = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) d(i, i) = s[i];
    return w1 * d * w2;
}

double gamma_hash(const std::string& key, std::uint64_t seed) {
    std::uint64_t h = derive_seed(seed, std::hash<std::string>{}(key));
    return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

GroupElement random_element(Rng& rng, const GroupModel& model, long long max_exp) {
    Word w;
    int len = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int i = 0; i < len; ++i) {
        int gen = static_cast<int>(rng.next_u64() % model.generator_count());
        long long exp =
            static_cast<long long>(rng.next_u64() % (2 * max_exp + 1)) - max_exp;
        w.letters.push_back({gen, exp});
    }
    return element_from_word(model, w);
}

Chain3 random_chain3(Rng& rng, const GroupModel& model, int cells, long long max_exp) {
    std::vector<Chain3::Term> terms;
    for (int i = 0; i < cells; ++i) {
        long long k = static_cast<long long>(rng.next_u64() % 7) - 3;
        terms.push_back({k, random_element(rng, model, max_exp),
                         random_element(rng, model, max_exp),
                         random_element(rng, model, max_exp)});
    }
    return make_chain3(model, std::move(terms));
}

}  // namespace

std::vector<PropertyResult> run_predet_suite(std::uint64_t seed) {
    std::vector<PropertyResult> results;
    const int dim = 8;

    {
        // L(u1 u2) = L(u1) + L(u2) for ||u_i - I|| < 1/4
        Rng rng(derive_seed(seed, 101));
        double max_err = 0.0;
        const int samples = 500;
        for (int i = 0; i < samples; ++i) {
            double r1 = 0.02 + 0.22 * rng.uniform();
            double r2 = 0.02 + 0.22 * rng.uniform();
            Mat u1 = near_identity_sample(rng, dim, r1);
            Mat u2 = near_identity_sample(rng, dim, r2);
            Cplx lhs = l_tau(u1 * u2, TraceKind::Unnormalized);
            Cplx rhs = l_tau(u1, TraceKind::Unnormalized) + l_tau(u2, TraceKind::Unnormalized);
            max_err = std::max(max_err, std::abs(lhs - rhs));
        }
        results.push_back(
            {"predet", "additivity", max_err < 1e-9, max_err_detail(max_err, samples)});
    }
    {
        // L(v u v^-1) = L(u), v of condition number <= 100, u scaled so the
        // conjugate stays inside the log ball.
        double max_err = 0.0;
        const int samples = 200;
        Rng rng(derive_seed(seed, 102));
        for (int i = 0; i < samples; ++i) {
            double cond = 1.0 + 99.0 * rng.uniform();
            Mat v = conditioned_sample(derive_seed(seed, 9000 + i), dim, cond);
            Mat u = near_identity_sample(rng, dim, 0.8 / cond);
            Cplx lhs = l_tau(v * u * inverse(v), TraceKind::Unnormalized);
            Cplx rhs = l_tau(u, TraceKind::Unnormalized);
            max_err = std::max(max_err, std::abs(lhs - rhs));
        }
        results.push_back(
            {"predet", "conjugation", max_err < 1e-8, max_err_detail(max_err, samples)});
    }
    {
        // L(u^-1) = -L(u)
        Rng rng(derive_seed(seed, 103));
        double max_err = 0.0;
        const int samples = 500;
        for (int i = 0; i < samples; ++i) {
            Mat u = near_identity_sample(rng, dim, 0.02 + 0.40 * rng.uniform());
            Cplx lhs = l_tau(inverse(u), TraceKind::Unnormalized);
            Cplx rhs = -l_tau(u, TraceKind::Unnormalized);
            max_err = std::max(max_err, std::abs(lhs - rhs));
        }
        results.push_back(
            {"predet", "inverse", max_err < 1e-9, max_err_detail(max_err, samples)});
    }
    {
        // Pre-determinant of the projection loop equals tau(p).
        Rng rng(derive_seed(seed, 104));
        double max_err = 0.0;
        const int samples = 50;
        for (int i = 0; i < samples; ++i) {
            int pdim = 4 + static_cast<int>(rng.next_u64() % 13);
            int rank = static_cast<int>(rng.next_u64() % (pdim + 1));
            Mat p = random_projection(pdim, rank, derive_seed(seed, 5000 + i));
            Cplx value = path_predeterminant(projection_loop(p, 64), TraceKind::Unnormalized);
            max_err = std::max(max_err, std::abs(value - Cplx(rank, 0.0)));
        }
        results.push_back(
            {"predet", "projection-loop", max_err < 1e-8, max_err_detail(max_err, samples)});
    }
    return results;
}

std::vector<PropertyResult> run_chains_suite(std::uint64_t seed) {
    std::vector<PropertyResult> results;
    std::vector<GroupModel> models{GroupModel::zd(2), GroupModel::heisenberg()};

    {
        Rng rng(derive_seed(seed, 201));
        int failures = 0;
        const int samples = 1000;
        for (int i = 0; i < samples; ++i) {
            const GroupModel& model = models[static_cast<size_t>(i % 2)];
            Chain3 r = random_chain3(rng, model, 1 + static_cast<int>(rng.next_u64() % 5), 5);
            if (!boundary2(boundary3(r)).terms.empty()) ++failures;
        }
        results.push_back({"chains", "boundary-composition", failures == 0,
                           std::to_string(failures) + " nonzero d2(d3(r)) out of " +
                               std::to_string(samples)});
    }
    {
        // Pairings of coboundaries with cycles vanish.
        Rng rng(derive_seed(seed, 202));
        double max_err = 0.0;
        const int samples = 100;
        for (int i = 0; i < samples; ++i) {
            const GroupModel& model = models[static_cast<size_t>(i % 2)];
            std::uint64_t gseed = derive_seed(seed, 7000 + i);
            auto gamma = [&model, gseed](const GroupElement& g) {
                if (g.is_identity()) return 0.0;
                return gamma_hash(format_element(g), gseed);
            };
            Cocycle2 sigma = coboundary(model, gamma);
            Chain2 base = model.kind() == GroupKind::ZD ? std_z2_cycle()
                                                        : heisenberg_central_cycle();
            Chain2 cycle = chain2_add(chain2_scale(base, static_cast<long long>(
                                                             rng.next_u64() % 5) -
                                                             2),
                                      boundary3(random_chain3(rng, model, 3, 3)));
            max_err = std::max(max_err, std::abs(kronecker(sigma, cycle)));
        }
        results.push_back(
            {"chains", "coboundary-pairing", max_err < 1e-12, max_err_detail(max_err, samples)});
    }
    {
        // hopf_to_bar yields cycles on the built-in relator data (surface
        // generator images pushed to Z^2).
        bool ok = true;
        std::string detail = "genus 2..5 pullback data";
        GroupModel z2 = GroupModel::zd(2);
        for (int g = 2; g <= 5 && ok; ++g) {
            std::vector<std::pair<GroupElement, GroupElement>> pairs;
            pairs.push_back({generator(z2, 0), generator(z2, 1)});
            for (int i = 1; i < g; ++i) pairs.push_back({identity(z2), identity(z2)});
            ok = is_cycle(hopf_to_bar(pairs));
        }
        results.push_back({"chains", "hopf-cycle", ok, detail});
    }
    return results;
}

std::vector<PropertyResult> run_logs_suite(std::uint64_t seed) {
    std::vector<PropertyResult> results;

    {
        Rng rng(derive_seed(seed, 301));
        double max_err = 0.0;
        const int samples = 1000;
        for (int i = 0; i < samples; ++i) {
            int dim = 2 + static_cast<int>(rng.next_u64() % 11);
            Mat u = near_identity_sample(rng, dim, 0.02 + 0.48 * rng.uniform());
            max_err = std::max(max_err, op_norm(expm(log_near_identity(u)) - u));
        }
        results.push_back(
            {"logs", "series-roundtrip", max_err < 1e-10, max_err_detail(max_err, samples)});
    }
    {
        Rng rng(derive_seed(seed, 302));
        double max_err = 0.0;
        double max_re = 0.0;
        const int samples = 1000;
        for (int i = 0; i < samples; ++i) {
            int dim = 2 + static_cast<int>(rng.next_u64() % 11);
            Mat u = random_unitary(dim, derive_seed(seed, 40000 + i));
            Mat l = unitary_log(u);
            max_err = std::max(max_err, op_norm(expm(l) - u));
            max_re = std::max(max_re, op_norm(l + l.adjoint()) / 2.0);
        }
        bool pass = max_err < 1e-8 && max_re < 1e-8;
        results.push_back({"logs", "unitary-roundtrip", pass,
                           max_err_detail(max_err, samples) + ", max Re eigendrift " +
                               std::to_string(max_re)});
    }
    {
        // ||log u|| <= 2 ||u - I|| when ||u - I|| < 1/2
        Rng rng(derive_seed(seed, 303));
        bool ok = true;
        const int samples = 500;
        for (int i = 0; i < samples && ok; ++i) {
            int dim = 2 + static_cast<int>(rng.next_u64() % 11);
            double radius = 0.02 + 0.46 * rng.uniform();
            Mat u = near_identity_sample(rng, dim, radius);
            ok = op_norm(log_near_identity(u)) <= 2.0 * op_norm(u - Mat::Identity(dim, dim));
        }
        results.push_back({"logs", "log-bound", ok,
                           ok ? "bound held on all samples" : "bound violated"});
    }
    return results;
}

std::vector<PropertyResult> run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "predet") return run_predet_suite(seed);
    if (name == "chains") return run_chains_suite(seed);
    if (name == "logs") return run_logs_suite(seed);
    if (name == "all") {
        std::vector<PropertyResult> all = run_predet_suite(seed);
        auto chains = run_chains_suite(seed);
        auto logs = run_logs_suite(seed);
        all.insert(all.end(), chains.begin(), chains.end());
        all.insert(all.end(), logs.begin(), logs.end());
        return all;
    }
    fail(ErrorKind::InvalidInput, "run_suite: unknown suite '" + name + "'");
}

}  // namespace predet
