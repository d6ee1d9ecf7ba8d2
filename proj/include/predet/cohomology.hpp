#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "predet/groups.hpp"

namespace predet {

// Real-valued normalized 2-cocycle as a function object; groups are
// infinite, so there is no table representation. The cocycle identity
// sigma(a,b) + sigma(ab,c) = sigma(a,bc) + sigma(b,c) is property-tested on
// sampled triples, not proven.
struct Cocycle2 {
    GroupModel model;
    std::function<double(const GroupElement&, const GroupElement&)> eval;
    std::string name;

    double operator()(const GroupElement& a, const GroupElement& b) const { return eval(a, b); }
};

// The standard generator cocycle on Z^2: sigma(s, t) = s_2 * t_1.
Cocycle2 std_z2_cocycle();
Cocycle2 zero_cocycle(const GroupModel& model);
Cocycle2 scale_cocycle(const Cocycle2& sigma, double factor);

// The coboundary of gamma: sigma(a,b) = gamma(a) - gamma(ab) + gamma(b).
// Requires gamma(e) = 0 so the result is normalized.
Cocycle2 coboundary(const GroupModel& model,
                    const std::function<double(const GroupElement&)>& gamma);

// Integer formal sums of bar cells. Zero-coefficient cells are removed and
// equal cells merged on construction; this needs element equality, so chains
// exist only over models with a normal form.
struct Chain1 {
    GroupModel model;
    std::vector<std::pair<long long, GroupElement>> terms;
};

struct Chain2 {
    struct Term {
        long long k;
        GroupElement a, b;
    };
    GroupModel model;
    std::vector<Term> terms;
};

struct Chain3 {
    struct Term {
        long long k;
        GroupElement a, b, c;
    };
    GroupModel model;
    std::vector<Term> terms;
};

Chain1 make_chain1(const GroupModel& model,
                   std::vector<std::pair<long long, GroupElement>> terms);
Chain2 make_chain2(const GroupModel& model, std::vector<Chain2::Term> terms);
Chain3 make_chain3(const GroupModel& model, std::vector<Chain3::Term> terms);

Chain2 chain2_add(const Chain2& lhs, const Chain2& rhs);
Chain2 chain2_scale(const Chain2& c, long long k);

// d2[a|b] = [a] - [ab] + [b], extended linearly.
Chain1 boundary2(const Chain2& c);

// d3[a|b|c] = [b|c] - [ab|c] + [a|bc] - [a|b], extended linearly.
Chain2 boundary3(const Chain3& c);

bool is_cycle(const Chain2& c);

// <sigma, c> = sum_j k_j sigma(a_j, b_j). Refuses non-cycles: the value is
// not class-invariant off ker d2.
double kronecker(const Cocycle2& sigma, const Chain2& c);

// Bar 2-cycle representing the Hopf class of a product-of-commutators
// relator, from the images (a_i, b_i) of its letters. The images must
// satisfy prod [a_i, b_i] = e. Cells with an identity coordinate pair to
// zero against normalized cocycles; they are dropped whenever dropping
// preserves the cycle condition.
Chain2 hopf_to_bar(const std::vector<std::pair<GroupElement, GroupElement>>& pairs);

// The fundamental cycle [x|y] - [y|x] of Z^2.
Chain2 std_z2_cycle();

// A central 2-cycle [a|z] - [z|a] of the Heisenberg group.
Chain2 heisenberg_central_cycle();

// Chains serialize as [{"k": -1, "a": "y", "b": "x"}, ...].
nlohmann::json chain2_to_json(const Chain2& c);
Chain2 chain2_from_json(const GroupModel& model, const nlohmann::json& j);

}  // namespace predet
