#include "predet/cohomology.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace predet {

namespace {

void require_normal_form(const GroupModel& model, const char* who) {
    if (!model.has_normal_form())
        fail(ErrorKind::NoNormalForm,
             std::string(who) + ": " + model.describe() + " has no computable normal form");
}

}  // namespace

Cocycle2 std_z2_cocycle() {
    GroupModel model = GroupModel::zd(2);
    return {model,
            [](const GroupElement& s, const GroupElement& t) {
                return static_cast<double>(zd_exponent(s, 1)) *
                       static_cast<double>(zd_exponent(t, 0));
            },
            "sigma_std"};
}

Cocycle2 zero_cocycle(const GroupModel& model) {
    return {model, [](const GroupElement&, const GroupElement&) { return 0.0; }, "zero"};
}

Cocycle2 scale_cocycle(const Cocycle2& sigma, double factor) {
    auto eval = sigma.eval;
    return {sigma.model,
            [eval, factor](const GroupElement& a, const GroupElement& b) {
                return factor * eval(a, b);
            },
            sigma.name + "*" + std::to_string(factor)};
}

Cocycle2 coboundary(const GroupModel& model,
                    const std::function<double(const GroupElement&)>& gamma) {
    require_normal_form(model, "coboundary");
    if (std::abs(gamma(identity(model))) != 0.0)
        fail(ErrorKind::InvalidInput, "coboundary: gamma(e) must be 0");
    return {model,
            [gamma](const GroupElement& a, const GroupElement& b) {
                return gamma(a) - gamma(multiply(a, b)) + gamma(b);
            },
            "coboundary"};
}

Chain1 make_chain1(const GroupModel& model,
                   std::vector<std::pair<long long, GroupElement>> terms) {
    require_normal_form(model, "make_chain1");
    Chain1 out{model, {}};
    for (auto& [k, g] : terms) {
        if (k == 0) continue;
        auto it = std::find_if(out.terms.begin(), out.terms.end(),
                               [&](const auto& t) { return t.second == g; });
        if (it == out.terms.end())
            out.terms.push_back({k, g});
        else
            it->first += k;
    }
    std::erase_if(out.terms, [](const auto& t) { return t.first == 0; });
    return out;
}

Chain2 make_chain2(const GroupModel& model, std::vector<Chain2::Term> terms) {
    require_normal_form(model, "make_chain2");
    Chain2 out{model, {}};
    for (auto& t : terms) {
        if (t.k == 0) continue;
        auto it = std::find_if(out.terms.begin(), out.terms.end(), [&](const Chain2::Term& u) {
            return u.a == t.a && u.b == t.b;
        });
        if (it == out.terms.end())
            out.terms.push_back(t);
        else
            it->k += t.k;
    }
    std::erase_if(out.terms, [](const Chain2::Term& t) { return t.k == 0; });
    return out;
}

Chain3 make_chain3(const GroupModel& model, std::vector<Chain3::Term> terms) {
    require_normal_form(model, "make_chain3");
    Chain3 out{model, {}};
    for (auto& t : terms) {
        if (t.k == 0) continue;
        auto it = std::find_if(out.terms.begin(), out.terms.end(), [&](const Chain3::Term& u) {
            return u.a == t.a && u.b == t.b && u.c == t.c;
        });
        if (it == out.terms.end())
            out.terms.push_back(t);
        else
            it->k += t.k;
    }
    std::erase_if(out.terms, [](const Chain3::Term& t) { return t.k == 0; });
    return out;
}

Chain2 chain2_add(const Chain2& lhs, const Chain2& rhs) {
    if (!(lhs.model == rhs.model))
        fail(ErrorKind::InvalidInput, "chain2_add: chains over different groups");
    std::vector<Chain2::Term> terms = lhs.terms;
    terms.insert(terms.end(), rhs.terms.begin(), rhs.terms.end());
    return make_chain2(lhs.model, std::move(terms));
}

Chain2 chain2_scale(const Chain2& c, long long k) {
    std::vector<Chain2::Term> terms;
    for (const auto& t : c.terms) terms.push_back({t.k * k, t.a, t.b});
    return make_chain2(c.model, std::move(terms));
}

Chain1 boundary2(const Chain2& c) {
    require_normal_form(c.model, "boundary2");
    std::vector<std::pair<long long, GroupElement>> terms;
    for (const auto& t : c.terms) {
        terms.push_back({t.k, t.a});
        terms.push_back({-t.k, multiply(t.a, t.b)});
        terms.push_back({t.k, t.b});
    }
    return make_chain1(c.model, std::move(terms));
}

Chain2 boundary3(const Chain3& c) {
    require_normal_form(c.model, "boundary3");
    std::vector<Chain2::Term> terms;
    for (const auto& t : c.terms) {
        terms.push_back({t.k, t.b, t.c});
        terms.push_back({-t.k, multiply(t.a, t.b), t.c});
        terms.push_back({t.k, t.a, multiply(t.b, t.c)});
        terms.push_back({-t.k, t.a, t.b});
    }
    return make_chain2(c.model, std::move(terms));
}

bool is_cycle(const Chain2& c) {
    require_normal_form(c.model, "is_cycle");
    return boundary2(c).terms.empty();
}

double kronecker(const Cocycle2& sigma, const Chain2& c) {
    if (!(sigma.model == c.model))
        fail(ErrorKind::InvalidInput, "kronecker: cocycle and chain over different groups");
    if (!is_cycle(c))
        fail(ErrorKind::NotACycle, "kronecker: chain is not a 2-cycle");
    double sum = 0.0;
    for (const auto& t : c.terms) sum += static_cast<double>(t.k) * sigma(t.a, t.b);
    return sum;
}

Chain2 hopf_to_bar(const std::vector<std::pair<GroupElement, GroupElement>>& pairs) {
    if (pairs.empty()) fail(ErrorKind::InvalidInput, "hopf_to_bar: empty pair list");
    GroupModel model = pairs.front().first.model;
    require_normal_form(model, "hopf_to_bar");
    for (const auto& [a, b] : pairs)
        if (!(a.model == model) || !(b.model == model))
            fail(ErrorKind::InvalidInput, "hopf_to_bar: mixed group models");

    // Partial commutator products I_i = [a_1,b_1] ... [a_i,b_i].
    auto commutator = [](const GroupElement& a, const GroupElement& b) {
        return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
    };
    std::vector<GroupElement> partial{identity(model)};
    for (const auto& [a, b] : pairs)
        partial.push_back(multiply(partial.back(), commutator(a, b)));
    if (!partial.back().is_identity())
        fail(ErrorKind::NotARelator,
             "hopf_to_bar: product of commutators is not the identity");

    std::vector<Chain2::Term> terms;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const GroupElement& a = pairs[i].first;
        const GroupElement& b = pairs[i].second;
        const GroupElement& before = partial[i];
        GroupElement pa = multiply(before, a);
        GroupElement pab = multiply(pa, b);
        terms.push_back({1, before, a});
        terms.push_back({1, pa, b});
        terms.push_back({-1, multiply(pab, inverse(a)), a});
        terms.push_back({-1, partial[i + 1], b});
    }
    Chain2 full = make_chain2(model, std::move(terms));

    // Degenerate cells each contribute exactly [e] to the boundary, so they
    // can be dropped as a block when their coefficients cancel.
    long long degenerate_net = 0;
    for (const auto& t : full.terms)
        if (t.a.is_identity() || t.b.is_identity()) degenerate_net += t.k;
    if (degenerate_net == 0)
        std::erase_if(full.terms, [](const Chain2::Term& t) {
            return t.a.is_identity() || t.b.is_identity();
        });

    if (!is_cycle(full))
        fail(ErrorKind::ConsistencyFailure, "hopf_to_bar: result is not a cycle");
    return full;
}

Chain2 std_z2_cycle() {
    GroupModel model = GroupModel::zd(2);
    GroupElement x = generator(model, 0);
    GroupElement y = generator(model, 1);
    return make_chain2(model, {{1, x, y}, {-1, y, x}});
}

Chain2 heisenberg_central_cycle() {
    GroupModel model = GroupModel::heisenberg();
    GroupElement a = generator(model, 0);
    GroupElement z = generator(model, 2);
    return make_chain2(model, {{1, a, z}, {-1, z, a}});
}

nlohmann::json chain2_to_json(const Chain2& c) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : c.terms)
        j.push_back({{"k", t.k}, {"a", format_element(t.a)}, {"b", format_element(t.b)}});
    return j;
}

Chain2 chain2_from_json(const GroupModel& model, const nlohmann::json& j) {
    if (!j.is_array()) fail(ErrorKind::InvalidInput, "chain2_from_json: expected an array");
    std::vector<Chain2::Term> terms;
    for (const auto& item : j) {
        if (!item.contains("k") || !item.contains("a") || !item.contains("b"))
            fail(ErrorKind::InvalidInput, "chain2_from_json: cell needs k, a, b");
        long long k = item.at("k").get<long long>();
        GroupElement a = element_from_word(model, parse_word(model, item.at("a").get<std::string>()));
        GroupElement b = element_from_word(model, parse_word(model, item.at("b").get<std::string>()));
        terms.push_back({k, a, b});
    }
    return make_chain2(model, std::move(terms));
}

}  // namespace predet
