#include "predet/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace predet {

Word free_reduce(const Word& w) {
    Word out;
    for (const Letter& l : w.letters) {
        if (l.exp == 0) continue;
        if (!out.letters.empty() && out.letters.back().gen == l.gen) {
            out.letters.back().exp += l.exp;
            if (out.letters.back().exp == 0) out.letters.pop_back();
        } else {
            out.letters.push_back(l);
        }
    }
    return out;
}

Word word_inverse(const Word& w) {
    Word out;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back({it->gen, -it->exp});
    return out;
}

Word word_concat(const Word& lhs, const Word& rhs) {
    Word out = lhs;
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return free_reduce(out);
}

GroupModel GroupModel::zd(int d) {
    if (d < 1) fail(ErrorKind::InvalidInput, "GroupModel::zd: d must be >= 1");
    std::vector<std::string> names;
    if (d == 1) {
        names = {"x"};
    } else if (d == 2) {
        names = {"x", "y"};
    } else {
        for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
    }
    return GroupModel(GroupKind::ZD, d, std::move(names));
}

GroupModel GroupModel::free_group(int k) {
    if (k < 1) fail(ErrorKind::InvalidInput, "GroupModel::free_group: k must be >= 1");
    std::vector<std::string> names;
    if (k == 1) {
        names = {"x"};
    } else if (k == 2) {
        names = {"x", "y"};
    } else {
        for (int i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    }
    return GroupModel(GroupKind::Free, k, std::move(names));
}

GroupModel GroupModel::heisenberg() {
    return GroupModel(GroupKind::Heisenberg, 3, {"a", "b", "z"});
}

GroupModel GroupModel::surface(int genus) {
    if (genus < 2) fail(ErrorKind::InvalidGenus, "GroupModel::surface: genus must be >= 2");
    std::vector<std::string> names;
    for (int i = 1; i <= genus; ++i) {
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
    }
    return GroupModel(GroupKind::Surface, genus, std::move(names));
}

int GroupModel::generator_count() const {
    switch (kind_) {
        case GroupKind::ZD: return param_;
        case GroupKind::Free: return param_;
        case GroupKind::Heisenberg: return 3;
        case GroupKind::Surface: return 2 * param_;
    }
    return 0;
}

std::string GroupModel::describe() const {
    switch (kind_) {
        case GroupKind::ZD: return "Z^" + std::to_string(param_);
        case GroupKind::Free: return "F_" + std::to_string(param_);
        case GroupKind::Heisenberg: return "H3";
        case GroupKind::Surface: return "Surface(g=" + std::to_string(param_) + ")";
    }
    return "?";
}

namespace {

void check_letters(const GroupModel& model, const Word& w, const char* who) {
    int count = model.generator_count();
    for (const Letter& l : w.letters)
        if (l.gen < 0 || l.gen >= count)
            fail(ErrorKind::InvalidInput,
                 std::string(who) + ": generator index out of range for " + model.describe());
}

Word zd_normal_form(int d, const Word& w) {
    std::vector<long long> exps(static_cast<size_t>(d), 0);
    for (const Letter& l : w.letters) exps[static_cast<size_t>(l.gen)] += l.exp;
    Word out;
    for (int g = 0; g < d; ++g)
        if (exps[static_cast<size_t>(g)] != 0) out.letters.push_back({g, exps[static_cast<size_t>(g)]});
    return out;
}

}  // namespace

GroupElement identity(const GroupModel& model) { return {model, Word{}}; }

GroupElement element_from_word(const GroupModel& model, const Word& w) {
    check_letters(model, w, "element_from_word");
    switch (model.kind()) {
        case GroupKind::ZD:
            return {model, zd_normal_form(model.param(), w)};
        case GroupKind::Heisenberg:
            return heisenberg_normal_form(w);
        case GroupKind::Free:
        case GroupKind::Surface:
            return {model, free_reduce(w)};
    }
    fail(ErrorKind::InvalidInput, "element_from_word: unknown model");
}

GroupElement generator(const GroupModel& model, int gen, long long exp) {
    return element_from_word(model, Word{{{gen, exp}}});
}

GroupElement multiply(const GroupElement& x, const GroupElement& y) {
    if (!(x.model == y.model))
        fail(ErrorKind::InvalidInput, "multiply: elements live in different groups");
    if (!x.model.has_normal_form())
        fail(ErrorKind::NoNormalForm,
             "multiply: " + x.model.describe() + " has no computable normal form");
    Word w = x.canonical;
    w.letters.insert(w.letters.end(), y.canonical.letters.begin(), y.canonical.letters.end());
    return element_from_word(x.model, w);
}

GroupElement inverse(const GroupElement& x) {
    if (!x.model.has_normal_form())
        fail(ErrorKind::NoNormalForm,
             "inverse: " + x.model.describe() + " has no computable normal form");
    return element_from_word(x.model, word_inverse(x.canonical));
}

GroupElement heisenberg_normal_form(const Word& w) {
    GroupModel model = GroupModel::heisenberg();
    check_letters(model, w, "heisenberg_normal_form");
    // Right-multiplying a^i b^j z^k by a^e moves a^e left past b^j and
    // emits z^{j e}; b and z land in place.
    long long i = 0, j = 0, k = 0;
    for (const Letter& l : w.letters) {
        switch (l.gen) {
            case 0:
                i += l.exp;
                k += j * l.exp;
                break;
            case 1: j += l.exp; break;
            case 2: k += l.exp; break;
        }
    }
    Word out;
    if (i != 0) out.letters.push_back({0, i});
    if (j != 0) out.letters.push_back({1, j});
    if (k != 0) out.letters.push_back({2, k});
    return {model, out};
}

std::array<long long, 3> heisenberg_coords(const GroupElement& x) {
    if (x.model.kind() != GroupKind::Heisenberg)
        fail(ErrorKind::InvalidInput, "heisenberg_coords: not a Heisenberg element");
    std::array<long long, 3> c{0, 0, 0};
    for (const Letter& l : x.canonical.letters) c[static_cast<size_t>(l.gen)] = l.exp;
    return c;
}

long long zd_exponent(const GroupElement& x, int gen) {
    if (x.model.kind() != GroupKind::ZD)
        fail(ErrorKind::InvalidInput, "zd_exponent: not a Z^d element");
    for (const Letter& l : x.canonical.letters)
        if (l.gen == gen) return l.exp;
    return 0;
}

std::vector<std::pair<Word, Word>> surface_relator(int genus) {
    if (genus < 2) fail(ErrorKind::InvalidGenus, "surface_relator: genus must be >= 2");
    std::vector<std::pair<Word, Word>> pairs;
    for (int i = 0; i < genus; ++i)
        pairs.push_back({Word{{{2 * i, 1}}}, Word{{{2 * i + 1, 1}}}});
    return pairs;
}

Word surface_relator_word(int genus) {
    Word w;
    for (auto& [a, b] : surface_relator(genus)) {
        // [a, b] = a b a^-1 b^-1
        w = word_concat(w, a);
        w = word_concat(w, b);
        w = word_concat(w, word_inverse(a));
        w = word_concat(w, word_inverse(b));
    }
    return w;
}

HomToZ2::HomToZ2(int genus) : genus_(genus) {
    if (genus < 2) fail(ErrorKind::InvalidGenus, "HomToZ2: genus must be >= 2");
    if (!apply(surface_relator_word(genus)).is_identity())
        fail(ErrorKind::ConsistencyFailure, "HomToZ2: relator does not map to 0");
}

GroupElement HomToZ2::apply(const Word& w) const {
    long long e1 = 0, e2 = 0;
    for (const Letter& l : w.letters) {
        if (l.gen == 0) e1 += l.exp;
        if (l.gen == 1) e2 += l.exp;
    }
    Word img;
    if (e1 != 0) img.letters.push_back({0, e1});
    if (e2 != 0) img.letters.push_back({1, e2});
    return {GroupModel::zd(2), img};
}

GroupElement HomToZ2::apply(const GroupElement& x) const {
    if (x.model.kind() != GroupKind::Surface || x.model.param() != genus_)
        fail(ErrorKind::InvalidInput, "HomToZ2: element is not in Surface(g=" +
                                          std::to_string(genus_) + ")");
    return apply(x.canonical);
}

Word parse_word(const GroupModel& model, const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "e")) return Word{};

    std::map<std::string, int> index;
    const auto& names = model.generator_names();
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);

    Word w;
    for (const std::string& t : tokens) {
        std::string name = t;
        long long exp = 1;
        if (auto caret = t.find('^'); caret != std::string::npos) {
            name = t.substr(0, caret);
            std::string etext = t.substr(caret + 1);
            char* end = nullptr;
            exp = std::strtoll(etext.c_str(), &end, 10);
            if (etext.empty() || end == nullptr || *end != '\0')
                fail(ErrorKind::InvalidInput, "parse_word: bad exponent in '" + t + "'");
        }
        auto it = index.find(name);
        if (it == index.end())
            fail(ErrorKind::InvalidInput, "parse_word: unknown generator '" + name +
                                              "' for " + model.describe());
        w.letters.push_back({it->second, exp});
    }
    return free_reduce(w);
}

std::string format_word(const GroupModel& model, const Word& w) {
    if (w.letters.empty()) return "e";
    const auto& names = model.generator_names();
    std::string out;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i > 0) out += ' ';
        const Letter& l = w.letters[i];
        out += names.at(static_cast<size_t>(l.gen));
        if (l.exp != 1) out += "^" + std::to_string(l.exp);
    }
    return out;
}

}  // namespace predet
