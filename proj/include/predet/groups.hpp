#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "predet/errors.hpp"

namespace predet {

// A letter is a generator index with a nonzero exponent; a word is the
// ordered product of its letters, read left to right.
struct Letter {
    int gen = 0;
    long long exp = 0;
    friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
    std::vector<Letter> letters;
    bool is_identity() const { return letters.empty(); }
    friend bool operator==(const Word&, const Word&) = default;
};

// Merge adjacent letters on the same generator, drop zero exponents,
// cascade. Never lengthens the word.
Word free_reduce(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& lhs, const Word& rhs);

enum class GroupKind { ZD, Free, Heisenberg, Surface };

// The concrete groups in play: Z^d, free groups F_k, the discrete
// Heisenberg group <a,b,z | ba = abz, z central>, and surface groups (the
// last via free-word data and the distinguished relator only; no word
// problem solver is offered for them).
class GroupModel {
  public:
    static GroupModel zd(int d);
    static GroupModel free_group(int k);
    static GroupModel heisenberg();
    static GroupModel surface(int genus);

    GroupKind kind() const { return kind_; }
    int param() const { return param_; }  // d, k, 3, or genus
    int generator_count() const;
    bool has_normal_form() const { return kind_ != GroupKind::Surface; }
    const std::vector<std::string>& generator_names() const { return names_; }
    std::string describe() const;

    friend bool operator==(const GroupModel& a, const GroupModel& b) {
        return a.kind_ == b.kind_ && a.param_ == b.param_;
    }

  private:
    GroupModel(GroupKind kind, int param, std::vector<std::string> names)
        : kind_(kind), param_(param), names_(std::move(names)) {}
    GroupKind kind_;
    int param_;
    std::vector<std::string> names_;
};

// An element is stored by its canonical word: exponent-ordered for Z^d,
// a^i b^j z^k for Heisenberg, freely reduced for free (and surface, where
// the word is the data and equality is free-word equality only).
struct GroupElement {
    GroupModel model;
    Word canonical;

    bool is_identity() const { return canonical.is_identity(); }
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.model == b.model && a.canonical == b.canonical;
    }
};

GroupElement identity(const GroupModel& model);
GroupElement element_from_word(const GroupModel& model, const Word& w);
GroupElement generator(const GroupModel& model, int gen, long long exp = 1);

// Group law via normal forms. Surface -> NoNormalForm.
GroupElement multiply(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);

// Canonical a^i b^j z^k for a word over {0:a, 1:b, 2:z}, accruing central
// z's while pushing a's left past b's (ba = abz).
GroupElement heisenberg_normal_form(const Word& w);

// (i, j, k) coordinates of a Heisenberg element.
std::array<long long, 3> heisenberg_coords(const GroupElement& x);

// Exponent of one generator in a Z^d element.
long long zd_exponent(const GroupElement& x, int gen);

// Generator pairs (a_i, b_i) of the genus-g surface group, as single-letter
// words over 2g generators; the implied relator is the product of their
// commutators. g < 2 -> InvalidGenus.
std::vector<std::pair<Word, Word>> surface_relator(int genus);

// The relator word itself, prod_i a_i b_i a_i^-1 b_i^-1.
Word surface_relator_word(int genus);

// The pullback homomorphism Surface(g) -> Z^2 sending a1 -> x, b1 -> y and
// every other generator to 0; well-defined because the relator, a product
// of commutators, dies in the abelian image (checked on construction).
class HomToZ2 {
  public:
    explicit HomToZ2(int genus);
    int genus() const { return genus_; }
    GroupElement apply(const Word& w) const;
    GroupElement apply(const GroupElement& x) const;

  private:
    int genus_;
};

// "a^2 b^-1 z^3" style text, parsed case-sensitively against the model's
// generator names; "e" is the identity.
Word parse_word(const GroupModel& model, const std::string& text);
std::string format_word(const GroupModel& model, const Word& w);
inline std::string format_element(const GroupElement& x) {
    return format_word(x.model, x.canonical);
}

}  // namespace predet
