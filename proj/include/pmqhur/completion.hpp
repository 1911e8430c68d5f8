#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmqhur/pmq.hpp"

namespace pmqhur {

// A decomposition word: letters are nonunit elements of the base PMQ.
// The empty word represents the unit of the completion.
using Word = std::vector<ElemId>;

using ClassId = int;

struct HqClass {
    Word canonical;              // lexicographically minimal member
    int norm = 0;                // sum of letter norms
    std::optional<ElemId> in_q;  // the PMQ element this class realizes, if any
};

// The completion of a locally finite PMQ, truncated at a norm bound: word
// classes under the standard moves
//   MERGE  (..., a, b, ...) -> (..., ab, ...)   when ab is defined
//   SPLIT  the inverse of MERGE
//   BRAID  (..., a, b, ...) <-> (..., b, a^b, ...)
// Classes partition all words of norm <= bound.
class TruncatedCompletion {
public:
    static TruncatedCompletion build(const PmqSpec& spec, int max_norm);

    const PmqSpec& base() const { return base_; }
    int bound() const { return bound_; }
    int size() const { return static_cast<int>(classes_.size()); }

    const HqClass& cls(ClassId u) const { return classes_[u]; }
    ClassId unit_class() const { return unit_class_; }
    bool is_unit(ClassId u) const { return u == unit_class_; }

    std::optional<ClassId> find_word(const Word& w) const;
    ClassId class_of(const Word& w) const; // throws TruncationOverflow when outside
    ClassId class_of_element(ElemId a) const;

    ClassId product(ClassId u, ClassId v) const;
    ClassId conj(ClassId u, ClassId w) const;
    std::vector<Word> decompositions(ClassId u) const;

    const std::vector<int>& norms() const { return norms_; }
    int norm_of_element(ElemId a) const { return norms_[a]; }

private:
    PmqSpec base_;
    int bound_ = 0;
    std::vector<int> norms_;
    std::vector<HqClass> classes_;
    std::vector<std::vector<Word>> members_; // per class, sorted by (length, lex)
    std::vector<std::pair<Word, ClassId>> lookup_; // sorted by word
    ClassId unit_class_ = -1;
};

// Spec-facing name for TruncatedCompletion::build.
inline TruncatedCompletion complete(const PmqSpec& spec, int max_norm) {
    return TruncatedCompletion::build(spec, max_norm);
}

// Canonical textual form: letters joined by "."; the unit symbol (or the
// empty string) denotes the empty word.
std::string word_to_string(const Word& w, const PmqSpec& spec);
Word word_from_string(const std::string& text, const PmqSpec& spec);

// The truncated completion as a finite PMQ in its own right: elements are
// the classes (named by canonical words), the product is defined when the
// norms fit under the bound. This is the base to use when a component
// outside Q should be treated with completed labels, where a merged cluster
// of points is itself an interior point.
PmqSpec completion_as_pmq(const TruncatedCompletion& tc);

} // namespace pmqhur
