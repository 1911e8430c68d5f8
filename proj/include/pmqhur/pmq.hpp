#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmqhur/errors.hpp"

namespace pmqhur {

// Index into the element list of a PmqSpec or GroupSpec.
using ElemId = int;

using SymbolTable = std::map<std::pair<std::string, std::string>, std::string>;

// A finite partially multiplicative quandle presented by tables.
// Elements are opaque symbols; all algebra is table lookup.
class PmqSpec {
public:
    PmqSpec() = default;

    // Builds the indexed tables from symbol-keyed maps. Throws
    // StructuralError when a symbol is not in the element list, the unit is
    // missing, the conjugation table is not total, or an element repeats.
    static PmqSpec make(std::vector<std::string> elements, const std::string& unit,
                        const SymbolTable& product, const SymbolTable& conj);

    int size() const { return static_cast<int>(elements_.size()); }
    ElemId unit() const { return unit_; }
    bool is_unit(ElemId a) const { return a == unit_; }

    std::optional<ElemId> product(ElemId a, ElemId b) const {
        int v = product_[idx(a, b)];
        if (v < 0) return std::nullopt;
        return v;
    }
    ElemId conj(ElemId a, ElemId b) const { return conj_[idx(a, b)]; }
    // Unique x with x^b = a; meaningful only for specs whose conjugations
    // are bijections (i.e. valid PMQs).
    ElemId conj_inv(ElemId a, ElemId b) const { return conj_inv_[idx(a, b)]; }

    const std::string& symbol(ElemId a) const { return elements_[a]; }
    std::optional<ElemId> find(std::string_view symbol) const;

    // All elements except the unit, in table order.
    std::vector<ElemId> nonunit() const;

private:
    size_t idx(ElemId a, ElemId b) const { return static_cast<size_t>(a) * elements_.size() + b; }

    std::vector<std::string> elements_;
    ElemId unit_ = -1;
    std::vector<int> product_;   // -1 = undefined
    std::vector<int> conj_;      // total
    std::vector<int> conj_inv_;  // -1 where conj(-,b) is not a bijection
};

// A finite group presented by tables.
class GroupSpec {
public:
    GroupSpec() = default;

    static GroupSpec make(std::vector<std::string> elements, const std::string& unit,
                          const SymbolTable& mul,
                          const std::map<std::string, std::string>& inv);

    int size() const { return static_cast<int>(elements_.size()); }
    ElemId unit() const { return unit_; }
    ElemId mul(ElemId a, ElemId b) const { return mul_[static_cast<size_t>(a) * elements_.size() + b]; }
    ElemId inv(ElemId a) const { return inv_[a]; }
    ElemId conj(ElemId a, ElemId b) const { return mul(mul(inv(b), a), b); }

    const std::string& symbol(ElemId a) const { return elements_[a]; }
    std::optional<ElemId> find(std::string_view symbol) const;

private:
    std::vector<std::string> elements_;
    ElemId unit_ = -1;
    std::vector<int> mul_;
    std::vector<int> inv_;
};

// A PMQ-group pair (Q, G, e, r): e maps Q into G, r is a right G-action on Q.
struct PairSpec {
    PmqSpec pmq;
    GroupSpec group;
    std::vector<ElemId> e;               // Q -> G, indexed by PMQ element
    std::vector<std::vector<ElemId>> r;  // per G element, a permutation of Q

    static PairSpec make(PmqSpec pmq, GroupSpec group,
                         const std::map<std::string, std::string>& e,
                         const std::map<std::string, std::map<std::string, std::string>>& r);
};

struct Violation {
    std::string axiom;
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_pmq(const PmqSpec& spec);
ValidationReport validate_group(const GroupSpec& spec);
ValidationReport validate_pair(const PairSpec& pair);

struct ClassificationReport {
    bool augmented = false;
    bool complete = false;
    bool locally_finite = false;
    std::vector<int> norms;            // by element id, meaningful iff locally_finite
    std::vector<ElemId> cycle_witness; // nonempty iff !locally_finite
};

// Table scans for augmented/complete; local finiteness and norms by the
// longest-decomposition dynamic program with cycle detection on the graph
// of one-letter extensions b -> b*g, g nonunit.
ClassificationReport classify(const PmqSpec& spec);

// Restriction of the tables to elements of norm <= k; products landing
// outside become undefined. Throws NormUnavailable when the spec is not
// locally finite.
PmqSpec sub_pmq_norm_le(const PmqSpec& spec, int k);

} // namespace pmqhur
