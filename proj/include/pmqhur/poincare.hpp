#pragma once

#include <optional>
#include <tuple>

#include "pmqhur/chain.hpp"

namespace pmqhur {

struct PoincareVerdict {
    ElemId a = -1;
    int norm = 0;
    std::optional<int> degree; // the unique degree carrying relative homology
    bool passes = false;       // homology is R concentrated in degree 2*norm
    bool connected = false;    // absolute H_0 has rank 1
};

struct PoincareReport {
    Ring ring;
    bool norm_is_intrinsic = false;
    std::optional<std::tuple<ElemId, ElemId, ElemId>> norm_witness; // (a, b, ab)
    std::vector<PoincareVerdict> verdicts; // one per nonunit element, sorted by symbol
    bool overall = false;
};

// True iff h(ab) = h(a) + h(b) for every defined product; otherwise the
// witness is a violating triple. Throws NormUnavailable when the spec is not
// locally finite.
std::pair<bool, std::optional<std::tuple<ElemId, ElemId, ElemId>>>
intrinsic_norm_check(const PmqSpec& spec);

// Relative-criterion test, one component per nonunit element of Q. Honors
// PMQHUR_THREADS for per-element parallelism.
PoincareReport poincare_report(const PmqSpec& spec, Ring ring);

struct CoconnectRow {
    ElemId a = -1;
    int norm = 0;
    int rank_sub = 0;  // top-degree relative rank over the norm <= 1 sub-PMQ
    int rank_full = 0; // same over the full PMQ
    bool equal = false;
};

std::vector<CoconnectRow> coconnectivity_probe(const PmqSpec& spec, Ring ring);

} // namespace pmqhur
