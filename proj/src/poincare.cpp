#include "pmqhur/poincare.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace pmqhur {

std::pair<bool, std::optional<std::tuple<ElemId, ElemId, ElemId>>>
intrinsic_norm_check(const PmqSpec& spec) {
    ClassificationReport cls = classify(spec);
    if (!cls.locally_finite)
        throw NormUnavailable("intrinsic norm check requires a locally finite PMQ");
    for (ElemId a = 0; a < spec.size(); ++a)
        for (ElemId b = 0; b < spec.size(); ++b)
            if (auto ab = spec.product(a, b))
                if (cls.norms[*ab] != cls.norms[a] + cls.norms[b])
                    return {false, std::make_tuple(a, b, *ab)};
    return {true, std::nullopt};
}

namespace {

int thread_budget(size_t jobs) {
    unsigned cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("PMQHUR_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<size_t>(cap, jobs));
}

// Runs fn(k) for k in [0, jobs), at most PMQHUR_THREADS at a time. Results
// must be written into per-index slots by the callers.
template <typename Fn>
void parallel_for(size_t jobs, Fn&& fn) {
    int workers = thread_budget(jobs);
    if (workers <= 1) {
        for (size_t k = 0; k < jobs; ++k) fn(k);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t k = next.fetch_add(1);
                if (k >= jobs) return;
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<ElemId> sorted_nonunit(const PmqSpec& spec) {
    std::vector<ElemId> elems = spec.nonunit();
    std::sort(elems.begin(), elems.end(), [&](ElemId x, ElemId y) {
        return spec.symbol(x) < spec.symbol(y);
    });
    return elems;
}

} // namespace

PoincareReport poincare_report(const PmqSpec& spec, Ring ring) {
    PoincareReport report;
    report.ring = ring;

    auto [intrinsic, witness] = intrinsic_norm_check(spec);
    report.norm_is_intrinsic = intrinsic;
    report.norm_witness = witness;
    if (!intrinsic) {
        report.overall = false;
        return report;
    }

    ClassificationReport cls = classify(spec);
    std::vector<ElemId> elems = sorted_nonunit(spec);
    report.verdicts.resize(elems.size());
    parallel_for(elems.size(), [&](size_t k) {
        ElemId a = elems[k];
        PoincareVerdict v;
        v.a = a;
        v.norm = cls.norms[a];
        TruncatedCompletion tc = complete(spec, v.norm);
        CellSet cells = enumerate_cells(spec, tc, tc.class_of_element(a));
        HomologyResult relative = homology(build_total_complex(cells, true, ring, tc));
        v.degree = relative.concentrated_degree();
        v.passes = relative.concentrated_rank_one(2 * v.norm);
        HomologyResult absolute = homology(build_total_complex(cells, false, ring, tc));
        v.connected = !absolute.groups.empty() && absolute.groups[0].free_rank == 1 &&
                      absolute.groups[0].torsion.empty();
        report.verdicts[k] = v;
    });

    report.overall = std::all_of(report.verdicts.begin(), report.verdicts.end(),
                                 [](const PoincareVerdict& v) { return v.passes; });
    return report;
}

std::vector<CoconnectRow> coconnectivity_probe(const PmqSpec& spec, Ring ring) {
    auto [intrinsic, witness] = intrinsic_norm_check(spec);
    if (!intrinsic)
        throw NormUnavailable("coconnectivity probe requires an intrinsic norm");
    ClassificationReport cls = classify(spec);
    PmqSpec sub = sub_pmq_norm_le(spec, 1);

    std::vector<ElemId> elems = sorted_nonunit(spec);
    std::vector<CoconnectRow> rows(elems.size());
    parallel_for(elems.size(), [&](size_t k) {
        ElemId a = elems[k];
        CoconnectRow row;
        row.a = a;
        row.norm = cls.norms[a];
        const int degree = 2 * row.norm;

        TruncatedCompletion tc = complete(spec, row.norm);
        CellSet cells = enumerate_cells(spec, tc, tc.class_of_element(a));
        HomologyResult full = homology(build_total_complex(cells, true, ring, tc));
        row.rank_full = degree < static_cast<int>(full.groups.size())
                            ? full.groups[degree].free_rank
                            : 0;

        // In the completion of the norm <= 1 sub-PMQ the component of a may
        // split into several classes; their top ranks add up.
        TruncatedCompletion sub_tc = complete(sub, row.norm);
        row.rank_sub = 0;
        for (ClassId c = 0; c < sub_tc.size(); ++c) {
            Word image;
            for (ElemId letter : sub_tc.cls(c).canonical) {
                auto id = spec.find(sub.symbol(letter));
                image.push_back(*id);
            }
            if (tc.find_word(image) != std::optional<ClassId>(tc.class_of_element(a))) continue;
            CellSet sub_cells = enumerate_cells(sub, sub_tc, c);
            HomologyResult h = homology(build_total_complex(sub_cells, true, ring, sub_tc));
            if (degree < static_cast<int>(h.groups.size()))
                row.rank_sub += h.groups[degree].free_rank;
        }
        row.equal = row.rank_sub == row.rank_full;
        rows[k] = row;
    });
    return rows;
}

} // namespace pmqhur
