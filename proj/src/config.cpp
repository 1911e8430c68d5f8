#include "pmqhur/config.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pmqhur {

std::vector<size_t> Configuration::reading_order() const {
    std::vector<size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        return points[a].y < points[b].y;
    });
    return order;
}

ElemId omega(const Configuration& c, const PairSpec& pair, const TruncatedCompletion& tc) {
    ElemId acc = pair.group.unit();
    for (size_t k : c.reading_order()) {
        const LabeledPoint& pt = c.points[k];
        if (pt.fine()) {
            for (ElemId letter : tc.cls(std::get<FineLabel>(pt.label).cls).canonical)
                acc = pair.group.mul(acc, pair.e[letter]);
        } else {
            acc = pair.group.mul(acc, std::get<CoarseLabel>(pt.label).g);
        }
    }
    return acc;
}

ClassId omega_hat(const Configuration& c, const TruncatedCompletion& tc) {
    Word word;
    for (size_t k : c.reading_order()) {
        const LabeledPoint& pt = c.points[k];
        if (!pt.fine())
            throw CoarsePointPresent("omega_hat needs a configuration with fine points only");
        const Word& w = tc.cls(std::get<FineLabel>(pt.label).cls).canonical;
        word.insert(word.end(), w.begin(), w.end());
    }
    return tc.class_of(word);
}

namespace {

// Distinct values of `coords` that avoid 0 and 1, sorted.
std::vector<Rat> interior_values(const std::vector<Rat>& coords) {
    std::set<Rat> values(coords.begin(), coords.end());
    values.erase(Rat(0));
    values.erase(Rat(1));
    return {values.begin(), values.end()};
}

int grid_index(const std::vector<Rat>& interior, const Rat& v) {
    if (v == 0) return 0;
    if (v == 1) return static_cast<int>(interior.size()) + 1;
    auto it = std::lower_bound(interior.begin(), interior.end(), v);
    return static_cast<int>(it - interior.begin()) + 1;
}

} // namespace

CellLocation cell_of(const Configuration& c, const TruncatedCompletion& tc) {
    std::vector<Rat> xs, ys;
    for (const LabeledPoint& pt : c.points) {
        if (!pt.fine())
            throw CoarsePointPresent("cell_of needs a configuration with fine points only");
        xs.push_back(pt.x);
        ys.push_back(pt.y);
    }
    std::vector<Rat> us = interior_values(xs);
    std::vector<Rat> ut = interior_values(ys);
    ArrayPQ ua(static_cast<int>(us.size()), static_cast<int>(ut.size()), tc.unit_class());
    for (const LabeledPoint& pt : c.points)
        ua.set(grid_index(us, pt.x), grid_index(ut, pt.y), std::get<FineLabel>(pt.label).cls);
    return CellLocation(std::move(ua), std::move(us), std::move(ut));
}

Configuration upsilon(const CellLocation& loc, const TruncatedCompletion& tc) {
    if (!is_nondegenerate(loc.ua, tc))
        throw DegenerateCell("upsilon needs a non-degenerate array");
    if (static_cast<int>(loc.us.size()) != loc.ua.p() ||
        static_cast<int>(loc.ut.size()) != loc.ua.q())
        throw InputError("coordinate lists do not match the array bidegree");

    ArrayPQ ua = loc.ua;
    // extended coordinates: s_0 = 0, s_{p+1} = 1
    std::vector<Rat> s;
    s.push_back(0);
    s.insert(s.end(), loc.us.begin(), loc.us.end());
    s.push_back(1);
    std::vector<Rat> t;
    t.push_back(0);
    t.insert(t.end(), loc.ut.begin(), loc.ut.end());
    t.push_back(1);
    for (size_t k = 0; k + 1 < s.size(); ++k)
        if (s[k] > s[k + 1])
            throw MonotonicityViolation("horizontal coordinates are not nondecreasing in [0,1]");
    for (size_t k = 0; k + 1 < t.size(); ++k)
        if (t[k] > t[k + 1])
            throw MonotonicityViolation("vertical coordinates are not nondecreasing in [0,1]");

    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t k = 0; k + 1 < s.size(); ++k) {
            if (s[k] == s[k + 1]) {
                ua = face_h(ua, static_cast<int>(k), tc);
                s.erase(s.begin() + k);
                merged = true;
                break;
            }
        }
        if (merged) continue;
        for (size_t k = 0; k + 1 < t.size(); ++k) {
            if (t[k] == t[k + 1]) {
                ua = face_v(ua, static_cast<int>(k), tc);
                t.erase(t.begin() + k);
                merged = true;
                break;
            }
        }
    }

    Configuration out;
    const ClassId one = tc.unit_class();
    for (int i = 0; i <= ua.p() + 1; ++i)
        for (int j = 0; j <= ua.q() + 1; ++j)
            if (ua.at(i, j) != one)
                out.points.push_back({s[i], t[j], FineLabel{ua.at(i, j)}});
    return out;
}

Configuration collide(const Configuration& c, const std::vector<Rat>& us_targets,
                      const std::vector<Rat>& ut_targets, const TruncatedCompletion& tc) {
    CellLocation loc = cell_of(c, tc);
    if (us_targets.size() != loc.us.size() || ut_targets.size() != loc.ut.size())
        throw MonotonicityViolation("target lists do not match the configuration bidegree");
    auto check = [](const std::vector<Rat>& targets) {
        Rat prev = 0;
        for (const Rat& v : targets) {
            if (v < prev) throw MonotonicityViolation("targets are not weakly monotone");
            prev = v;
        }
        if (prev > 1) throw MonotonicityViolation("targets leave the unit interval");
    };
    check(us_targets);
    check(ut_targets);
    return upsilon(CellLocation(loc.ua, us_targets, ut_targets), tc);
}

Configuration conj_global(const Configuration& c, ElemId g, const PairSpec& pair,
                          const TruncatedCompletion& tc) {
    Configuration out = c;
    for (LabeledPoint& pt : out.points) {
        if (pt.fine()) {
            Word w = tc.cls(std::get<FineLabel>(pt.label).cls).canonical;
            for (ElemId& letter : w) letter = pair.r[g][letter];
            pt.label = FineLabel{tc.class_of(w)};
        } else {
            ElemId h = std::get<CoarseLabel>(pt.label).g;
            pt.label = CoarseLabel{pair.group.conj(h, g)};
        }
    }
    return out;
}

namespace {

size_t extreme_coarse_point(const Configuration& c, bool leftmost) {
    if (c.points.empty()) throw NoBasePoint("empty configuration");
    size_t best = 0;
    for (size_t k = 1; k < c.points.size(); ++k) {
        if (leftmost ? c.points[k].x < c.points[best].x : c.points[k].x > c.points[best].x)
            best = k;
    }
    for (size_t k = 0; k < c.points.size(); ++k)
        if (k != best && c.points[k].x == c.points[best].x)
            throw NoBasePoint("extreme x coordinate is not unique");
    if (c.points[best].fine())
        throw NoBasePoint("extreme point carries no group label");
    return best;
}

} // namespace

Configuration act_left(const Configuration& c, ElemId g, const PairSpec& pair) {
    Configuration out = c;
    size_t k = extreme_coarse_point(out, true);
    ElemId h = std::get<CoarseLabel>(out.points[k].label).g;
    out.points[k].label = CoarseLabel{pair.group.mul(g, h)};
    return out;
}

Configuration act_right(const Configuration& c, ElemId g, const PairSpec& pair) {
    Configuration out = c;
    size_t k = extreme_coarse_point(out, false);
    ElemId h = std::get<CoarseLabel>(out.points[k].label).g;
    out.points[k].label = CoarseLabel{pair.group.mul(h, g)};
    return out;
}

Configuration reduce(const Configuration& c, const TruncatedCompletion& tc) {
    Configuration out;
    out.sites = c.sites;
    for (const LabeledPoint& pt : c.points) {
        if (pt.fine() && std::get<FineLabel>(pt.label).cls == tc.unit_class()) continue;
        out.points.push_back(pt);
    }
    return out;
}

bool is_reduced(const Configuration& c, const TruncatedCompletion& tc) {
    return std::none_of(c.points.begin(), c.points.end(), [&](const LabeledPoint& pt) {
        return pt.fine() && std::get<FineLabel>(pt.label).cls == tc.unit_class();
    });
}

namespace {

bool on_site(const Configuration& c, const Rat& x, const Rat& y) {
    return std::any_of(c.sites.begin(), c.sites.end(),
                       [&](const auto& s) { return s.first == x && s.second == y; });
}

} // namespace

bool neighborhood_contains(const Configuration& base, const RectCovering& cov,
                           const Configuration& cand, const PairSpec& pair,
                           const TruncatedCompletion& tc) {
    // strip separation: closed x-intervals pairwise disjoint
    for (size_t a = 0; a < cov.rects.size(); ++a)
        for (size_t b = a + 1; b < cov.rects.size(); ++b) {
            const auto& ra = cov.rects[a];
            const auto& rb = cov.rects[b];
            if (!(ra.x1 < rb.x0 || rb.x1 < ra.x0))
                throw CoveringNotStripSeparated("closed x-intervals of rectangles overlap");
        }

    // adaptedness: one base point per rectangle, all base points covered,
    // fine rectangles avoid the sites
    std::vector<int> base_point_of(cov.rects.size(), -1);
    std::vector<char> covered(base.points.size(), 0);
    for (size_t r = 0; r < cov.rects.size(); ++r) {
        for (size_t k = 0; k < base.points.size(); ++k) {
            if (!cov.rects[r].contains(base.points[k].x, base.points[k].y)) continue;
            if (base_point_of[r] >= 0)
                throw CoveringNotAdapted("a rectangle contains two base points");
            base_point_of[r] = static_cast<int>(k);
            covered[k] = 1;
        }
        if (base_point_of[r] < 0)
            throw CoveringNotAdapted("a rectangle contains no base point");
        const LabeledPoint& bp = base.points[base_point_of[r]];
        if (bp.fine())
            for (const auto& site : base.sites)
                if (cov.rects[r].contains(site.first, site.second))
                    throw CoveringNotAdapted("a rectangle around a fine point contains a site");
    }
    if (std::any_of(covered.begin(), covered.end(), [](char v) { return !v; }))
        throw CoveringNotAdapted("a base point is not covered");

    // (i) every candidate point lies in some rectangle
    std::vector<std::vector<size_t>> inside(cov.rects.size());
    for (size_t k = 0; k < cand.points.size(); ++k) {
        bool placed = false;
        for (size_t r = 0; r < cov.rects.size() && !placed; ++r) {
            if (cov.rects[r].contains(cand.points[k].x, cand.points[k].y)) {
                inside[r].push_back(k);
                placed = true;
            }
        }
        if (!placed) return false;
    }

    for (size_t r = 0; r < cov.rects.size(); ++r) {
        // (ii) every rectangle meets the candidate
        if (inside[r].empty()) return false;
        std::sort(inside[r].begin(), inside[r].end(), [&](size_t a, size_t b) {
            if (cand.points[a].x != cand.points[b].x) return cand.points[a].x < cand.points[b].x;
            return cand.points[a].y < cand.points[b].y;
        });
        const LabeledPoint& bp = base.points[base_point_of[r]];
        if (bp.fine()) {
            // (iii) fine block: all fine, completion product matches
            Word word;
            for (size_t k : inside[r]) {
                if (!cand.points[k].fine()) return false;
                const Word& w = tc.cls(std::get<FineLabel>(cand.points[k].label).cls).canonical;
                word.insert(word.end(), w.begin(), w.end());
            }
            if (tc.find_word(word) != std::optional<ClassId>(std::get<FineLabel>(bp.label).cls))
                return false;
        } else {
            // (iv) coarse block: the site persists with a coarse label and
            // the G-valued block product matches
            bool site_present = false;
            ElemId acc = pair.group.unit();
            for (size_t k : inside[r]) {
                const LabeledPoint& pt = cand.points[k];
                if (pt.fine()) {
                    for (ElemId letter : tc.cls(std::get<FineLabel>(pt.label).cls).canonical)
                        acc = pair.group.mul(acc, pair.e[letter]);
                } else {
                    if (!on_site(cand, pt.x, pt.y)) return false;
                    if (pt.x == bp.x && pt.y == bp.y) site_present = true;
                    acc = pair.group.mul(acc, std::get<CoarseLabel>(pt.label).g);
                }
            }
            if (!site_present) return false;
            if (acc != std::get<CoarseLabel>(bp.label).g) return false;
        }
    }
    return true;
}

} // namespace pmqhur
