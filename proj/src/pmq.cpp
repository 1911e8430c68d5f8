#include "pmqhur/pmq.hpp"

#include <algorithm>
#include <set>

namespace pmqhur {

namespace {

std::map<std::string, int> index_elements(const std::vector<std::string>& elements) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < elements.size(); ++i) {
        if (!index.emplace(elements[i], static_cast<int>(i)).second)
            throw StructuralError("duplicate element '" + elements[i] + "'");
    }
    return index;
}

int lookup(const std::map<std::string, int>& index, const std::string& symbol,
           const std::string& where) {
    auto it = index.find(symbol);
    if (it == index.end())
        throw StructuralError("symbol '" + symbol + "' in " + where + " is not an element");
    return it->second;
}

} // namespace

PmqSpec PmqSpec::make(std::vector<std::string> elements, const std::string& unit,
                      const SymbolTable& product, const SymbolTable& conj) {
    PmqSpec spec;
    auto index = index_elements(elements);
    spec.elements_ = std::move(elements);
    spec.unit_ = lookup(index, unit, "unit");
    const size_t n = spec.elements_.size();
    spec.product_.assign(n * n, -1);
    spec.conj_.assign(n * n, -1);
    for (const auto& [key, value] : product) {
        int a = lookup(index, key.first, "product key");
        int b = lookup(index, key.second, "product key");
        spec.product_[spec.idx(a, b)] = lookup(index, value, "product value");
    }
    for (const auto& [key, value] : conj) {
        int a = lookup(index, key.first, "conj key");
        int b = lookup(index, key.second, "conj key");
        spec.conj_[spec.idx(a, b)] = lookup(index, value, "conj value");
    }
    for (size_t i = 0; i < n * n; ++i) {
        if (spec.conj_[i] < 0)
            throw StructuralError("conjugation table is not total (missing " +
                                  spec.elements_[i / n] + "^" + spec.elements_[i % n] + ")");
    }
    // Inverse conjugation where conj(-,b) happens to be bijective.
    spec.conj_inv_.assign(n * n, -1);
    for (size_t b = 0; b < n; ++b) {
        std::vector<int> seen(n, 0);
        bool bijective = true;
        for (size_t a = 0; a < n; ++a)
            if (++seen[spec.conj_[a * n + b]] > 1) bijective = false;
        if (!bijective) continue;
        for (size_t a = 0; a < n; ++a)
            spec.conj_inv_[spec.conj_[a * n + b] * n + b] = static_cast<int>(a);
    }
    return spec;
}

std::optional<ElemId> PmqSpec::find(std::string_view symbol) const {
    for (size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i] == symbol) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<ElemId> PmqSpec::nonunit() const {
    std::vector<ElemId> out;
    for (int a = 0; a < size(); ++a)
        if (a != unit_) out.push_back(a);
    return out;
}

GroupSpec GroupSpec::make(std::vector<std::string> elements, const std::string& unit,
                          const SymbolTable& mul,
                          const std::map<std::string, std::string>& inv) {
    GroupSpec spec;
    auto index = index_elements(elements);
    spec.elements_ = std::move(elements);
    spec.unit_ = lookup(index, unit, "unit");
    const size_t n = spec.elements_.size();
    spec.mul_.assign(n * n, -1);
    spec.inv_.assign(n, -1);
    for (const auto& [key, value] : mul) {
        int a = lookup(index, key.first, "mul key");
        int b = lookup(index, key.second, "mul key");
        spec.mul_[static_cast<size_t>(a) * n + b] = lookup(index, value, "mul value");
    }
    for (const auto& [key, value] : inv)
        spec.inv_[lookup(index, key, "inv key")] = lookup(index, value, "inv value");
    for (size_t i = 0; i < n * n; ++i)
        if (spec.mul_[i] < 0)
            throw StructuralError("multiplication table is not total");
    for (size_t i = 0; i < n; ++i)
        if (spec.inv_[i] < 0)
            throw StructuralError("inverse table is not total");
    return spec;
}

std::optional<ElemId> GroupSpec::find(std::string_view symbol) const {
    for (size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i] == symbol) return static_cast<int>(i);
    return std::nullopt;
}

PairSpec PairSpec::make(PmqSpec pmq, GroupSpec group,
                        const std::map<std::string, std::string>& e,
                        const std::map<std::string, std::map<std::string, std::string>>& r) {
    PairSpec pair;
    pair.e.assign(pmq.size(), -1);
    for (const auto& [qa, gv] : e) {
        auto a = pmq.find(qa);
        if (!a) throw StructuralError("e key '" + qa + "' is not a PMQ element");
        auto g = group.find(gv);
        if (!g) throw StructuralError("e value '" + gv + "' is not a group element");
        pair.e[*a] = *g;
    }
    for (int a = 0; a < pmq.size(); ++a)
        if (pair.e[a] < 0)
            throw StructuralError("e is not total (missing " + pmq.symbol(a) + ")");
    pair.r.assign(group.size(), std::vector<ElemId>(pmq.size(), -1));
    for (const auto& [gs, perm] : r) {
        auto g = group.find(gs);
        if (!g) throw StructuralError("r key '" + gs + "' is not a group element");
        for (const auto& [qa, qb] : perm) {
            auto a = pmq.find(qa);
            auto b = pmq.find(qb);
            if (!a || !b) throw StructuralError("r(" + gs + ") maps unknown symbols");
            pair.r[*g][*a] = *b;
        }
    }
    for (int g = 0; g < group.size(); ++g)
        for (int a = 0; a < pmq.size(); ++a)
            if (pair.r[g][a] < 0)
                throw StructuralError("r(" + group.symbol(g) + ") is not total");
    pair.pmq = std::move(pmq);
    pair.group = std::move(group);
    return pair;
}

namespace {

std::string wit(const PmqSpec& s, std::initializer_list<ElemId> ids) {
    std::string out;
    const char* names = "abc";
    int k = 0;
    for (ElemId id : ids) {
        if (k) out += ", ";
        out += names[k];
        out += "=";
        out += s.symbol(id);
        ++k;
    }
    return out;
}

bool opt_eq(const std::optional<ElemId>& x, const std::optional<ElemId>& y) { return x == y; }

} // namespace

ValidationReport validate_pmq(const PmqSpec& s) {
    ValidationReport rep;
    auto fail = [&](const std::string& axiom, const std::string& witness) {
        rep.violations.push_back({axiom, witness});
    };
    const int n = s.size();
    const ElemId one = s.unit();

    for (ElemId a = 0; a < n; ++a) {
        if (s.product(one, a) != std::optional<ElemId>(a))
            fail("1*a = a", wit(s, {a}));
        if (s.product(a, one) != std::optional<ElemId>(a))
            fail("a*1 = a", wit(s, {a}));
        if (s.conj(a, one) != a) fail("a^1 = a", wit(s, {a}));
        if (s.conj(one, a) != one) fail("1^a = 1", wit(s, {a}));
        if (s.conj(a, a) != a) fail("a^a = a", wit(s, {a}));
    }

    for (ElemId b = 0; b < n; ++b) {
        std::vector<int> seen(n, 0);
        for (ElemId a = 0; a < n; ++a) seen[s.conj(a, b)]++;
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
            fail("x -> x^b is a bijection", wit(s, {b}) + " (as b)");
    }

    for (ElemId a = 0; a < n; ++a) {
        for (ElemId b = 0; b < n; ++b) {
            auto ab = s.product(a, b);
            // braid compatibility: ab defined <=> b*(a^b) defined, values equal
            auto braided = s.product(b, s.conj(a, b));
            if (ab.has_value() != braided.has_value() || (ab && *ab != *braided))
                fail("ab = b*(a^b)", wit(s, {a, b}));
            for (ElemId c = 0; c < n; ++c) {
                // two-sided associativity
                if (ab) {
                    auto abc = s.product(*ab, c);
                    if (abc) {
                        auto bc = s.product(b, c);
                        if (!bc || !opt_eq(s.product(a, *bc), abc))
                            fail("(ab)c = a(bc), left-to-right", wit(s, {a, b, c}));
                    }
                }
                auto bc = s.product(b, c);
                if (bc) {
                    auto abc = s.product(a, *bc);
                    if (abc) {
                        if (!ab || !opt_eq(s.product(*ab, c), abc))
                            fail("(ab)c = a(bc), right-to-left", wit(s, {a, b, c}));
                    }
                }
                // (ab)^c = a^c * b^c with matching definedness
                auto lhs = ab ? std::optional<ElemId>(s.conj(*ab, c)) : std::nullopt;
                auto rhs = s.product(s.conj(a, c), s.conj(b, c));
                if (!opt_eq(lhs, rhs)) fail("(ab)^c = a^c b^c", wit(s, {a, b, c}));
                // a^(bc) = (a^b)^c when bc defined
                if (bc && s.conj(a, *bc) != s.conj(s.conj(a, b), c))
                    fail("a^(bc) = (a^b)^c", wit(s, {a, b, c}));
                // (a^b)^c = (a^c)^(b^c)
                if (s.conj(s.conj(a, b), c) != s.conj(s.conj(a, c), s.conj(b, c)))
                    fail("(a^b)^c = (a^c)^(b^c)", wit(s, {a, b, c}));
            }
        }
    }
    return rep;
}

ValidationReport validate_group(const GroupSpec& g) {
    ValidationReport rep;
    auto fail = [&](const std::string& axiom, const std::string& witness) {
        rep.violations.push_back({axiom, witness});
    };
    const int n = g.size();
    const ElemId one = g.unit();
    for (ElemId a = 0; a < n; ++a) {
        if (g.mul(one, a) != a || g.mul(a, one) != a)
            fail("group unit law", g.symbol(a));
        if (g.mul(a, g.inv(a)) != one || g.mul(g.inv(a), a) != one)
            fail("group inverse law", g.symbol(a));
        for (ElemId b = 0; b < n; ++b)
            for (ElemId c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    fail("group associativity",
                         g.symbol(a) + ", " + g.symbol(b) + ", " + g.symbol(c));
    }
    return rep;
}

ValidationReport validate_pair(const PairSpec& pair) {
    ValidationReport rep;
    auto fail = [&](const std::string& axiom, const std::string& witness) {
        rep.violations.push_back({axiom, witness});
    };
    const PmqSpec& q = pair.pmq;
    const GroupSpec& g = pair.group;
    const int nq = q.size();
    const int ng = g.size();

    if (pair.e[q.unit()] != g.unit()) fail("e(1) = 1", "");
    for (ElemId a = 0; a < nq; ++a) {
        for (ElemId b = 0; b < nq; ++b) {
            auto ab = q.product(a, b);
            if (ab && pair.e[*ab] != g.mul(pair.e[a], pair.e[b]))
                fail("e(ab) = e(a)e(b)", wit(q, {a, b}));
            if (pair.e[q.conj(a, b)] != g.conj(pair.e[a], pair.e[b]))
                fail("e(a^b) = e(b)^-1 e(a) e(b)", wit(q, {a, b}));
        }
    }

    for (ElemId a = 0; a < nq; ++a)
        if (pair.r[g.unit()][a] != a) fail("r(1) = id", q.symbol(a));
    for (ElemId x = 0; x < ng; ++x)
        for (ElemId y = 0; y < ng; ++y)
            for (ElemId a = 0; a < nq; ++a)
                if (pair.r[g.mul(x, y)][a] != pair.r[y][pair.r[x][a]])
                    fail("r(gh) = r(h) o r(g)",
                         g.symbol(x) + ", " + g.symbol(y) + ", " + q.symbol(a));

    for (ElemId x = 0; x < ng; ++x) {
        const auto& rx = pair.r[x];
        std::vector<int> seen(nq, 0);
        for (ElemId a = 0; a < nq; ++a) seen[rx[a]]++;
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
            fail("r(g) is a bijection", g.symbol(x));
        if (rx[q.unit()] != q.unit()) fail("r(g) preserves the unit", g.symbol(x));
        for (ElemId a = 0; a < nq; ++a) {
            for (ElemId b = 0; b < nq; ++b) {
                if (rx[q.conj(a, b)] != q.conj(rx[a], rx[b]))
                    fail("r(g) preserves conjugation", g.symbol(x) + ": " + wit(q, {a, b}));
                auto ab = q.product(a, b);
                auto rab = q.product(rx[a], rx[b]);
                if (ab.has_value() != rab.has_value() ||
                    (ab && rx[*ab] != *rab))
                    fail("r(g) preserves the partial product",
                         g.symbol(x) + ": " + wit(q, {a, b}));
            }
        }
    }

    for (ElemId b = 0; b < nq; ++b)
        for (ElemId a = 0; a < nq; ++a)
            if (pair.r[pair.e[b]][a] != q.conj(a, b))
                fail("r(e(b)) = conj(-, b)", wit(q, {a, b}));

    for (ElemId x = 0; x < ng; ++x)
        for (ElemId a = 0; a < nq; ++a)
            if (pair.e[pair.r[x][a]] != g.conj(pair.e[a], x))
                fail("e(r(g)(a)) = g^-1 e(a) g", g.symbol(x) + ", " + q.symbol(a));

    return rep;
}

ClassificationReport classify(const PmqSpec& s) {
    ClassificationReport rep;
    const int n = s.size();
    const ElemId one = s.unit();

    rep.complete = true;
    rep.augmented = true;
    for (ElemId a = 0; a < n; ++a) {
        for (ElemId b = 0; b < n; ++b) {
            auto ab = s.product(a, b);
            if (!ab) rep.complete = false;
            if (ab && *ab == one && (a != one || b != one)) rep.augmented = false;
        }
    }

    // Longest Q+-decomposition per element. A decomposition of length r+1 is
    // a decomposition of some prefix value b of length r >= 1 extended by one
    // nonunit letter g with b*g defined. Edges b -> b*g; seeds are the
    // one-letter decompositions. A directed cycle among nodes carrying a
    // decomposition makes lengths unbounded.
    std::vector<std::vector<ElemId>> succ(n);
    for (ElemId b = 0; b < n; ++b)
        for (ElemId gly = 0; gly < n; ++gly) {
            if (gly == one) continue;
            if (auto v = s.product(b, gly)) succ[b].push_back(*v);
        }

    std::vector<char> decomposable(n, 0); // has a decomposition of length >= 1
    {
        std::vector<ElemId> stack;
        for (ElemId a = 0; a < n; ++a)
            if (a != one) { decomposable[a] = 1; stack.push_back(a); }
        while (!stack.empty()) {
            ElemId b = stack.back();
            stack.pop_back();
            for (ElemId v : succ[b])
                if (!decomposable[v]) { decomposable[v] = 1; stack.push_back(v); }
        }
    }

    // Cycle detection restricted to decomposable nodes.
    std::vector<int> state(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<ElemId> path;
    std::vector<ElemId> cycle;
    auto dfs = [&](auto&& self, ElemId u) -> bool {
        state[u] = 1;
        path.push_back(u);
        for (ElemId v : succ[u]) {
            if (!decomposable[v]) continue;
            if (state[v] == 1) {
                auto it = std::find(path.begin(), path.end(), v);
                cycle.assign(it, path.end());
                return true;
            }
            if (state[v] == 0 && self(self, v)) return true;
        }
        path.pop_back();
        state[u] = 2;
        return false;
    };
    for (ElemId a = 0; a < n && cycle.empty(); ++a)
        if (decomposable[a] && state[a] == 0) dfs(dfs, a);

    if (!cycle.empty()) {
        rep.locally_finite = false;
        rep.cycle_witness = cycle;
        return rep;
    }
    rep.locally_finite = true;

    // DAG longest path over decomposable nodes, in reverse-finish order.
    std::vector<ElemId> order;
    std::vector<char> visited(n, 0);
    auto topo = [&](auto&& self, ElemId u) -> void {
        visited[u] = 1;
        for (ElemId v : succ[u])
            if (decomposable[v] && !visited[v]) self(self, v);
        order.push_back(u);
    };
    for (ElemId a = 0; a < n; ++a)
        if (decomposable[a] && !visited[a]) topo(topo, a);
    std::reverse(order.begin(), order.end());

    std::vector<int> longest(n, 0);
    for (ElemId a = 0; a < n; ++a)
        if (a != one) longest[a] = 1;
    for (ElemId u : order)
        for (ElemId v : succ[u])
            longest[v] = std::max(longest[v], longest[u] + 1);

    rep.norms.assign(n, 0);
    for (ElemId a = 0; a < n; ++a) rep.norms[a] = (a == one) ? 0 : longest[a];
    return rep;
}

PmqSpec sub_pmq_norm_le(const PmqSpec& s, int k) {
    ClassificationReport cls = classify(s);
    if (!cls.locally_finite)
        throw NormUnavailable("norms are undefined: spec is not locally finite");
    std::set<ElemId> keep;
    std::vector<std::string> elements;
    for (ElemId a = 0; a < s.size(); ++a)
        if (cls.norms[a] <= k) { keep.insert(a); elements.push_back(s.symbol(a)); }
    SymbolTable product, conj;
    for (ElemId a : keep) {
        for (ElemId b : keep) {
            auto ab = s.product(a, b);
            if (ab && keep.count(*ab))
                product[{s.symbol(a), s.symbol(b)}] = s.symbol(*ab);
            ElemId c = s.conj(a, b);
            if (!keep.count(c))
                throw NormUnavailable("conjugation does not preserve the norm filtration");
            conj[{s.symbol(a), s.symbol(b)}] = s.symbol(c);
        }
    }
    return PmqSpec::make(std::move(elements), s.symbol(s.unit()), product, conj);
}

} // namespace pmqhur
