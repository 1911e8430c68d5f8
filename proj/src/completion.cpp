#include "pmqhur/completion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pmqhur {

namespace {

int word_norm(const Word& w, const std::vector<int>& norms) {
    int n = 0;
    for (ElemId a : w) n += norms[a];
    return n;
}

// All words over Q+ with norm sum <= bound, in deterministic order.
void enumerate_words(const PmqSpec& spec, const std::vector<int>& norms, int bound,
                     Word& prefix, int used, std::vector<Word>& out) {
    out.push_back(prefix);
    for (ElemId a = 0; a < spec.size(); ++a) {
        if (spec.is_unit(a)) continue;
        if (used + norms[a] > bound) continue;
        prefix.push_back(a);
        enumerate_words(spec, norms, bound, prefix, used + norms[a], out);
        prefix.pop_back();
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

} // namespace

TruncatedCompletion TruncatedCompletion::build(const PmqSpec& spec, int max_norm) {
    ClassificationReport cls = classify(spec);
    if (!cls.locally_finite)
        throw NormUnavailable("completion requires a locally finite PMQ");

    TruncatedCompletion tc;
    tc.base_ = spec;
    tc.bound_ = max_norm;
    tc.norms_ = cls.norms;

    std::vector<Word> words;
    Word prefix;
    enumerate_words(spec, tc.norms_, max_norm, prefix, 0, words);
    std::sort(words.begin(), words.end());

    std::map<Word, int> index;
    for (size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);

    auto in_universe = [&](const Word& w) -> int {
        auto it = index.find(w);
        return it == index.end() ? -1 : it->second;
    };

    UnionFind uf(words.size());
    const ElemId one = spec.unit();
    for (size_t wi = 0; wi < words.size(); ++wi) {
        const Word& w = words[wi];
        for (size_t k = 0; k + 1 < w.size(); ++k) {
            // MERGE (SPLIT edges are the same edges seen from the other side)
            if (auto ab = spec.product(w[k], w[k + 1])) {
                if (*ab == one)
                    throw NormUnavailable("nonunit letters multiplied to the unit");
                Word m(w.begin(), w.begin() + k);
                m.push_back(*ab);
                m.insert(m.end(), w.begin() + k + 2, w.end());
                if (int j = in_universe(m); j >= 0) uf.unite(static_cast<int>(wi), j);
            }
            // BRAID (a,b) -> (b, a^b); the inverse move is this edge reversed
            Word b = w;
            b[k] = w[k + 1];
            b[k + 1] = spec.conj(w[k], w[k + 1]);
            if (int j = in_universe(b); j >= 0) uf.unite(static_cast<int>(wi), j);
        }
    }

    std::map<int, int> root_to_class;
    std::vector<std::vector<Word>> members;
    for (size_t wi = 0; wi < words.size(); ++wi) {
        int root = uf.find(static_cast<int>(wi));
        auto [it, fresh] = root_to_class.emplace(root, static_cast<int>(members.size()));
        if (fresh) members.emplace_back();
        members[it->second].push_back(words[wi]);
    }

    // Deterministic class ids: order classes by canonical (lex-minimal) member.
    // Words were generated in lex order, so members[i].front() is canonical.
    std::vector<int> perm(members.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
        return members[x].front() < members[y].front();
    });

    tc.members_.resize(members.size());
    tc.classes_.resize(members.size());
    for (size_t c = 0; c < perm.size(); ++c) {
        auto& mem = members[perm[c]];
        std::sort(mem.begin(), mem.end(), [](const Word& x, const Word& y) {
            if (x.size() != y.size()) return x.size() < y.size();
            return x < y;
        });
        HqClass hc;
        hc.canonical = *std::min_element(mem.begin(), mem.end());
        hc.norm = word_norm(hc.canonical, tc.norms_);
        for (const Word& m : mem) {
            if (m.size() == 1) {
                if (hc.in_q && *hc.in_q != m[0])
                    throw CompletionNotConservative(
                        "elements '" + spec.symbol(*hc.in_q) + "' and '" +
                        spec.symbol(m[0]) + "' fall into one class");
                hc.in_q = m[0];
            }
        }
        if (mem.front().empty()) hc.in_q = spec.unit();
        tc.members_[c] = std::move(mem);
        tc.classes_[c] = std::move(hc);
        for (const Word& m : tc.members_[c])
            tc.lookup_.emplace_back(m, static_cast<int>(c));
    }
    std::sort(tc.lookup_.begin(), tc.lookup_.end());

    tc.unit_class_ = tc.class_of(Word{});
    return tc;
}

std::optional<ClassId> TruncatedCompletion::find_word(const Word& w) const {
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), w,
                               [](const auto& entry, const Word& key) { return entry.first < key; });
    if (it == lookup_.end() || it->first != w) return std::nullopt;
    return it->second;
}

ClassId TruncatedCompletion::class_of(const Word& w) const {
    if (auto c = find_word(w)) return *c;
    throw TruncationOverflow("word of norm " + std::to_string(word_norm(w, norms_)) +
                             " exceeds the truncation bound " + std::to_string(bound_));
}

ClassId TruncatedCompletion::class_of_element(ElemId a) const {
    if (base_.is_unit(a)) return unit_class_;
    return class_of(Word{a});
}

ClassId TruncatedCompletion::product(ClassId u, ClassId v) const {
    Word w = classes_[u].canonical;
    const Word& rhs = classes_[v].canonical;
    w.insert(w.end(), rhs.begin(), rhs.end());
    return class_of(w);
}

ClassId TruncatedCompletion::conj(ClassId u, ClassId w) const {
    Word out = classes_[u].canonical;
    for (ElemId letter : classes_[w].canonical)
        for (ElemId& x : out) x = base_.conj(x, letter);
    return class_of(out);
}

std::vector<Word> TruncatedCompletion::decompositions(ClassId u) const {
    return members_[u];
}

std::string word_to_string(const Word& w, const PmqSpec& spec) {
    if (w.empty()) return spec.symbol(spec.unit());
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += spec.symbol(w[i]);
    }
    return out;
}

PmqSpec completion_as_pmq(const TruncatedCompletion& tc) {
    const PmqSpec& base = tc.base();
    std::vector<std::string> elements;
    for (ClassId c = 0; c < tc.size(); ++c)
        elements.push_back(word_to_string(tc.cls(c).canonical, base));
    SymbolTable product, conj;
    for (ClassId u = 0; u < tc.size(); ++u)
        for (ClassId v = 0; v < tc.size(); ++v) {
            if (tc.cls(u).norm + tc.cls(v).norm <= tc.bound())
                product[{elements[u], elements[v]}] = elements[tc.product(u, v)];
            conj[{elements[u], elements[v]}] = elements[tc.conj(u, v)];
        }
    return PmqSpec::make(std::move(elements), base.symbol(base.unit()), product, conj);
}

Word word_from_string(const std::string& text, const PmqSpec& spec) {
    Word w;
    if (text.empty() || text == spec.symbol(spec.unit())) return w;
    size_t start = 0;
    while (start <= text.size()) {
        size_t dot = text.find('.', start);
        std::string letter = text.substr(start, dot == std::string::npos ? dot : dot - start);
        auto id = spec.find(letter);
        if (!id) throw InputError("unknown element '" + letter + "' in word '" + text + "'");
        if (!spec.is_unit(*id)) w.push_back(*id);
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return w;
}

} // namespace pmqhur
