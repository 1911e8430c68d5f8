#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pmqhur/json_io.hpp"
#include "pmqhur/poincare.hpp"

using namespace pmqhur;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitInputError = 2;

json homology_to_json(const HomologyResult& res) {
    json groups = json::array();
    for (size_t n = 0; n < res.groups.size(); ++n) {
        json g;
        g["degree"] = n;
        g["rank"] = res.groups[n].free_rank;
        json torsion = json::array();
        for (const Int& d : res.groups[n].torsion) torsion.push_back(d.str());
        g["torsion"] = torsion;
        groups.push_back(g);
    }
    return groups;
}

void print_homology(const HomologyResult& res) {
    for (size_t n = 0; n < res.groups.size(); ++n) {
        std::cout << "H_" << n << ": rank " << res.groups[n].free_rank;
        if (!res.groups[n].torsion.empty()) {
            std::cout << " torsion";
            for (const Int& d : res.groups[n].torsion) std::cout << " " << d.str();
        }
        std::cout << "\n";
    }
}

// Norm of every fine label mentioned in a configuration or cell file,
// computed before any completion exists.
int scan_norm_budget(const json& j, const PmqSpec& spec, const std::vector<int>& norms) {
    int total = 0;
    auto word_norm = [&](const std::string& text) {
        int n = 0;
        for (ElemId letter : word_from_string(text, spec)) n += norms[letter];
        return n;
    };
    if (j.contains("points"))
        for (const auto& pj : j.at("points"))
            if (pj.contains("fine")) total += word_norm(pj.at("fine").get<std::string>());
    if (j.contains("entries"))
        for (const auto& column : j.at("entries"))
            for (const auto& entry : column) total += word_norm(entry.get<std::string>());
    return total;
}

struct PmqInput {
    PmqSpec spec;
    std::optional<PairSpec> pair;
};

PmqInput load_input(const std::string& pmq_path, const std::string& pair_path) {
    PmqInput input;
    if (!pair_path.empty()) {
        input.pair = pair_from_json(load_json_file(pair_path));
        input.spec = input.pair->pmq;
    } else if (!pmq_path.empty()) {
        input.spec = pmq_from_json(load_json_file(pmq_path));
    } else {
        throw InputError("need --pmq or --pair");
    }
    return input;
}

// Base swap for components outside Q: the truncated completion becomes the
// PMQ and the element word is re-read over it.
std::pair<PmqSpec, TruncatedCompletion> component_base(const PmqSpec& spec, Word& word,
                                                       bool completed_base, int bound) {
    if (!completed_base) return {spec, complete(spec, bound)};
    TruncatedCompletion tc = complete(spec, bound);
    PmqSpec base = completion_as_pmq(tc);
    Word lifted;
    if (!word.empty()) lifted.push_back(*base.find(word_to_string(word, spec)));
    word = lifted;
    return {base, complete(base, bound)};
}

int run_validate(const std::string& pmq_path, const std::string& group_path,
                 const std::string& pair_path, bool as_json) {
    std::vector<std::pair<std::string, ValidationReport>> reports;
    if (!pmq_path.empty())
        reports.emplace_back("pmq", validate_pmq(pmq_from_json(load_json_file(pmq_path))));
    if (!group_path.empty())
        reports.emplace_back("group", validate_group(group_from_json(load_json_file(group_path))));
    if (!pair_path.empty())
        reports.emplace_back("pair", validate_pair(pair_from_json(load_json_file(pair_path))));
    if (reports.empty()) throw InputError("need --pmq, --group or --pair");

    bool ok = true;
    json out;
    out["violations"] = json::array();
    for (const auto& [what, rep] : reports) {
        ok = ok && rep.ok();
        for (const Violation& v : rep.violations) {
            if (as_json) {
                json vj;
                vj["target"] = what;
                vj["axiom"] = v.axiom;
                vj["witness"] = v.witness;
                out["violations"].push_back(vj);
            } else {
                std::cout << what << " violation: " << v.axiom;
                if (!v.witness.empty()) std::cout << "  [" << v.witness << "]";
                std::cout << "\n";
            }
        }
    }
    if (as_json) {
        out["valid"] = ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (ok ? "VALID" : "INVALID") << "\n";
    }
    return ok ? kExitOk : kExitVerdictFail;
}

int run_classify(const std::string& pmq_path, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    ClassificationReport rep = classify(spec);
    if (as_json) {
        json out;
        out["augmented"] = rep.augmented;
        out["complete"] = rep.complete;
        out["locally_finite"] = rep.locally_finite;
        if (rep.locally_finite) {
            json norms;
            for (ElemId a = 0; a < spec.size(); ++a) norms[spec.symbol(a)] = rep.norms[a];
            out["norms"] = norms;
        } else {
            json cycle = json::array();
            for (ElemId a : rep.cycle_witness) cycle.push_back(spec.symbol(a));
            out["cycle"] = cycle;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "augmented: " << (rep.augmented ? "yes" : "no") << "\n";
        std::cout << "complete: " << (rep.complete ? "yes" : "no") << "\n";
        std::cout << "locally_finite: " << (rep.locally_finite ? "yes" : "no") << "\n";
        if (rep.locally_finite) {
            for (ElemId a = 0; a < spec.size(); ++a)
                std::cout << "h(" << spec.symbol(a) << ") = " << rep.norms[a] << "\n";
        } else {
            std::cout << "cycle:";
            for (ElemId a : rep.cycle_witness) std::cout << " " << spec.symbol(a);
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int run_complete(const std::string& pmq_path, int max_norm, bool as_json, bool no_members) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    TruncatedCompletion tc = complete(spec, max_norm);
    if (as_json) {
        json classes = json::array();
        for (ClassId c = 0; c < tc.size(); ++c) {
            json cj;
            cj["id"] = word_to_string(tc.cls(c).canonical, spec);
            cj["norm"] = tc.cls(c).norm;
            cj["size"] = tc.decompositions(c).size();
            cj["in_q"] = tc.cls(c).in_q ? json(spec.symbol(*tc.cls(c).in_q)) : json(nullptr);
            if (!no_members) {
                json members = json::array();
                for (const Word& w : tc.decompositions(c))
                    members.push_back(word_to_string(w, spec));
                cj["members"] = members;
            }
            classes.push_back(cj);
        }
        json out;
        out["bound"] = max_norm;
        out["classes"] = classes;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << tc.size() << " classes up to norm " << max_norm << "\n";
        for (ClassId c = 0; c < tc.size(); ++c) {
            std::cout << word_to_string(tc.cls(c).canonical, spec) << "  norm="
                      << tc.cls(c).norm << " size=" << tc.decompositions(c).size() << " in_Q="
                      << (tc.cls(c).in_q ? spec.symbol(*tc.cls(c).in_q) : std::string("-"));
            if (!no_members) {
                std::cout << "  members:";
                for (const Word& w : tc.decompositions(c))
                    std::cout << " " << word_to_string(w, spec);
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int run_cells(const std::string& pmq_path, const std::string& element, bool completed_base,
              bool as_json, bool list) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    ClassificationReport cls = classify(spec);
    if (!cls.locally_finite) throw NormUnavailable("cell enumeration needs finite norms");
    Word word = word_from_string(element, spec);
    int bound = 0;
    for (ElemId letter : word) bound += cls.norms[letter];
    auto [base, tc] = component_base(spec, word, completed_base, bound);
    CellSet cells = enumerate_cells(base, tc, tc.class_of(word));

    if (as_json) {
        json out;
        out["component"] = word_to_string(tc.cls(cells.component).canonical, base);
        json counts = json::array();
        for (const auto& [pq, cell_list] : cells.cells) {
            json row;
            row["p"] = pq.first;
            row["q"] = pq.second;
            row["cells"] = cell_list.size();
            int nadm = 0;
            for (char f : cells.nadm.at(pq)) nadm += f;
            row["nadm"] = nadm;
            if (list) {
                json arrays = json::array();
                for (const ArrayPQ& ua : cell_list) {
                    json entries = json::array();
                    for (int i = 0; i <= ua.p() + 1; ++i) {
                        json column = json::array();
                        for (int j = 0; j <= ua.q() + 1; ++j)
                            column.push_back(word_to_string(tc.cls(ua.at(i, j)).canonical, base));
                        entries.push_back(column);
                    }
                    arrays.push_back(entries);
                }
                row["arrays"] = arrays;
            }
            counts.push_back(row);
        }
        out["bidegrees"] = counts;
        out["total"] = cells.total_cells();
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& [pq, cell_list] : cells.cells) {
            int nadm = 0;
            for (char f : cells.nadm.at(pq)) nadm += f;
            std::cout << "(" << pq.first << "," << pq.second << "): " << cell_list.size()
                      << " cells, " << nadm << " non-admissible\n";
            if (list)
                for (const ArrayPQ& ua : cell_list) {
                    std::cout << "  [";
                    for (int i = 0; i <= ua.p() + 1; ++i) {
                        if (i) std::cout << " | ";
                        for (int j = 0; j <= ua.q() + 1; ++j) {
                            if (j) std::cout << " ";
                            std::cout << word_to_string(tc.cls(ua.at(i, j)).canonical, base);
                        }
                    }
                    std::cout << "]\n";
                }
        }
        std::cout << "total: " << cells.total_cells() << "\n";
    }
    return kExitOk;
}

int run_homology(const std::string& pmq_path, const std::string& element,
                 const std::string& ring_name, bool relative, bool completed_base,
                 bool use_oracle, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    Ring ring = ring_from_string(ring_name);
    ClassificationReport cls = classify(spec);
    if (!cls.locally_finite) throw NormUnavailable("homology needs finite norms");
    Word word = word_from_string(element, spec);
    int bound = 0;
    for (ElemId letter : word) bound += cls.norms[letter];
    auto [base, tc] = component_base(spec, word, completed_base, bound);
    CellSet cells = enumerate_cells(base, tc, tc.class_of(word));
    HomologyResult res = use_oracle
                             ? diagonal_oracle(cells, relative, ring, tc)
                             : homology(build_total_complex(cells, relative, ring, tc));
    if (as_json) {
        json out;
        out["ring"] = ring.name();
        out["relative"] = relative;
        out["groups"] = homology_to_json(res);
        std::cout << out.dump(2) << "\n";
    } else {
        print_homology(res);
    }
    return kExitOk;
}

int run_query(const std::string& pmq_path, const std::string& op, const std::string& lhs,
              const std::string& rhs, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    auto a = spec.find(lhs);
    auto b = spec.find(rhs);
    if (!a || !b) throw InputError("operands must be elements of the PMQ");
    std::optional<ElemId> value;
    if (op == "product")
        value = spec.product(*a, *b);
    else if (op == "conj")
        value = spec.conj(*a, *b);
    else
        throw InputError("unknown op '" + op + "' (expected product or conj)");
    std::string text = value ? spec.symbol(*value) : "undefined";
    if (as_json) {
        json out;
        out[op] = value ? json(text) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
    return kExitOk;
}

int run_sub_pmq(const std::string& pmq_path, int max_norm) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    std::cout << pmq_to_json(sub_pmq_norm_le(spec, max_norm)).dump(2) << "\n";
    return kExitOk;
}

int run_hq(const std::string& pmq_path, int max_norm, const std::string& op,
           const std::string& lhs, const std::string& rhs, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    TruncatedCompletion tc = complete(spec, max_norm);
    ClassId u = tc.class_of(word_from_string(lhs, spec));
    ClassId v = tc.class_of(word_from_string(rhs, spec));
    ClassId result;
    if (op == "product")
        result = tc.product(u, v);
    else if (op == "conj")
        result = tc.conj(u, v);
    else
        throw InputError("unknown op '" + op + "' (expected product or conj)");
    std::string text = word_to_string(tc.cls(result).canonical, spec);
    if (as_json) {
        json out;
        out[op] = text;
        out["norm"] = tc.cls(result).norm;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
    return kExitOk;
}

int run_array(const std::string& pmq_path, const std::string& cell_path, const std::string& op,
              int index, int max_norm, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    ClassificationReport cls = classify(spec);
    if (!cls.locally_finite) throw NormUnavailable("array ops need finite norms");
    json aj = load_json_file(cell_path);
    int bound = std::max(max_norm, scan_norm_budget(aj, spec, cls.norms));
    TruncatedCompletion tc = complete(spec, bound);
    ArrayPQ ua = array_from_json(aj, tc);

    auto emit_array = [&](const ArrayPQ& out) {
        std::cout << array_to_json(out, tc).dump(as_json ? 2 : -1) << "\n";
        return kExitOk;
    };
    auto emit_bool = [&](const char* key, bool value) {
        if (as_json) {
            json out;
            out[key] = value;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << (value ? "yes" : "no") << "\n";
        }
        return value ? kExitOk : kExitVerdictFail;
    };

    if (op == "face-h") return emit_array(face_h(ua, index, tc));
    if (op == "face-v") return emit_array(face_v(ua, index, tc));
    if (op == "degeneracy-h") return emit_array(degeneracy_h(ua, index, tc));
    if (op == "degeneracy-v") return emit_array(degeneracy_v(ua, index, tc));
    if (op == "total") {
        std::string text = word_to_string(tc.cls(total_product(ua, tc)).canonical, spec);
        if (as_json) {
            json out;
            out["total"] = text;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << text << "\n";
        }
        return kExitOk;
    }
    if (op == "nondegenerate") return emit_bool("nondegenerate", is_nondegenerate(ua, tc));
    if (op == "admissible") return emit_bool("admissible", is_admissible(ua, tc));
    throw InputError("unknown array op '" + op + "'");
}

int run_snf(const std::string& matrix_path, bool as_json) {
    json j = load_json_file(matrix_path);
    if (!j.contains("rows")) throw InputError("matrix file needs a \"rows\" field");
    const auto& rows = j.at("rows");
    size_t ncols = rows.empty() ? 0 : rows.at(0).size();
    IntMatrix m(rows.size(), ncols);
    for (size_t r = 0; r < m.rows; ++r) {
        if (rows.at(r).size() != ncols) throw InputError("ragged matrix");
        for (size_t c = 0; c < ncols; ++c) m.at(r, c) = Int(rows.at(r).at(c).get<long>());
    }
    SmithResult snf = smith_normal_form(std::move(m));
    if (as_json) {
        json out;
        out["rank"] = snf.rank;
        json factors = json::array();
        for (const Int& d : snf.factors) factors.push_back(d.str());
        out["factors"] = factors;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "rank " << snf.rank << " factors";
        for (const Int& d : snf.factors) std::cout << " " << d.str();
        std::cout << "\n";
    }
    return kExitOk;
}

int run_poincare(const std::string& pmq_path, const std::string& ring_name, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    PoincareReport rep = poincare_report(spec, ring_from_string(ring_name));
    if (as_json) {
        json out;
        out["ring"] = rep.ring.name();
        out["norm_is_intrinsic"] = rep.norm_is_intrinsic;
        if (rep.norm_witness) {
            auto [a, b, ab] = *rep.norm_witness;
            out["norm_witness"] = {spec.symbol(a), spec.symbol(b), spec.symbol(ab)};
        }
        json verdicts = json::array();
        for (const PoincareVerdict& v : rep.verdicts) {
            json vj;
            vj["element"] = spec.symbol(v.a);
            vj["norm"] = v.norm;
            vj["degree"] = v.degree ? json(*v.degree) : json(nullptr);
            vj["passes"] = v.passes;
            vj["connected"] = v.connected;
            verdicts.push_back(vj);
        }
        out["verdicts"] = verdicts;
        out["poincare"] = rep.overall;
        std::cout << out.dump(2) << "\n";
    } else {
        if (!rep.norm_is_intrinsic && rep.norm_witness) {
            auto [a, b, ab] = *rep.norm_witness;
            std::cout << "intrinsic norm fails: h(" << spec.symbol(a) << "*" << spec.symbol(b)
                      << ") != h(" << spec.symbol(a) << ")+h(" << spec.symbol(b) << ")  ["
                      << spec.symbol(ab) << "]\n";
        }
        for (const PoincareVerdict& v : rep.verdicts) {
            std::cout << spec.symbol(v.a) << ": h=" << v.norm << " degree=";
            if (v.degree)
                std::cout << *v.degree;
            else
                std::cout << "-";
            std::cout << " passes=" << (v.passes ? "yes" : "no")
                      << " connected=" << (v.connected ? "yes" : "no") << "\n";
        }
        std::cout << "POINCARE: " << (rep.overall ? "yes" : "no") << "\n";
    }
    return rep.overall ? kExitOk : kExitVerdictFail;
}

int run_coconnect(const std::string& pmq_path, const std::string& ring_name, bool as_json) {
    PmqSpec spec = pmq_from_json(load_json_file(pmq_path));
    auto rows = coconnectivity_probe(spec, ring_from_string(ring_name));
    bool all_equal = true;
    json out = json::array();
    for (const CoconnectRow& row : rows) {
        all_equal = all_equal && row.equal;
        if (as_json) {
            json rj;
            rj["element"] = spec.symbol(row.a);
            rj["norm"] = row.norm;
            rj["rank_sub"] = row.rank_sub;
            rj["rank_full"] = row.rank_full;
            rj["equal"] = row.equal;
            out.push_back(rj);
        } else {
            std::cout << spec.symbol(row.a) << ": rank_sub=" << row.rank_sub
                      << " rank_full=" << row.rank_full
                      << " equal=" << (row.equal ? "yes" : "no") << "\n";
        }
    }
    if (as_json)
        std::cout << out.dump(2) << "\n";
    else
        std::cout << "COCONNECT: " << (all_equal ? "yes" : "no") << "\n";
    return all_equal ? kExitOk : kExitVerdictFail;
}

struct ConfigArgs {
    std::string pmq_path;
    std::string pair_path;
    std::string config_path;
    std::string cand_path;
    std::string cell_path;
    std::string cov_path;
    std::string element;
    std::string targets_x;
    std::string targets_y;
    int max_norm = -1;
    bool as_json = false;
};

std::vector<Rat> parse_targets(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) out.push_back(rat_from_string(item));
    return out;
}

int run_config(const std::string& op, const ConfigArgs& args) {
    PmqInput input = load_input(args.pmq_path, args.pair_path);
    ClassificationReport cls = classify(input.spec);
    if (!cls.locally_finite) throw NormUnavailable("configuration ops need finite norms");

    json cfg_json, cand_json, cell_json;
    if (!args.config_path.empty()) cfg_json = load_json_file(args.config_path);
    if (!args.cand_path.empty()) cand_json = load_json_file(args.cand_path);
    if (!args.cell_path.empty()) cell_json = load_json_file(args.cell_path);

    int bound = 0;
    for (const json* j : {&cfg_json, &cand_json, &cell_json})
        if (!j->is_null()) bound = std::max(bound, scan_norm_budget(*j, input.spec, cls.norms));
    if (args.max_norm >= 0) bound = std::max(bound, args.max_norm);
    TruncatedCompletion tc = complete(input.spec, bound);

    const GroupSpec* group = input.pair ? &input.pair->group : nullptr;
    auto need_pair = [&]() -> const PairSpec& {
        if (!input.pair) throw InputError("this operation needs --pair");
        return *input.pair;
    };
    auto load_config = [&](const json& j) { return config_from_json(j, tc, group); };
    auto emit_config = [&](const Configuration& c) {
        std::cout << config_to_json(c, tc, group).dump(args.as_json ? 2 : -1) << "\n";
        return kExitOk;
    };

    if (op == "omega") {
        ElemId g = omega(load_config(cfg_json), need_pair(), tc);
        if (args.as_json) {
            json out;
            out["omega"] = input.pair->group.symbol(g);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << input.pair->group.symbol(g) << "\n";
        }
        return kExitOk;
    }
    if (op == "omega-hat") {
        ClassId c = omega_hat(load_config(cfg_json), tc);
        std::string word = word_to_string(tc.cls(c).canonical, input.spec);
        if (args.as_json) {
            json out;
            out["omega_hat"] = word;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << word << "\n";
        }
        return kExitOk;
    }
    if (op == "cell-of") {
        CellLocation loc = cell_of(load_config(cfg_json), tc);
        std::cout << cell_location_to_json(loc, tc).dump(args.as_json ? 2 : -1) << "\n";
        return kExitOk;
    }
    if (op == "upsilon")
        return emit_config(upsilon(cell_location_from_json(cell_json, tc), tc));
    if (op == "collide")
        return emit_config(collide(load_config(cfg_json), parse_targets(args.targets_x),
                                   parse_targets(args.targets_y), tc));
    if (op == "conj") {
        const PairSpec& pair = need_pair();
        auto g = pair.group.find(args.element);
        if (!g) throw InputError("unknown group element '" + args.element + "'");
        return emit_config(conj_global(load_config(cfg_json), *g, pair, tc));
    }
    if (op == "act-left" || op == "act-right") {
        const PairSpec& pair = need_pair();
        auto g = pair.group.find(args.element);
        if (!g) throw InputError("unknown group element '" + args.element + "'");
        Configuration c = load_config(cfg_json);
        return emit_config(op == "act-left" ? act_left(c, *g, pair) : act_right(c, *g, pair));
    }
    if (op == "reduce")
        return emit_config(reduce(load_config(cfg_json), tc));
    if (op == "in-neighborhood") {
        PairSpec dummy;
        if (!input.pair) {
            GroupSpec trivial = GroupSpec::make({"1"}, "1", {{{"1", "1"}, "1"}}, {{"1", "1"}});
            std::map<std::string, std::string> e;
            std::map<std::string, std::map<std::string, std::string>> r;
            for (ElemId a = 0; a < input.spec.size(); ++a) {
                e[input.spec.symbol(a)] = "1";
                r["1"][input.spec.symbol(a)] = input.spec.symbol(a);
            }
            dummy = PairSpec::make(input.spec, trivial, e, r);
        }
        const PairSpec& pair = input.pair ? *input.pair : dummy;
        bool inside = neighborhood_contains(load_config(cfg_json),
                                            covering_from_json(load_json_file(args.cov_path)),
                                            load_config(cand_json), pair, tc);
        if (args.as_json) {
            json out;
            out["contains"] = inside;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << (inside ? "inside" : "outside") << "\n";
        }
        return inside ? kExitOk : kExitVerdictFail;
    }
    throw InputError("unknown config operation '" + op + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with partially multiplicative quandles"};
    app.require_subcommand(1);

    std::string pmq_path, group_path, pair_path, element, ring_name = "Z";
    int max_norm = 0;
    bool as_json = false, no_members = false, list_cells = false;
    bool relative = false, completed_base = false;

    auto* validate = app.add_subcommand("validate", "check PMQ / group / pair axioms");
    validate->add_option("--pmq", pmq_path);
    validate->add_option("--group", group_path);
    validate->add_option("--pair", pair_path);
    validate->add_flag("--json", as_json);

    auto* classify_cmd = app.add_subcommand("classify", "augmented / complete / locally finite");
    classify_cmd->add_option("--pmq", pmq_path)->required();
    classify_cmd->add_flag("--json", as_json);

    auto* complete_cmd = app.add_subcommand("complete", "norm-truncated completion classes");
    complete_cmd->add_option("--pmq", pmq_path)->required();
    complete_cmd->add_option("--max-norm", max_norm)->required();
    complete_cmd->add_flag("--json", as_json);
    complete_cmd->add_flag("--no-members", no_members);

    auto* cells_cmd = app.add_subcommand("cells", "cell counts of a component");
    cells_cmd->add_option("--pmq", pmq_path)->required();
    cells_cmd->add_option("--element", element)->required();
    cells_cmd->add_flag("--completed-base", completed_base);
    cells_cmd->add_flag("--json", as_json);
    cells_cmd->add_flag("--list", list_cells);

    bool use_oracle = false;
    auto* homology_cmd = app.add_subcommand("homology", "homology of a component");
    homology_cmd->add_option("--pmq", pmq_path)->required();
    homology_cmd->add_option("--element", element)->required();
    homology_cmd->add_option("--ring", ring_name);
    homology_cmd->add_flag("--relative", relative);
    homology_cmd->add_flag("--completed-base", completed_base);
    homology_cmd->add_flag("--oracle", use_oracle);
    homology_cmd->add_flag("--json", as_json);

    std::string op, lhs, rhs, cell_path, matrix_path;
    int array_index = 0;
    auto* query_cmd = app.add_subcommand("query", "partial product / conjugation lookup");
    query_cmd->add_option("--pmq", pmq_path)->required();
    query_cmd->add_option("--op", op)->required();
    query_cmd->add_option("--a", lhs)->required();
    query_cmd->add_option("--b", rhs)->required();
    query_cmd->add_flag("--json", as_json);

    auto* subpmq_cmd = app.add_subcommand("sub-pmq", "restriction to elements of norm <= k");
    subpmq_cmd->add_option("--pmq", pmq_path)->required();
    subpmq_cmd->add_option("--max-norm", max_norm)->required();

    auto* hq_cmd = app.add_subcommand("hq", "completion class product / conjugation");
    hq_cmd->add_option("--pmq", pmq_path)->required();
    hq_cmd->add_option("--max-norm", max_norm)->required();
    hq_cmd->add_option("--op", op)->required();
    hq_cmd->add_option("--u", lhs)->required();
    hq_cmd->add_option("--v", rhs)->required();
    hq_cmd->add_flag("--json", as_json);

    auto* array_cmd = app.add_subcommand("array", "face / degeneracy / predicates on one array");
    array_cmd->add_option("--pmq", pmq_path)->required();
    array_cmd->add_option("--cell", cell_path)->required();
    array_cmd->add_option("--op", op)->required();
    array_cmd->add_option("--index", array_index);
    array_cmd->add_option("--max-norm", max_norm);
    array_cmd->add_flag("--json", as_json);

    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf_cmd->add_option("--matrix", matrix_path)->required();
    snf_cmd->add_flag("--json", as_json);

    auto* poincare_cmd = app.add_subcommand("poincare", "R-Poincare verdict");
    poincare_cmd->add_option("--pmq", pmq_path)->required();
    poincare_cmd->add_option("--ring", ring_name);
    poincare_cmd->add_flag("--json", as_json);

    auto* coconnect_cmd = app.add_subcommand("coconnect", "top-rank comparison with the norm<=1 sub-PMQ");
    coconnect_cmd->add_option("--pmq", pmq_path)->required();
    coconnect_cmd->add_option("--ring", ring_name);
    coconnect_cmd->add_flag("--json", as_json);

    ConfigArgs cargs;
    auto* config_cmd = app.add_subcommand("config", "labeled point configurations");
    config_cmd->require_subcommand(1);
    std::vector<CLI::App*> config_ops;
    for (const char* name : {"omega", "omega-hat", "cell-of", "upsilon", "collide", "conj",
                             "act-left", "act-right", "reduce", "in-neighborhood"}) {
        auto* sub = config_cmd->add_subcommand(name);
        sub->add_option("--pmq", cargs.pmq_path);
        sub->add_option("--pair", cargs.pair_path);
        sub->add_option("--config", cargs.config_path);
        sub->add_option("--cand", cargs.cand_path);
        sub->add_option("--cell", cargs.cell_path);
        sub->add_option("--cov", cargs.cov_path);
        sub->add_option("--g", cargs.element);
        sub->add_option("--targets-x", cargs.targets_x);
        sub->add_option("--targets-y", cargs.targets_y);
        sub->add_option("--max-norm", cargs.max_norm);
        sub->add_flag("--json", cargs.as_json);
        config_ops.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (validate->parsed()) return run_validate(pmq_path, group_path, pair_path, as_json);
        if (classify_cmd->parsed()) return run_classify(pmq_path, as_json);
        if (complete_cmd->parsed()) return run_complete(pmq_path, max_norm, as_json, no_members);
        if (cells_cmd->parsed()) return run_cells(pmq_path, element, completed_base, as_json, list_cells);
        if (homology_cmd->parsed())
            return run_homology(pmq_path, element, ring_name, relative, completed_base,
                                use_oracle, as_json);
        if (query_cmd->parsed()) return run_query(pmq_path, op, lhs, rhs, as_json);
        if (subpmq_cmd->parsed()) return run_sub_pmq(pmq_path, max_norm);
        if (hq_cmd->parsed()) return run_hq(pmq_path, max_norm, op, lhs, rhs, as_json);
        if (array_cmd->parsed())
            return run_array(pmq_path, cell_path, op, array_index, max_norm, as_json);
        if (snf_cmd->parsed()) return run_snf(matrix_path, as_json);
        if (poincare_cmd->parsed()) return run_poincare(pmq_path, ring_name, as_json);
        if (coconnect_cmd->parsed()) return run_coconnect(pmq_path, ring_name, as_json);
        if (config_cmd->parsed())
            for (CLI::App* sub : config_ops)
                if (sub->parsed()) return run_config(sub->get_name(), cargs);
        throw InputError("no subcommand given");
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    }
}
