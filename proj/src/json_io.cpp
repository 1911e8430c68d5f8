#include "pmqhur/json_io.hpp"

#include <fstream>

namespace pmqhur {

namespace {

std::pair<std::string, std::string> split_key(const std::string& key) {
    size_t bar = key.find('|');
    if (bar == std::string::npos)
        throw StructuralError("table key '" + key + "' is not of the form \"a|b\"");
    return {key.substr(0, bar), key.substr(bar + 1)};
}

SymbolTable table_from_json(const json& j, const std::string& field) {
    SymbolTable table;
    if (!j.contains(field)) return table;
    for (const auto& [key, value] : j.at(field).items())
        table[split_key(key)] = value.get<std::string>();
    return table;
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw InputError("parse error in '" + path + "': " + err.what());
    }
    return j;
}

PmqSpec pmq_from_json(const json& j) {
    try {
        return PmqSpec::make(j.at("elements").get<std::vector<std::string>>(),
                             j.at("unit").get<std::string>(),
                             table_from_json(j, "product"), table_from_json(j, "conj"));
    } catch (const json::exception& err) {
        throw StructuralError(std::string("malformed PMQ fixture: ") + err.what());
    }
}

GroupSpec group_from_json(const json& j) {
    try {
        std::map<std::string, std::string> inv;
        for (const auto& [key, value] : j.at("inv").items())
            inv[key] = value.get<std::string>();
        return GroupSpec::make(j.at("elements").get<std::vector<std::string>>(),
                               j.at("unit").get<std::string>(),
                               table_from_json(j, "mul"), inv);
    } catch (const json::exception& err) {
        throw StructuralError(std::string("malformed group fixture: ") + err.what());
    }
}

PairSpec pair_from_json(const json& j) {
    try {
        PmqSpec pmq = pmq_from_json(j.at("pmq"));
        GroupSpec group = group_from_json(j.at("group"));
        std::map<std::string, std::string> e;
        for (const auto& [key, value] : j.at("e").items())
            e[key] = value.get<std::string>();
        std::map<std::string, std::map<std::string, std::string>> r;
        for (const auto& [gkey, perm] : j.at("r").items())
            for (const auto& [akey, value] : perm.items())
                r[gkey][akey] = value.get<std::string>();
        return PairSpec::make(std::move(pmq), std::move(group), e, r);
    } catch (const json::exception& err) {
        throw StructuralError(std::string("malformed pair fixture: ") + err.what());
    }
}

json pmq_to_json(const PmqSpec& spec) {
    json j;
    std::vector<std::string> elements;
    for (ElemId a = 0; a < spec.size(); ++a) elements.push_back(spec.symbol(a));
    j["elements"] = elements;
    j["unit"] = spec.symbol(spec.unit());
    json product = json::object();
    json conj = json::object();
    for (ElemId a = 0; a < spec.size(); ++a)
        for (ElemId b = 0; b < spec.size(); ++b) {
            if (auto ab = spec.product(a, b))
                product[spec.symbol(a) + "|" + spec.symbol(b)] = spec.symbol(*ab);
            conj[spec.symbol(a) + "|" + spec.symbol(b)] = spec.symbol(spec.conj(a, b));
        }
    j["product"] = product;
    j["conj"] = conj;
    return j;
}

Rat rat_from_string(const std::string& text) {
    try {
        size_t slash = text.find('/');
        if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(text));
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw InputError("cannot parse rational '" + text + "'");
    }
}

std::string rat_to_string(const Rat& value) {
    std::string num = numerator(value).str();
    if (denominator(value) == 1) return num;
    return num + "/" + denominator(value).str();
}

Configuration config_from_json(const json& j, const TruncatedCompletion& tc,
                               const GroupSpec* group) {
    Configuration c;
    try {
        if (j.contains("sites"))
            for (const auto& site : j.at("sites"))
                c.sites.emplace_back(rat_from_string(site.at(0).get<std::string>()),
                                     rat_from_string(site.at(1).get<std::string>()));
        for (const auto& pj : j.at("points")) {
            LabeledPoint pt;
            pt.x = rat_from_string(pj.at("x").get<std::string>());
            pt.y = rat_from_string(pj.at("y").get<std::string>());
            if (pt.x < 0 || pt.x > 1 || pt.y < 0 || pt.y > 1)
                throw InputError("point coordinates must lie in [0,1]");
            if (pj.contains("fine")) {
                Word w = word_from_string(pj.at("fine").get<std::string>(), tc.base());
                pt.label = FineLabel{tc.class_of(w)};
            } else if (pj.contains("coarse")) {
                if (!group) throw InputError("coarse labels need a pair fixture");
                auto g = group->find(pj.at("coarse").get<std::string>());
                if (!g) throw InputError("unknown group element '" +
                                         pj.at("coarse").get<std::string>() + "'");
                pt.label = CoarseLabel{*g};
            } else {
                throw InputError("point carries neither a fine nor a coarse label");
            }
            c.points.push_back(std::move(pt));
        }
    } catch (const json::exception& err) {
        throw InputError(std::string("malformed configuration: ") + err.what());
    }
    return c;
}

json config_to_json(const Configuration& c, const TruncatedCompletion& tc,
                    const GroupSpec* group) {
    json j;
    json sites = json::array();
    for (const auto& site : c.sites)
        sites.push_back({rat_to_string(site.first), rat_to_string(site.second)});
    j["sites"] = sites;
    json points = json::array();
    for (const LabeledPoint& pt : c.points) {
        json pj;
        pj["x"] = rat_to_string(pt.x);
        pj["y"] = rat_to_string(pt.y);
        if (pt.fine())
            pj["fine"] = word_to_string(tc.cls(std::get<FineLabel>(pt.label).cls).canonical,
                                        tc.base());
        else
            pj["coarse"] = group ? group->symbol(std::get<CoarseLabel>(pt.label).g)
                                 : std::to_string(std::get<CoarseLabel>(pt.label).g);
        points.push_back(pj);
    }
    j["points"] = points;
    return j;
}

RectCovering covering_from_json(const json& j) {
    RectCovering cov;
    try {
        for (const auto& rj : j.at("rects")) {
            RectCovering::Rect rect;
            rect.x0 = rat_from_string(rj.at("x0").get<std::string>());
            rect.x1 = rat_from_string(rj.at("x1").get<std::string>());
            rect.y0 = rat_from_string(rj.at("y0").get<std::string>());
            rect.y1 = rat_from_string(rj.at("y1").get<std::string>());
            cov.rects.push_back(rect);
        }
    } catch (const json::exception& err) {
        throw InputError(std::string("malformed covering: ") + err.what());
    }
    return cov;
}

ArrayPQ array_from_json(const json& j, const TruncatedCompletion& tc) {
    try {
        int p = j.at("p").get<int>();
        int q = j.at("q").get<int>();
        if (p < 0 || q < 0) throw InputError("negative bidegree");
        ArrayPQ ua(p, q, tc.unit_class());
        const auto& entries = j.at("entries");
        for (int i = 0; i <= p + 1; ++i)
            for (int jj = 0; jj <= q + 1; ++jj) {
                Word w = word_from_string(entries.at(i).at(jj).get<std::string>(), tc.base());
                ua.set(i, jj, tc.class_of(w));
            }
        return ua;
    } catch (const json::exception& err) {
        throw InputError(std::string("malformed array: ") + err.what());
    }
}

json array_to_json(const ArrayPQ& ua, const TruncatedCompletion& tc) {
    json j;
    j["p"] = ua.p();
    j["q"] = ua.q();
    json entries = json::array();
    for (int i = 0; i <= ua.p() + 1; ++i) {
        json column = json::array();
        for (int jj = 0; jj <= ua.q() + 1; ++jj)
            column.push_back(word_to_string(tc.cls(ua.at(i, jj)).canonical, tc.base()));
        entries.push_back(column);
    }
    j["entries"] = entries;
    return j;
}

CellLocation cell_location_from_json(const json& j, const TruncatedCompletion& tc) {
    try {
        ArrayPQ ua = array_from_json(j, tc);
        std::vector<Rat> us, ut;
        for (const auto& v : j.at("us")) us.push_back(rat_from_string(v.get<std::string>()));
        for (const auto& v : j.at("ut")) ut.push_back(rat_from_string(v.get<std::string>()));
        return CellLocation(std::move(ua), std::move(us), std::move(ut));
    } catch (const json::exception& err) {
        throw InputError(std::string("malformed cell location: ") + err.what());
    }
}

json cell_location_to_json(const CellLocation& loc, const TruncatedCompletion& tc) {
    json j = array_to_json(loc.ua, tc);
    json us = json::array(), ut = json::array();
    for (const Rat& v : loc.us) us.push_back(rat_to_string(v));
    for (const Rat& v : loc.ut) ut.push_back(rat_to_string(v));
    j["us"] = us;
    j["ut"] = ut;
    return j;
}

} // namespace pmqhur
