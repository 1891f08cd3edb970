#include "stratcat/io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratcat/homology.hpp"

namespace stratcat {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- posets --

json poset_to_json(const FinPoset& P) {
    json j;
    j["elements"] = P.elements;
    json rels = json::array();
    for (auto [a, b] : cover_relations(P)) rels.push_back({P.elements[a], P.elements[b]});
    j["relations"] = rels;
    return j;
}

FinPoset poset_from_json(const json& j) {
    if (!j.contains("elements") || !j.contains("relations"))
        throw ParseError("poset needs 'elements' and 'relations'");
    std::vector<std::string> elems = j["elements"].get<std::vector<std::string>>();
    std::set<std::string> seen(elems.begin(), elems.end());
    if (seen.size() != elems.size()) throw ParseError("duplicate poset elements");
    std::vector<std::pair<std::string, std::string>> rels;
    for (const auto& r : j["relations"]) {
        if (!r.is_array() || r.size() != 2) throw ParseError("relations must be pairs");
        rels.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
    }
    return make_poset_named(std::move(elems), rels);
}

// ---------------------------------------------------------------- spaces --

json space_to_json(const FiniteSpace& X) {
    json j;
    j["points"] = X.points;
    json opens = json::array();
    for (const auto& U : X.opens) {
        json u = json::array();
        for (int p : U) u.push_back(X.points[p]);
        opens.push_back(u);
    }
    j["opens"] = opens;
    return j;
}

FiniteSpace space_from_json(const json& j) {
    FiniteSpace X;
    X.points = j.at("points").get<std::vector<std::string>>();
    auto idx = [&](const std::string& n) {
        for (int i = 0; i < static_cast<int>(X.points.size()); ++i)
            if (X.points[i] == n) return i;
        throw ParseError("unknown point '" + n + "'");
    };
    for (const auto& u : j.at("opens")) {
        std::vector<int> open;
        for (const auto& n : u) open.push_back(idx(n.get<std::string>()));
        std::sort(open.begin(), open.end());
        X.opens.push_back(std::move(open));
    }
    std::sort(X.opens.begin(), X.opens.end());
    auto rep = validate_space(X);
    if (!rep.empty()) throw ValidationError("InvalidSpace", rep);
    return X;
}

// ------------------------------------------------------------ categories --

json category_to_json(const FinCat& C) {
    json j;
    j["objects"] = C.objNames;
    json mors = json::array();
    for (int m = 0; m < C.n_mor(); ++m) {
        if (C.is_identity(m)) continue;
        mors.push_back({{"name", C.morNames[m]},
                        {"src", C.objNames[C.src[m]]},
                        {"tgt", C.objNames[C.tgt[m]]}});
    }
    j["morphisms"] = mors;
    json comps = json::array();
    for (int g = 0; g < C.n_mor(); ++g) {
        if (C.is_identity(g)) continue;
        for (int f = 0; f < C.n_mor(); ++f) {
            if (C.is_identity(f) || C.tgt[f] != C.src[g]) continue;
            comps.push_back({C.morNames[g], C.morNames[f], C.morNames[C.comp[g][f]]});
        }
    }
    j["compositions"] = comps;
    return j;
}

FinCat category_from_json(const json& j) {
    FinCat C;
    C.objNames = j.at("objects").get<std::vector<std::string>>();
    std::set<std::string> seen(C.objNames.begin(), C.objNames.end());
    if (seen.size() != C.objNames.size()) throw ParseError("duplicate object names");
    const int nO = C.n_obj();
    for (int x = 0; x < nO; ++x) {
        C.morNames.push_back("id_" + C.objNames[x]);
        C.src.push_back(x);
        C.tgt.push_back(x);
        C.idOf.push_back(x);
    }
    std::map<std::string, int> morIdx;
    for (int x = 0; x < nO; ++x) morIdx[C.morNames[x]] = x;
    auto objIdx = [&](const std::string& n) {
        for (int i = 0; i < nO; ++i)
            if (C.objNames[i] == n) return i;
        throw ParseError("unknown object '" + n + "'");
    };
    for (const auto& m : j.at("morphisms")) {
        std::string name = m.at("name").get<std::string>();
        if (morIdx.count(name)) throw ParseError("duplicate morphism name '" + name + "'");
        morIdx[name] = C.n_mor();
        C.morNames.push_back(name);
        C.src.push_back(objIdx(m.at("src").get<std::string>()));
        C.tgt.push_back(objIdx(m.at("tgt").get<std::string>()));
    }
    const int nM = C.n_mor();
    C.comp.assign(nM, std::vector<int>(nM, -1));
    for (int m = 0; m < nM; ++m) {
        C.comp[C.idOf[C.tgt[m]]][m] = m;
        C.comp[m][C.idOf[C.src[m]]] = m;
    }
    for (const auto& t : j.at("compositions")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("compositions must be triples");
        auto g = morIdx.find(t[0].get<std::string>());
        auto f = morIdx.find(t[1].get<std::string>());
        auto h = morIdx.find(t[2].get<std::string>());
        if (g == morIdx.end() || f == morIdx.end() || h == morIdx.end())
            throw ParseError("composition references unknown morphism");
        int& slot = C.comp[g->second][f->second];
        if (slot != -1 && slot != h->second) throw ParseError("conflicting composition entries");
        slot = h->second;
    }
    auto rep = validate_category(C);
    if (!rep.empty()) throw ValidationError("InvalidCategory", rep);
    return C;
}

// --------------------------------------------------------------- layered --

json layered_to_json(const LayeredCat& L) {
    json j;
    j["category"] = category_to_json(L.cat);
    j["base"] = poset_to_json(L.base);
    json labels;
    for (int x = 0; x < L.cat.n_obj(); ++x)
        labels[L.cat.objNames[x]] = L.base.elements[L.label[x]];
    j["labels"] = labels;
    return j;
}

LayeredCat layered_from_json(const json& j) {
    LayeredCat L;
    L.cat = category_from_json(j.at("category"));
    L.base = poset_from_json(j.at("base"));
    const auto& labels = j.at("labels");
    for (int x = 0; x < L.cat.n_obj(); ++x) {
        if (!labels.contains(L.cat.objNames[x]))
            throw ParseError("missing label for object '" + L.cat.objNames[x] + "'");
        L.label.push_back(L.base.index_of(labels.at(L.cat.objNames[x]).get<std::string>()));
    }
    auto rep = validate_layered(L);
    if (!rep.empty()) throw ValidationError("InvalidLayered", rep);
    return L;
}

// ------------------------------------------------------------- decollage --

std::string string_key(const FinPoset& base, const std::vector<int>& s) {
    std::string k;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) k += ",";
        k += base.elements[s[i]];
    }
    return k;
}

json decollage_to_json(const Decollage& D) {
    json j;
    j["base"] = poset_to_json(D.base);
    json values;
    for (size_t s = 0; s < D.sd.strings.size(); ++s)
        values[string_key(D.base, D.sd.strings[s])] = category_to_json(D.value[s]);
    j["values"] = values;
    json restr = json::array();
    for (const auto& [key, F] : D.restr) {
        json r;
        r["from"] = string_key(D.base, D.sd.strings[key.first]);
        r["to"] = string_key(D.base, D.sd.strings[key.second]);
        r["objects"] = F.objMap;
        json mors;
        const FinCat& src = D.value[key.first];
        const FinCat& dst = D.value[key.second];
        for (int m = 0; m < src.n_mor(); ++m) {
            if (src.is_identity(m)) continue;
            mors[src.morNames[m]] = dst.morNames[F.morMap[m]];
        }
        r["morphisms"] = mors;
        restr.push_back(r);
    }
    j["restrictions"] = restr;
    return j;
}

Decollage decollage_from_json(const json& j) {
    Decollage D;
    D.base = poset_from_json(j.at("base"));
    D.sd = subdivision(D.base);
    const auto& values = j.at("values");
    for (size_t s = 0; s < D.sd.strings.size(); ++s) {
        const std::string key = string_key(D.base, D.sd.strings[s]);
        if (!values.contains(key)) throw ParseError("missing value for string {" + key + "}");
        D.value.push_back(category_from_json(values.at(key)));
    }
    std::map<std::string, int> stringIdx;
    for (size_t s = 0; s < D.sd.strings.size(); ++s)
        stringIdx[string_key(D.base, D.sd.strings[s])] = static_cast<int>(s);
    for (const auto& r : j.at("restrictions")) {
        const int from = stringIdx.at(r.at("from").get<std::string>());
        const int to = stringIdx.at(r.at("to").get<std::string>());
        FunctorData F;
        F.objMap = r.at("objects").get<std::vector<int>>();
        const FinCat& src = D.value[from];
        const FinCat& dst = D.value[to];
        if (static_cast<int>(F.objMap.size()) != src.n_obj())
            throw ParseError("restriction object map has wrong length");
        F.morMap.assign(src.n_mor(), -1);
        for (int m = 0; m < src.n_mor(); ++m)
            if (src.is_identity(m)) {
                if (F.objMap[src.src[m]] < 0 || F.objMap[src.src[m]] >= dst.n_obj())
                    throw ParseError("restriction object map out of range");
                F.morMap[m] = dst.idOf[F.objMap[src.src[m]]];
            }
        const auto& mors = r.at("morphisms");
        for (int m = 0; m < src.n_mor(); ++m) {
            if (src.is_identity(m)) continue;
            if (!mors.contains(src.morNames[m]))
                throw ParseError("restriction missing morphism '" + src.morNames[m] + "'");
            F.morMap[m] = dst.morphism_index(mors.at(src.morNames[m]).get<std::string>());
        }
        D.restr[{from, to}] = std::move(F);
    }
    auto rep = validate_decollage(D);
    if (!rep.empty()) throw ValidationError("InvalidDecollage", rep);
    return D;
}

// ----------------------------------------------------------------- sheaf --

json sheaf_to_json(const SheafDoc& S) {
    json j;
    j["category"] = category_to_json(S.cat);
    json sets, maps;
    auto elemName = [&](int obj, int e) { return S.cat.objNames[obj] + "." + std::to_string(e); };
    for (int x = 0; x < S.cat.n_obj(); ++x) {
        json lst = json::array();
        for (int e = 0; e < S.F.size[x]; ++e) lst.push_back(elemName(x, e));
        sets[S.cat.objNames[x]] = lst;
    }
    for (int m = 0; m < S.cat.n_mor(); ++m) {
        if (S.cat.is_identity(m)) continue;
        json lst = json::array();
        for (int e = 0; e < S.F.size[S.cat.src[m]]; ++e)
            lst.push_back(elemName(S.cat.tgt[m], S.F.map[m][e]));
        maps[S.cat.morNames[m]] = lst;
    }
    j["sets"] = sets;
    j["maps"] = maps;
    return j;
}

SheafDoc sheaf_from_json(const json& j) {
    SheafDoc S;
    S.cat = category_from_json(j.at("category"));
    const auto& sets = j.at("sets");
    std::vector<std::map<std::string, int>> elemIdx(S.cat.n_obj());
    for (int x = 0; x < S.cat.n_obj(); ++x) {
        if (!sets.contains(S.cat.objNames[x]))
            throw ParseError("missing set for object '" + S.cat.objNames[x] + "'");
        auto lst = sets.at(S.cat.objNames[x]).get<std::vector<std::string>>();
        S.F.size.push_back(static_cast<int>(lst.size()));
        for (size_t e = 0; e < lst.size(); ++e) {
            if (elemIdx[x].count(lst[e])) throw ParseError("duplicate element name '" + lst[e] + "'");
            elemIdx[x][lst[e]] = static_cast<int>(e);
        }
    }
    S.F.map.assign(S.cat.n_mor(), {});
    const auto& maps = j.at("maps");
    for (int m = 0; m < S.cat.n_mor(); ++m) {
        const int sx = S.cat.src[m], tx = S.cat.tgt[m];
        if (S.cat.is_identity(m)) {
            S.F.map[m].resize(S.F.size[sx]);
            std::iota(S.F.map[m].begin(), S.F.map[m].end(), 0);
            continue;
        }
        if (!maps.contains(S.cat.morNames[m]))
            throw ParseError("missing map for morphism '" + S.cat.morNames[m] + "'");
        auto lst = maps.at(S.cat.morNames[m]).get<std::vector<std::string>>();
        if (static_cast<int>(lst.size()) != S.F.size[sx])
            throw ParseError("map for '" + S.cat.morNames[m] + "' has wrong length");
        for (const auto& name : lst) {
            auto it = elemIdx[tx].find(name);
            if (it == elemIdx[tx].end())
                throw ParseError("map for '" + S.cat.morNames[m] + "' uses unknown element");
            S.F.map[m].push_back(it->second);
        }
    }
    auto rep = validate_set_functor(S.cat, S.F);
    if (!rep.empty()) throw ValidationError("InvalidSheaf", rep);
    return S;
}

// ----------------------------------------------------------------- tower --

json tower_to_json(const PosetTower& T) {
    json j;
    j["index"] = poset_to_json(T.index);
    json nodes = json::array();
    for (const auto& n : T.nodes) nodes.push_back(poset_to_json(n));
    j["nodes"] = nodes;
    json bonds = json::array();
    for (const auto& [key, b] : T.bonds) {
        json e;
        e["to"] = T.index.elements[key.first];
        e["from"] = T.index.elements[key.second];
        json m;
        for (int x = 0; x < b.source.size(); ++x)
            m[b.source.elements[x]] = b.target.elements[b.map[x]];
        e["map"] = m;
        bonds.push_back(e);
    }
    j["bonds"] = bonds;
    return j;
}

PosetTower tower_from_json(const json& j) {
    PosetTower T;
    T.index = poset_from_json(j.at("index"));
    for (const auto& n : j.at("nodes")) T.nodes.push_back(poset_from_json(n));
    if (static_cast<int>(T.nodes.size()) != T.index.size())
        throw ParseError("tower needs one node per index element");
    for (const auto& e : j.at("bonds")) {
        const int to = T.index.index_of(e.at("to").get<std::string>());
        const int from = T.index.index_of(e.at("from").get<std::string>());
        MonotoneMap b;
        b.source = T.nodes[from];
        b.target = T.nodes[to];
        b.map.assign(b.source.size(), -1);
        const auto& m = e.at("map");
        for (int x = 0; x < b.source.size(); ++x) {
            if (!m.contains(b.source.elements[x]))
                throw ParseError("bond map missing '" + b.source.elements[x] + "'");
            b.map[x] = b.target.index_of(m.at(b.source.elements[x]).get<std::string>());
        }
        T.bonds[{to, from}] = std::move(b);
    }
    auto rep = validate_tower(T);
    if (!rep.empty()) throw ValidationError("InvalidTower", rep);
    return T;
}

// ----------------------------------------------------------------- group --

json group_to_json(const FinGroup& G) {
    json j;
    j["degree"] = G.degree();
    json gens = json::array();
    for (int i = 0; i < G.n_gens(); ++i) gens.push_back(cycles_of_perm(G.generator(i)));
    j["generators"] = gens;
    return j;
}

FinGroup group_from_json(const json& j) {
    const int degree = j.at("degree").get<int>();
    if (degree < 1) throw ParseError("degree must be positive");
    std::vector<std::vector<std::vector<int>>> gens;
    for (const auto& g : j.at("generators")) gens.push_back(g.get<std::vector<std::vector<int>>>());
    return group_from_cycles(degree, gens);
}

// ----------------------------------------------------------------- curve --

std::vector<std::string> curve_gen_names(int g, int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= g; ++i) {
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
    }
    for (int i = 1; i <= n - 1; ++i) names.push_back("c" + std::to_string(i));
    return names;
}

json curve_to_json(const CurveSpec& S) {
    json j;
    j["genus"] = S.genus;
    j["punctures"] = S.punctures;
    j["degree"] = S.group.degree();
    json grp = json::array();
    for (int i = 0; i < S.group.n_gens(); ++i) grp.push_back(cycles_of_perm(S.group.generator(i)));
    j["group"] = grp;
    json imgs;
    auto names = curve_gen_names(S.genus, S.punctures);
    for (size_t i = 0; i < S.images.size(); ++i) imgs[names[i]] = cycles_of_perm(S.images[i]);
    j["images"] = imgs;
    return j;
}

CurveSpec curve_from_json(const json& j) {
    CurveSpec S;
    S.genus = j.at("genus").get<int>();
    S.punctures = j.at("punctures").get<int>();
    const int degree = j.at("degree").get<int>();
    std::vector<std::vector<std::vector<int>>> gens;
    for (const auto& g : j.at("group")) gens.push_back(g.get<std::vector<std::vector<int>>>());
    S.group = group_from_cycles(degree, gens);
    auto names = curve_gen_names(S.genus, S.punctures);
    const auto& imgs = j.at("images");
    for (const auto& name : names) {
        if (!imgs.contains(name)) throw ParseError("missing curve image '" + name + "'");
        S.images.push_back(
            perm_from_cycles(degree, imgs.at(name).get<std::vector<std::vector<int>>>()));
    }
    auto rep = validate_curve_spec(S);
    if (!rep.empty()) throw ValidationError("InvalidCurve", rep);
    return S;
}

} // namespace

Document load_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object() || !j.contains("kind")) throw ParseError("document needs a 'kind'");
    Document d;
    d.kind = j.at("kind").get<std::string>();
    d.version = j.value("version", kFormatVersion);
    if (d.version != kFormatVersion)
        throw ParseError("unsupported format version " + std::to_string(d.version));
    if (d.kind == "poset")
        d.payload = poset_from_json(j);
    else if (d.kind == "space")
        d.payload = space_from_json(j);
    else if (d.kind == "category")
        d.payload = category_from_json(j);
    else if (d.kind == "layered")
        d.payload = layered_from_json(j);
    else if (d.kind == "decollage")
        d.payload = decollage_from_json(j);
    else if (d.kind == "sheaf")
        d.payload = sheaf_from_json(j);
    else if (d.kind == "tower")
        d.payload = tower_from_json(j);
    else if (d.kind == "group")
        d.payload = group_from_json(j);
    else if (d.kind == "curve")
        d.payload = curve_from_json(j);
    else
        throw ParseError("unknown kind '" + d.kind + "'");
    return d;
}

Document load_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_document(ss.str());
}

std::string emit_document(const Document& doc) {
    json j;
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, FinPoset>)
                j = poset_to_json(payload);
            else if constexpr (std::is_same_v<T, FiniteSpace>)
                j = space_to_json(payload);
            else if constexpr (std::is_same_v<T, FinCat>)
                j = category_to_json(payload);
            else if constexpr (std::is_same_v<T, LayeredCat>)
                j = layered_to_json(payload);
            else if constexpr (std::is_same_v<T, Decollage>)
                j = decollage_to_json(payload);
            else if constexpr (std::is_same_v<T, SheafDoc>)
                j = sheaf_to_json(payload);
            else if constexpr (std::is_same_v<T, PosetTower>)
                j = tower_to_json(payload);
            else if constexpr (std::is_same_v<T, FinGroup>)
                j = group_to_json(payload);
            else if constexpr (std::is_same_v<T, CurveSpec>)
                j = curve_to_json(payload);
        },
        doc.payload);
    j["kind"] = doc.kind;
    j["version"] = doc.version;
    return j.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') q += '\\';
        q += c;
    }
    return q + "\"";
}

const char* kPalette[] = {"lightblue", "palegreen",  "lightsalmon", "khaki",
                          "plum",      "lightcyan",  "wheat",       "mistyrose"};

std::vector<int> generating_morphisms(const FinCat& C) {
    std::vector<int> gens;
    for (int m = 0; m < C.n_mor(); ++m) {
        if (C.is_identity(m)) continue;
        bool composite = false;
        for (int g = 0; g < C.n_mor() && !composite; ++g)
            for (int f = 0; f < C.n_mor() && !composite; ++f)
                if (!C.is_identity(g) && !C.is_identity(f) && C.tgt[f] == C.src[g] &&
                    C.comp[g][f] == m && g != m && f != m)
                    composite = true;
        if (!composite) gens.push_back(m);
    }
    return gens;
}

std::string poset_dot(const FinPoset& P) {
    std::ostringstream o;
    o << "digraph poset {\n  rankdir=BT;\n";
    for (int i = 0; i < P.size(); ++i)
        o << "  n" << i << " [label=" << dot_quote(P.elements[i]) << "];\n";
    for (auto [a, b] : cover_relations(P)) o << "  n" << a << " -> n" << b << ";\n";
    o << "}\n";
    return o.str();
}

std::string category_dot(const FinCat& C) {
    std::ostringstream o;
    o << "digraph category {\n";
    for (int i = 0; i < C.n_obj(); ++i)
        o << "  n" << i << " [label=" << dot_quote(C.objNames[i]) << "];\n";
    for (int m : generating_morphisms(C))
        o << "  n" << C.src[m] << " -> n" << C.tgt[m] << " [label=" << dot_quote(C.morNames[m])
          << "];\n";
    o << "}\n";
    return o.str();
}

std::string layered_dot(const LayeredCat& L) {
    std::ostringstream o;
    o << "digraph layered {\n  compound=true;\n";
    for (int p = 0; p < L.base.size(); ++p) {
        o << "  subgraph cluster_" << p << " {\n";
        o << "    label=" << dot_quote(L.base.elements[p]) << ";\n";
        o << "    style=filled;\n    color=" << kPalette[p % 8] << ";\n";
        for (int x = 0; x < L.cat.n_obj(); ++x)
            if (L.label[x] == p)
                o << "    n" << x << " [label=" << dot_quote(L.cat.objNames[x]) << "];\n";
        o << "  }\n";
    }
    // intra-stratum edges: generators of the stratum groupoids; link edges:
    // every morphism over a cover relation of the base
    std::set<std::pair<int, int>> covers;
    for (auto [a, b] : cover_relations(L.base)) covers.insert({a, b});
    for (int m : generating_morphisms(L.cat))
        if (L.label[L.cat.src[m]] == L.label[L.cat.tgt[m]])
            o << "  n" << L.cat.src[m] << " -> n" << L.cat.tgt[m]
              << " [label=" << dot_quote(L.cat.morNames[m]) << "];\n";
    for (int m = 0; m < L.cat.n_mor(); ++m)
        if (covers.count({L.label[L.cat.src[m]], L.label[L.cat.tgt[m]]}))
            o << "  n" << L.cat.src[m] << " -> n" << L.cat.tgt[m]
              << " [label=" << dot_quote(L.cat.morNames[m]) << ", style=dashed];\n";
    o << "}\n";
    return o.str();
}

} // namespace

std::string emit_dot(const Document& doc) {
    if (doc.kind == "poset") return poset_dot(std::get<FinPoset>(doc.payload));
    if (doc.kind == "category") return category_dot(std::get<FinCat>(doc.payload));
    if (doc.kind == "layered") return layered_dot(std::get<LayeredCat>(doc.payload));
    throw DomainError("UnsupportedKind", "dot emission supports poset, category, layered");
}

// ------------------------------------------------------------------- CLI --

namespace {

std::map<std::string, std::string> parse_pairs(const std::string& s) {
    std::map<std::string, std::string> m;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("expected comma-separated k=v pairs");
        m[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return m;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// cycle notation like "(0 1)(2 3)"; "" is the identity
Perm parse_cycles(int degree, const std::string& s) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ') {
            ++i;
            continue;
        }
        if (s[i] != '(') throw ParseError("expected '(' in cycle notation");
        size_t close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("unbalanced cycle");
        std::vector<int> cyc;
        std::stringstream ss(s.substr(i + 1, close - i - 1));
        int v;
        while (ss >> v) cyc.push_back(v);
        cycles.push_back(cyc);
        i = close + 1;
    }
    return perm_from_cycles(degree, cycles);
}

MonotoneMap stratification_from_flags(const FinPoset& X, const std::string& toFile,
                                      const std::string& mapSpec) {
    MonotoneMap s;
    s.source = X;
    if (toFile.empty()) {
        s.target = make_poset({"0"}, {});
        s.map.assign(X.size(), 0);
    } else {
        Document d = load_document_file(toFile);
        if (d.kind != "poset") throw ParseError("--to expects a poset document");
        s.target = std::get<FinPoset>(d.payload);
        auto pairs = parse_pairs(mapSpec);
        s.map.assign(X.size(), -1);
        for (int i = 0; i < X.size(); ++i) {
            auto it = pairs.find(X.elements[i]);
            if (it == pairs.end()) throw ParseError("--map missing '" + X.elements[i] + "'");
            s.map[i] = s.target.index_of(it->second);
        }
    }
    auto rep = validate_monotone(s);
    if (!rep.empty()) throw ValidationError("InvalidMonotoneMap", rep);
    return s;
}

SetFunctor sheaf_on_category(const SheafDoc& S, const FinCat& C) {
    // match by object/morphism names
    SetFunctor F;
    F.size.assign(C.n_obj(), 0);
    F.map.assign(C.n_mor(), {});
    for (int x = 0; x < C.n_obj(); ++x) F.size[x] = S.F.size[S.cat.object_index(C.objNames[x])];
    for (int m = 0; m < C.n_mor(); ++m)
        F.map[m] = S.F.map[S.cat.morphism_index(C.morNames[m])];
    auto rep = validate_set_functor(C, F);
    if (!rep.empty()) throw ValidationError("InvalidSheaf", rep);
    return F;
}

std::vector<char> sieve_from_flag(const FinPoset& base, const std::string& spec) {
    std::vector<char> sieve(base.size(), 0);
    if (!spec.empty())
        for (const auto& name : split_list(spec, ','))
            sieve[base.index_of(name)] = 1;
    return sieve;
}

struct CommandError {
    int code;
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite stratified categories toolkit"};
    app.require_subcommand(0, 1);
    bool showVersion = false;
    app.add_flag("--version", showVersion, "print the document format version");

    std::string file, file2, file3, subset, toFile, mapSpec, sieveSpec, objName;
    std::string toZ, toU, baseMapSpec;
    int k = 2, maxDim = 2, genus = -1, punctures = -1;
    long long cap = 20000000;
    bool withCounts = false;
    int degree = 1;

    auto* cValidate = app.add_subcommand("validate", "validate a document");
    cValidate->add_option("file", file)->required();
    auto* cAlex = app.add_subcommand("alexandroff", "Alexandroff space of a poset");
    cAlex->add_option("file", file)->required();
    auto* cSpec = app.add_subcommand("specialize", "specialisation poset of a T0 space");
    cSpec->add_option("file", file)->required();
    auto* cSd = app.add_subcommand("sd", "string subdivision of a poset");
    cSd->add_option("file", file)->required();
    auto* cClassify = app.add_subcommand("classify-subposet", "classify a subset of a poset");
    cClassify->add_option("file", file)->required();
    cClassify->add_option("--subset", subset, "comma-separated element names");
    auto* cStrat = app.add_subcommand("stratifications", "monotone surjections up to iso");
    cStrat->add_option("file", file)->required();
    auto* cTower = app.add_subcommand("tower-limit", "limit of a finite poset tower");
    cTower->add_option("file", file)->required();
    auto* cNerve = app.add_subcommand("nerve", "decollage of a layered category");
    cNerve->add_option("file", file)->required();
    auto* cReass = app.add_subcommand("reassemble", "layered category of a decollage");
    cReass->add_option("file", file)->required();
    auto* cCoarsen = app.add_subcommand("coarsen", "localization presentation along a coarsening");
    cCoarsen->add_option("file", file)->required();
    cCoarsen->add_option("--to", toFile);
    cCoarsen->add_option("--map", mapSpec);
    auto* cExo = app.add_subcommand("exodromy", "constructible-sheaf vs exit-path counting");
    cExo->add_option("file", file)->required();
    cExo->add_option("--to", toFile);
    cExo->add_option("--map", mapSpec);
    cExo->add_option("--k", k);
    cExo->add_option("--cap", cap);
    auto* cRecoll = app.add_subcommand("recollement", "decompose and reassemble a sheaf");
    cRecoll->add_option("layered", file)->required();
    cRecoll->add_option("sheaf", file2)->required();
    cRecoll->add_option("--sieve", sieveSpec);
    cRecoll->add_flag("--counts", withCounts);
    cRecoll->add_option("--k", k);
    auto* cBC = app.add_subcommand("beck-chevalley", "base change comparison along a sieve");
    cBC->add_option("layered", file)->required();
    cBC->add_option("sheaf", file2)->required();
    cBC->add_option("--sieve", sieveSpec);
    auto* cHom = app.add_subcommand("homology", "integral homology of the nerve");
    cHom->add_option("file", file)->required();
    cHom->add_option("--max-dim", maxDim);
    auto* cH1 = app.add_subcommand("h1-presentation", "H1 of a presentation");
    cH1->add_option("file", file);
    cH1->add_option("--genus", genus);
    cH1->add_option("--punctures", punctures);
    cH1->add_option("--to", toFile);
    cH1->add_option("--map", mapSpec);
    auto* cGroth = app.add_subcommand("grothendieck", "total category of a decollage");
    cGroth->add_option("file", file)->required();
    auto* cVK = app.add_subcommand("vankampen", "compare H0, H1 of nerve and decollage total");
    cVK->add_option("file", file)->required();
    auto* cCurve = app.add_subcommand("curve", "curve-level layered category");
    cCurve->add_option("file", file)->required();
    auto* cDvr = app.add_subcommand("dvr", "two-stratum layered category from group data");
    cDvr->add_option("gz", file)->required();
    cDvr->add_option("gu", file2)->required();
    cDvr->add_option("gd", file3)->required();
    cDvr->add_option("--to-z", toZ, "semicolon-separated cycle images per D generator");
    cDvr->add_option("--to-u", toU);
    auto* cCM = app.add_subcommand("classify-morphism", "scheme-morphism dictionary tags");
    cCM->add_option("sub", file)->required();
    cCM->add_option("amb", file2)->required();
    cCM->add_option("--base-map", baseMapSpec);
    auto* cLoc = app.add_subcommand("localize", "coslice at an object");
    cLoc->add_option("file", file)->required();
    cLoc->add_option("--object", objName)->required();
    auto* cNorm = app.add_subcommand("normalize", "slice at an object");
    cNorm->add_option("file", file)->required();
    cNorm->add_option("--object", objName)->required();
    auto* cCount = app.add_subcommand("count-functors", "iso classes of set functors");
    cCount->add_option("file", file)->required();
    cCount->add_option("--k", k);
    cCount->add_option("--cap", cap);
    auto* cDot = app.add_subcommand("dot", "DOT graph of a document");
    cDot->add_option("file", file)->required();
    (void)degree;

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (showVersion) {
            out << kFormatVersion << "\n";
            return 0;
        }
        if (app.get_subcommands().empty()) {
            err << app.help();
            return 2;
        }
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        auto emit = [&](Document d) { out << emit_document(d); };

        if (name == "validate") {
            Document d = load_document_file(file);
            out << "valid " << d.kind << "\n";
        } else if (name == "alexandroff") {
            Document d = load_document_file(file);
            emit({"space", kFormatVersion, alexandroff(std::get<FinPoset>(d.payload))});
        } else if (name == "specialize") {
            Document d = load_document_file(file);
            emit({"poset", kFormatVersion, specialization_poset(std::get<FiniteSpace>(d.payload))});
        } else if (name == "sd") {
            Document d = load_document_file(file);
            emit({"poset", kFormatVersion, subdivision(std::get<FinPoset>(d.payload)).poset});
        } else if (name == "classify-subposet") {
            Document d = load_document_file(file);
            const auto& P = std::get<FinPoset>(d.payload);
            std::vector<char> mask(P.size(), 0);
            if (!subset.empty())
                for (const auto& n : split_list(subset, ',')) mask[P.index_of(n)] = 1;
            out << to_string(classify_subposet(P, mask)) << "\n";
        } else if (name == "stratifications") {
            Document d = load_document_file(file);
            auto list = enumerate_stratifications(std::get<FinPoset>(d.payload));
            out << "count: " << list.size() << "\n";
            for (const auto& s : list) {
                for (int i = 0; i < s.source.size(); ++i)
                    out << (i ? "," : "") << s.source.elements[i] << "->"
                        << s.target.elements[s.map[i]];
                out << " | blocks: " << s.target.size() << "\n";
            }
        } else if (name == "tower-limit") {
            Document d = load_document_file(file);
            emit({"poset", kFormatVersion, tower_limit(std::get<PosetTower>(d.payload))});
        } else if (name == "nerve") {
            Document d = load_document_file(file);
            emit({"decollage", kFormatVersion, nerve(std::get<LayeredCat>(d.payload))});
        } else if (name == "reassemble") {
            Document d = load_document_file(file);
            emit({"layered", kFormatVersion, reassemble(std::get<Decollage>(d.payload))});
        } else if (name == "coarsen") {
            Document d = load_document_file(file);
            const auto& L = std::get<LayeredCat>(d.payload);
            MonotoneMap s = stratification_from_flags(L.base, toFile, mapSpec);
            PresCat P = coarsen(L, s);
            auto h1 = presentation_h1(P);
            json j;
            j["generators"] = P.n_gen();
            int inv = 0;
            for (char c : P.inverted) inv += c ? 1 : 0;
            j["inverted"] = inv;
            j["pi0"] = pres_cat_pi0(P);
            j["h1"] = {{"rank", h1.betti}, {"torsion", json::array()}};
            for (const auto& t : h1.torsion) j["h1"]["torsion"].push_back(t.str());
            out << j.dump(2) << "\n";
        } else if (name == "exodromy") {
            Document d = load_document_file(file);
            const auto& X = std::get<FinPoset>(d.payload);
            MonotoneMap s = stratification_from_flags(X, toFile, mapSpec);
            auto R = exodromy_check(X, s, k, cap);
            if (R.ok) {
                out << "ok: " << R.sideA << " = " << R.sideB << "\n";
            } else {
                out << "mismatch: " << R.sideA << " != " << R.sideB << "\n";
                return 1;
            }
        } else if (name == "recollement") {
            const auto& L = std::get<LayeredCat>(load_document_file(file).payload);
            const auto S = std::get<SheafDoc>(load_document_file(file2).payload);
            SetFunctor F = sheaf_on_category(S, L.cat);
            auto R = recollement_round_trip(L, sieve_from_flag(L.base, sieveSpec), F, withCounts, k);
            out << (R.ok ? "ok" : "mismatch");
            if (withCounts) out << " sheaf-classes: " << R.sheafClasses
                                << " triple-classes: " << R.tripleClasses;
            out << "\n";
            if (!R.ok || (withCounts && R.sheafClasses != R.tripleClasses)) return 1;
        } else if (name == "beck-chevalley") {
            const auto& L = std::get<LayeredCat>(load_document_file(file).payload);
            const auto S = std::get<SheafDoc>(load_document_file(file2).payload);
            auto sieve = sieve_from_flag(L.base, sieveSpec);
            std::vector<int> uObjs;
            for (int x = 0; x < L.cat.n_obj(); ++x)
                if (!sieve[L.label[x]]) uObjs.push_back(x);
            SubCat uPart = full_subcat(L.cat, uObjs);
            SetFunctor F = sheaf_on_category(S, uPart.cat);
            auto R = beck_chevalley_check(L, sieve, F);
            out << (R.ok ? "ok" : "fail") << "\n";
            if (!R.ok) return 1;
        } else if (name == "homology") {
            Document d = load_document_file(file);
            const FinCat& C = d.kind == "layered" ? std::get<LayeredCat>(d.payload).cat
                                                  : std::get<FinCat>(d.payload);
            ChainComplex K = nerve_complex(C, maxDim);
            for (int n = 0; n + 1 <= maxDim; ++n)
                out << "H" << n << " = " << homology_groups(K, n).to_string() << "\n";
        } else if (name == "h1-presentation") {
            HomologyResult h;
            if (genus >= 0 && punctures >= 2) {
                h = presentation_h1(curve_presentation(genus, punctures));
            } else if (!file.empty()) {
                const auto& L = std::get<LayeredCat>(load_document_file(file).payload);
                MonotoneMap s = stratification_from_flags(L.base, toFile, mapSpec);
                h = presentation_h1(coarsen(L, s));
            } else {
                err << "h1-presentation needs --genus/--punctures or a layered document\n";
                return 2;
            }
            out << "H1 = " << h.to_string() << "\n";
        } else if (name == "grothendieck") {
            Document d = load_document_file(file);
            emit({"category", kFormatVersion, grothendieck_total(std::get<Decollage>(d.payload))});
        } else if (name == "vankampen") {
            const auto& L = std::get<LayeredCat>(load_document_file(file).payload);
            auto R = van_kampen_check(L, 1);
            if (R.ok) {
                out << "ok: H0=" << R.direct[0].to_string() << ", H1=" << R.direct[1].to_string()
                    << "\n";
            } else {
                out << "mismatch: nerve H0=" << R.direct[0].to_string()
                    << " H1=" << R.direct[1].to_string()
                    << " vs decollage H0=" << R.decollage[0].to_string()
                    << " H1=" << R.decollage[1].to_string() << "\n";
                return 1;
            }
        } else if (name == "curve") {
            Document d = load_document_file(file);
            emit({"layered", kFormatVersion, build_curve_level(std::get<CurveSpec>(d.payload))});
        } else if (name == "dvr") {
            const auto Gz = std::get<FinGroup>(load_document_file(file).payload);
            const auto Gu = std::get<FinGroup>(load_document_file(file2).payload);
            const auto Gd = std::get<FinGroup>(load_document_file(file3).payload);
            auto parseImages = [&](const std::string& spec, const FinGroup& target) {
                std::vector<Perm> imgs;
                for (const auto& s : split_list(spec, ';'))
                    imgs.push_back(parse_cycles(target.degree(), s));
                if (static_cast<int>(imgs.size()) != Gd.n_gens())
                    throw ParseError("expected one image per D generator");
                return imgs;
            };
            GroupHom hz = make_group_hom_perms(Gd, Gz, parseImages(toZ, Gz));
            GroupHom hu = make_group_hom_perms(Gd, Gu, parseImages(toU, Gu));
            emit({"layered", kFormatVersion, build_two_stratum(Gz, Gu, Gd, hz, hu)});
        } else if (name == "classify-morphism") {
            const auto& sub2 = std::get<LayeredCat>(load_document_file(file).payload);
            const auto& amb = std::get<LayeredCat>(load_document_file(file2).payload);
            Functor F;
            F.source = sub2.cat;
            F.target = amb.cat;
            for (const auto& n : sub2.cat.objNames) F.objMap.push_back(amb.cat.object_index(n));
            for (int m = 0; m < sub2.cat.n_mor(); ++m) {
                if (sub2.cat.is_identity(m))
                    F.morMap.push_back(amb.cat.idOf[F.objMap[sub2.cat.src[m]]]);
                else
                    F.morMap.push_back(amb.cat.morphism_index(sub2.cat.morNames[m]));
            }
            MonotoneMap bm;
            bm.source = sub2.base;
            bm.target = amb.base;
            if (baseMapSpec.empty()) {
                for (const auto& n : sub2.base.elements) bm.map.push_back(amb.base.index_of(n));
            } else {
                auto pairs = parse_pairs(baseMapSpec);
                for (const auto& n : sub2.base.elements) bm.map.push_back(amb.base.index_of(pairs.at(n)));
            }
            auto T = classify_gal_morphism(sub2, amb, F, bm);
            out << T.summary << "\n";
        } else if (name == "localize" || name == "normalize") {
            const auto& L = std::get<LayeredCat>(load_document_file(file).payload);
            auto R = localize_normalize(L, L.cat.object_index(objName));
            out << "weakly-initial: " << (R.weaklyInitial ? "yes" : "no")
                << " weakly-terminal: " << (R.weaklyTerminal ? "yes" : "no") << "\n";
            emit({"layered", kFormatVersion, name == "localize" ? R.coslice : R.slice});
        } else if (name == "count-functors") {
            Document d = load_document_file(file);
            const FinCat& C = d.kind == "layered" ? std::get<LayeredCat>(d.payload).cat
                                                  : std::get<FinCat>(d.payload);
            auto R = count_functor_iso_classes(C, k, cap);
            out << "classes: " << R.count << "\n";
        } else if (name == "dot") {
            out << emit_dot(load_document_file(file));
        }
        return 0;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::bad_variant_access&) {
        err << "ParseError: document kind does not fit this command\n";
        return 2;
    } catch (const DomainError& e) {
        err << e.what() << "\n";
        return 1;
    }
}

} // namespace stratcat
