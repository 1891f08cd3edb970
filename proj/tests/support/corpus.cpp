#include "support/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace stratcat::corpus {

FinPoset pseudo_circle() {
    return make_poset_named({"a", "b", "u", "v"},
                            {{"a", "u"}, {"a", "v"}, {"b", "u"}, {"b", "v"}});
}

std::vector<FinPoset> all_posets_of_size(int n) {
    std::vector<FinPoset> out;
    if (n == 0) {
        FinPoset P;
        out.push_back(P);
        return out;
    }
    if (n > 6) throw CapExceeded("poset enumeration capped at 6 elements");
    // every finite poset admits a linear extension, so upper-triangular
    // strict relations reach every iso class
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::set<std::vector<char>> canon;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<char> rel(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) rel[static_cast<size_t>(i) * n + i] = 1;
        for (size_t t = 0; t < pairs.size(); ++t)
            if (mask & (1u << t)) rel[static_cast<size_t>(pairs[t].first) * n + pairs[t].second] = 1;
        // transitivity check (antisymmetry is automatic for upper-triangular)
        bool trans = true;
        for (int i = 0; i < n && trans; ++i)
            for (int j = 0; j < n && trans; ++j) {
                if (!rel[static_cast<size_t>(i) * n + j]) continue;
                for (int k = 0; k < n && trans; ++k)
                    if (rel[static_cast<size_t>(j) * n + k] && !rel[static_cast<size_t>(i) * n + k])
                        trans = false;
            }
        if (!trans) continue;
        // canonical form: minimum over relabelings
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<char> best;
        do {
            std::vector<char> m(static_cast<size_t>(n) * n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m[static_cast<size_t>(perm[i]) * n + perm[j]] =
                        rel[static_cast<size_t>(i) * n + j];
            if (best.empty() || m < best) best = std::move(m);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (canon.insert(best).second) {
            FinPoset P;
            P.elements = names;
            P.rel = best;
            out.push_back(std::move(P));
        }
    }
    return out;
}

std::vector<FinPoset> all_posets_up_to(int nMax) {
    std::vector<FinPoset> out;
    for (int n = 0; n <= nMax; ++n) {
        auto some = all_posets_of_size(n);
        out.insert(out.end(), some.begin(), some.end());
    }
    return out;
}

DvrTriple standard_dvr_triple() {
    DvrTriple t;
    t.name = "dvr(Z2,S3,<(12)>)";
    t.gz = cyclic_group(2);
    t.gu = symmetric_group(3);
    t.d = group_from_cycles(3, {{{0, 1}}});
    t.toZ = make_group_hom_perms(t.d, t.gz, {perm_from_cycles(2, {{0, 1}})});
    t.toU = make_group_hom_perms(t.d, t.gu, {perm_from_cycles(3, {{0, 1}})});
    return t;
}

std::vector<DvrTriple> dvr_triples() {
    std::vector<DvrTriple> ts;
    ts.push_back(standard_dvr_triple());
    {
        DvrTriple t;
        t.name = "dvr(Z2,Z2,Z2)";
        t.gz = cyclic_group(2);
        t.gu = cyclic_group(2);
        t.d = cyclic_group(2);
        t.toZ = make_group_hom(t.d, t.gz, {t.gz.gen_element(0)});
        t.toU = make_group_hom(t.d, t.gu, {t.gu.gen_element(0)});
        ts.push_back(std::move(t));
    }
    {
        DvrTriple t;
        t.name = "dvr(1,S3,1)";
        t.gz = trivial_group();
        t.gu = symmetric_group(3);
        t.d = trivial_group();
        t.toZ = make_group_hom(t.d, t.gz, {});
        t.toU = make_group_hom(t.d, t.gu, {});
        ts.push_back(std::move(t));
    }
    return ts;
}

LayeredCat dvr_cat(const DvrTriple& t) { return build_two_stratum(t.gz, t.gu, t.d, t.toZ, t.toU); }

LayeredCat standard_dvr() { return dvr_cat(standard_dvr_triple()); }

CurveSpec cyclic_curve_spec(int g, int n, int m) {
    CurveSpec S;
    S.genus = g;
    S.punctures = n;
    S.group = cyclic_group(m);
    std::vector<int> shift(m);
    for (int i = 0; i < m; ++i) shift[i] = (i + 1) % m;
    for (int j = 0; j < g; ++j) {
        S.images.push_back(shift);                // a_j
        S.images.push_back(perm_identity(m));     // b_j
    }
    for (int i = 0; i < n - 1; ++i) S.images.push_back(shift); // c_i
    return S;
}

CurveSpec criterion7_spec() {
    CurveSpec S;
    S.genus = 1;
    S.punctures = 2;
    S.group = cyclic_group(5);
    std::vector<int> shift = {1, 2, 3, 4, 0};
    S.images = {shift, perm_identity(5), perm_identity(5)}; // a, b, c1
    return S;
}

LayeredCat cocartesian_layered(const FinPoset& P, const std::vector<FinCat>& F,
                               const std::map<std::pair<int, int>, FunctorData>& maps) {
    // strictness: maps must compose along the order
    for (int p = 0; p < P.size(); ++p)
        for (int q = 0; q < P.size(); ++q)
            for (int r = 0; r < P.size(); ++r) {
                if (!P.lt(p, q) || !P.lt(q, r)) continue;
                const auto& pq = maps.at({p, q});
                const auto& qr = maps.at({q, r});
                const auto& pr = maps.at({p, r});
                for (int m = 0; m < F[p].n_mor(); ++m)
                    if (qr.morMap[pq.morMap[m]] != pr.morMap[m])
                        throw DomainError("BadInput", "diagram maps do not compose strictly");
            }
    LayeredCat L;
    L.base = P;
    std::map<std::pair<int, int>, int> objIdx;
    for (int p = 0; p < P.size(); ++p)
        for (int x = 0; x < F[p].n_obj(); ++x) {
            objIdx[{p, x}] = L.cat.n_obj();
            L.cat.objNames.push_back(P.elements[p] + ":" + F[p].objNames[x]);
            L.label.push_back(p);
        }
    auto mapObj = [&](int p, int q, int x) {
        return p == q ? x : maps.at({p, q}).objMap[x];
    };
    struct Mor {
        int from, to, p, q, u;
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int>, int> morIdx; // (from, to, u)
    for (const auto& [keyA, a] : objIdx)
        for (const auto& [keyB, b] : objIdx) {
            const auto [p, x] = keyA;
            const auto [q, y] = keyB;
            if (!P.leq(p, q)) continue;
            const int fx = mapObj(p, q, x);
            for (int u = 0; u < F[q].n_mor(); ++u) {
                if (F[q].src[u] != fx || F[q].tgt[u] != y) continue;
                morIdx[{a, b, u}] = static_cast<int>(mors.size());
                mors.push_back({a, b, p, q, u});
            }
        }
    for (const auto& m : mors) {
        L.cat.morNames.push_back(F[m.q].morNames[m.u] + "@" + std::to_string(m.from) + ">" +
                                 std::to_string(m.to));
        L.cat.src.push_back(m.from);
        L.cat.tgt.push_back(m.to);
    }
    L.cat.idOf.resize(L.cat.n_obj());
    for (const auto& [key, a] : objIdx) {
        const auto [p, x] = key;
        L.cat.idOf[a] = morIdx.at({a, a, F[p].idOf[x]});
    }
    const int nM = static_cast<int>(mors.size());
    L.cat.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            if (mors[f].to != mors[g].from) continue;
            const int q = mors[f].q, r = mors[g].q;
            const int uf = q == r ? mors[f].u : maps.at({q, r}).morMap[mors[f].u];
            L.cat.comp[g][f] = morIdx.at({mors[f].from, mors[g].to, F[r].comp[mors[g].u][uf]});
        }
    auto rep = validate_layered(L);
    if (!rep.empty()) throw ValidationError("InvalidLayered", rep);
    return L;
}

namespace {

FinCat menu_groupoid(int pick) {
    switch (pick % 4) {
    case 0: return point_cat();
    case 1: return b_group(cyclic_group(2));
    case 2: return b_group(cyclic_group(3));
    default: return discrete_cat(2);
    }
}

// a functor between menu groupoids, deterministic in `pick`
FunctorData menu_functor(const FinCat& A, const FinCat& B, unsigned pick) {
    FunctorData F;
    // objects: constant choice determined by pick
    for (int x = 0; x < A.n_obj(); ++x) F.objMap.push_back(pick % B.n_obj());
    // morphisms: group generators need an image of compatible order; a small
    // search in deterministic order picks the first assignment that works
    F.morMap.assign(A.n_mor(), -1);
    for (int x = 0; x < A.n_obj(); ++x) F.morMap[A.idOf[x]] = B.idOf[F.objMap[x]];
    auto dfs = [&](auto&& self, int m) -> bool {
        if (m == A.n_mor()) return validate_functor_maps(A, B, F.objMap, F.morMap).empty();
        if (F.morMap[m] != -1) return self(self, m + 1);
        for (int offset = 0; offset < B.n_mor(); ++offset) {
            const int v = (offset + pick) % B.n_mor();
            if (B.src[v] != F.objMap[A.src[m]] || B.tgt[v] != F.objMap[A.tgt[m]]) continue;
            F.morMap[m] = v;
            if (self(self, m + 1)) return true;
        }
        F.morMap[m] = -1;
        return false;
    };
    if (!dfs(dfs, 0)) throw DomainError("InternalError", "no functor between menu groupoids");
    return F;
}

} // namespace

std::vector<LayeredCat> random_layered_cats(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<FinPoset> bases = {
        chain_poset(3),                                       // triple compositions
        make_poset_named({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}), // V
        make_poset_named({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}), // wedge
        chain_poset(2),
    };
    std::vector<LayeredCat> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < count * 20) {
        attempts++;
        const FinPoset& P = bases[rng() % bases.size()];
        std::vector<FinCat> F;
        for (int p = 0; p < P.size(); ++p) F.push_back(menu_groupoid(static_cast<int>(rng() % 4)));
        std::map<std::pair<int, int>, FunctorData> maps;
        bool ok = true;
        // covers first, then forced composites (tree bases: unique paths)
        auto covers = cover_relations(P);
        try {
            for (auto [p, q] : covers) maps[{p, q}] = menu_functor(F[p], F[q], rng());
            for (int p = 0; p < P.size() && ok; ++p)
                for (int q = 0; q < P.size() && ok; ++q) {
                    if (!P.lt(p, q) || maps.count({p, q})) continue;
                    // compose along the unique cover path
                    for (auto [a, b] : covers)
                        if (a == p && P.leq(b, q) && maps.count({b, q})) {
                            const auto& f1 = maps.at({p, b});
                            const auto& f2 = maps.at({b, q});
                            FunctorData g;
                            for (int x : f1.objMap) g.objMap.push_back(f2.objMap[x]);
                            for (int m : f1.morMap) g.morMap.push_back(f2.morMap[m]);
                            maps[{p, q}] = std::move(g);
                            break;
                        }
                    if (!maps.count({p, q})) ok = false;
                }
            if (!ok) continue;
            LayeredCat L = cocartesian_layered(P, F, maps);
            if (L.cat.n_obj() <= 6 && L.cat.n_mor() <= 60) out.push_back(std::move(L));
        } catch (const DomainError&) {
            continue;
        }
    }
    if (static_cast<int>(out.size()) < count)
        throw DomainError("InternalError", "random corpus generation starved");
    return out;
}

std::vector<CorpusItem> round_trip_corpus() {
    std::vector<CorpusItem> items;
    for (const auto& P : all_posets_up_to(5)) {
        items.push_back({"poset/" + std::to_string(P.size()) + "/" +
                             std::to_string(items.size()),
                         poset_over_itself(P)});
    }
    for (const auto& t : dvr_triples()) items.push_back({t.name, dvr_cat(t)});
    for (int g = 0; g <= 1; ++g)
        for (int n = 2; n <= 3; ++n)
            for (int m : {2, 5})
                items.push_back({"curve(g=" + std::to_string(g) + ",n=" + std::to_string(n) +
                                     ",Z" + std::to_string(m) + ")",
                                 build_curve_level(cyclic_curve_spec(g, n, m))});
    auto randoms = random_layered_cats(10, 20240817u);
    for (size_t i = 0; i < randoms.size(); ++i)
        items.push_back({"random/" + std::to_string(i), std::move(randoms[i])});
    return items;
}

} // namespace stratcat::corpus
