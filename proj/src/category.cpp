#include "stratcat/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stratcat {

std::vector<int> FinCat::hom(int x, int y) const {
    std::vector<int> h;
    for (int m = 0; m < n_mor(); ++m)
        if (src[m] == x && tgt[m] == y) h.push_back(m);
    return h;
}

int FinCat::object_index(const std::string& name) const {
    for (int i = 0; i < n_obj(); ++i)
        if (objNames[i] == name) return i;
    throw DomainError("UnknownObject", "no object named '" + name + "'");
}

int FinCat::morphism_index(const std::string& name) const {
    for (int i = 0; i < n_mor(); ++i)
        if (morNames[i] == name) return i;
    throw DomainError("UnknownMorphism", "no morphism named '" + name + "'");
}

std::vector<std::string> validate_category(const FinCat& C) {
    std::vector<std::string> rep;
    const int nO = C.n_obj(), nM = C.n_mor();
    if (static_cast<int>(C.tgt.size()) != nM || static_cast<int>(C.morNames.size()) != nM ||
        static_cast<int>(C.idOf.size()) != nO || static_cast<int>(C.comp.size()) != nM) {
        rep.push_back("tables have inconsistent shapes");
        return rep;
    }
    for (int m = 0; m < nM; ++m)
        if (C.src[m] < 0 || C.src[m] >= nO || C.tgt[m] < 0 || C.tgt[m] >= nO) {
            rep.push_back("morphism " + C.morNames[m] + " has endpoints out of range");
            return rep;
        }
    for (int x = 0; x < nO; ++x) {
        int e = C.idOf[x];
        if (e < 0 || e >= nM || C.src[e] != x || C.tgt[e] != x)
            rep.push_back("identity of " + C.objNames[x] + " is not an endomorphism of it");
    }
    for (int g = 0; g < nM; ++g) {
        if (static_cast<int>(C.comp[g].size()) != nM) {
            rep.push_back("composition row for " + C.morNames[g] + " has wrong length");
            return rep;
        }
        for (int f = 0; f < nM; ++f) {
            int h = C.comp[g][f];
            bool composable = C.tgt[f] == C.src[g];
            if (composable && h == -1)
                rep.push_back("composition undefined on composable pair (" + C.morNames[g] + ", " +
                              C.morNames[f] + ")");
            if (!composable && h != -1)
                rep.push_back("composition defined on non-composable pair (" + C.morNames[g] + ", " +
                              C.morNames[f] + ")");
            if (composable && h != -1 && (C.src[h] != C.src[f] || C.tgt[h] != C.tgt[g]))
                rep.push_back("composite of (" + C.morNames[g] + ", " + C.morNames[f] +
                              ") has wrong endpoints");
            if (rep.size() > 32) return rep;
        }
    }
    if (!rep.empty()) return rep;
    for (int f = 0; f < nM; ++f) {
        if (C.comp[C.idOf[C.tgt[f]]][f] != f)
            rep.push_back("left unit law fails at " + C.morNames[f]);
        if (C.comp[f][C.idOf[C.src[f]]] != f)
            rep.push_back("right unit law fails at " + C.morNames[f]);
    }
    for (int h = 0; h < nM; ++h)
        for (int g = 0; g < nM; ++g) {
            if (C.tgt[g] != C.src[h]) continue;
            const int hg = C.comp[h][g];
            for (int f = 0; f < nM; ++f) {
                if (C.tgt[f] != C.src[g]) continue;
                if (C.comp[hg][f] != C.comp[h][C.comp[g][f]]) {
                    rep.push_back("associativity fails on (" + C.morNames[h] + ", " + C.morNames[g] +
                                  ", " + C.morNames[f] + ")");
                    if (rep.size() > 32) return rep;
                }
            }
        }
    return rep;
}

std::vector<std::string> validate_functor_maps(const FinCat& C, const FinCat& D,
                                               const std::vector<int>& objMap,
                                               const std::vector<int>& morMap) {
    std::vector<std::string> rep;
    if (static_cast<int>(objMap.size()) != C.n_obj() ||
        static_cast<int>(morMap.size()) != C.n_mor()) {
        rep.push_back("functor maps have wrong lengths");
        return rep;
    }
    for (int m = 0; m < C.n_mor(); ++m) {
        int v = morMap[m];
        if (v < 0 || v >= D.n_mor()) {
            rep.push_back("morphism image out of range at " + C.morNames[m]);
            return rep;
        }
        if (D.src[v] != objMap[C.src[m]] || D.tgt[v] != objMap[C.tgt[m]])
            rep.push_back("src/tgt not preserved at " + C.morNames[m]);
    }
    for (int x = 0; x < C.n_obj(); ++x)
        if (morMap[C.idOf[x]] != D.idOf[objMap[x]])
            rep.push_back("identity not preserved at " + C.objNames[x]);
    for (int g = 0; g < C.n_mor(); ++g)
        for (int f = 0; f < C.n_mor(); ++f) {
            if (C.tgt[f] != C.src[g]) continue;
            if (morMap[C.comp[g][f]] != D.comp[morMap[g]][morMap[f]]) {
                rep.push_back("composition not preserved on (" + C.morNames[g] + ", " +
                              C.morNames[f] + ")");
                if (rep.size() > 32) return rep;
            }
        }
    return rep;
}

std::vector<std::string> validate_functor(const Functor& F) {
    return validate_functor_maps(F.source, F.target, F.objMap, F.morMap);
}

bool is_invertible(const FinCat& C, int m) { return inverse_of(C, m) != -1; }

int inverse_of(const FinCat& C, int m) {
    for (int n = 0; n < C.n_mor(); ++n) {
        if (C.src[n] != C.tgt[m] || C.tgt[n] != C.src[m]) continue;
        if (C.comp[n][m] == C.idOf[C.src[m]] && C.comp[m][n] == C.idOf[C.tgt[m]]) return n;
    }
    return -1;
}

bool is_groupoid(const FinCat& C) {
    for (int m = 0; m < C.n_mor(); ++m)
        if (!is_invertible(C, m)) return false;
    return true;
}

std::vector<int> iso_classes(const FinCat& C) {
    std::vector<int> cls(C.n_obj());
    std::iota(cls.begin(), cls.end(), 0);
    auto find = [&](int x) {
        while (cls[x] != x) x = cls[x] = cls[cls[x]];
        return x;
    };
    for (int m = 0; m < C.n_mor(); ++m)
        if (is_invertible(C, m)) {
            int a = find(C.src[m]), b = find(C.tgt[m]);
            if (a != b) cls[std::max(a, b)] = std::min(a, b);
        }
    for (int x = 0; x < C.n_obj(); ++x) cls[x] = find(x);
    return cls;
}

FinCat point_cat() { return discrete_cat(1); }

FinCat discrete_cat(int n) {
    FinCat C;
    for (int i = 0; i < n; ++i) {
        C.objNames.push_back("x" + std::to_string(i));
        C.morNames.push_back("id_x" + std::to_string(i));
        C.src.push_back(i);
        C.tgt.push_back(i);
        C.idOf.push_back(i);
    }
    C.comp.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) C.comp[i][i] = i;
    return C;
}

FinCat cat_from_poset(const FinPoset& P) {
    FinCat C;
    C.objNames = P.elements;
    std::map<std::pair<int, int>, int> morIdx;
    for (int i = 0; i < P.size(); ++i)
        for (int j = 0; j < P.size(); ++j)
            if (P.leq(i, j)) {
                morIdx[{i, j}] = C.n_mor();
                C.morNames.push_back(P.elements[i] + "<=" + P.elements[j]);
                C.src.push_back(i);
                C.tgt.push_back(j);
            }
    C.idOf.resize(P.size());
    for (int i = 0; i < P.size(); ++i) C.idOf[i] = morIdx.at({i, i});
    const int m = C.n_mor();
    C.comp.assign(m, std::vector<int>(m, -1));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (C.tgt[f] == C.src[g]) C.comp[g][f] = morIdx.at({C.src[f], C.tgt[g]});
    return C;
}

Functor identity_functor(const FinCat& C) {
    Functor F;
    F.source = C;
    F.target = C;
    F.objMap.resize(C.n_obj());
    F.morMap.resize(C.n_mor());
    std::iota(F.objMap.begin(), F.objMap.end(), 0);
    std::iota(F.morMap.begin(), F.morMap.end(), 0);
    return F;
}

Functor compose_functors(const Functor& G, const Functor& F) {
    Functor H;
    H.source = F.source;
    H.target = G.target;
    for (int x : F.objMap) H.objMap.push_back(G.objMap[x]);
    for (int m : F.morMap) H.morMap.push_back(G.morMap[m]);
    return H;
}

Functor functor_from_monotone(const MonotoneMap& f) {
    Functor F;
    F.source = cat_from_poset(f.source);
    F.target = cat_from_poset(f.target);
    F.objMap = f.map;
    for (int m = 0; m < F.source.n_mor(); ++m) {
        int a = f.map[F.source.src[m]], b = f.map[F.source.tgt[m]];
        F.morMap.push_back(F.target.morphism_index(f.target.elements[a] + "<=" + f.target.elements[b]));
    }
    return F;
}

SubCat full_subcat(const FinCat& C, const std::vector<int>& objects) {
    SubCat S;
    std::vector<int> objNew(C.n_obj(), -1);
    for (int o : objects) {
        objNew[o] = static_cast<int>(S.objOrig.size());
        S.objOrig.push_back(o);
        S.cat.objNames.push_back(C.objNames[o]);
    }
    std::vector<int> morNew(C.n_mor(), -1);
    for (int m = 0; m < C.n_mor(); ++m)
        if (objNew[C.src[m]] != -1 && objNew[C.tgt[m]] != -1) {
            morNew[m] = static_cast<int>(S.morOrig.size());
            S.morOrig.push_back(m);
            S.cat.morNames.push_back(C.morNames[m]);
            S.cat.src.push_back(objNew[C.src[m]]);
            S.cat.tgt.push_back(objNew[C.tgt[m]]);
        }
    S.cat.idOf.resize(S.cat.n_obj());
    for (int i = 0; i < S.cat.n_obj(); ++i) S.cat.idOf[i] = morNew[C.idOf[S.objOrig[i]]];
    const int m = S.cat.n_mor();
    S.cat.comp.assign(m, std::vector<int>(m, -1));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (S.cat.tgt[f] == S.cat.src[g])
                S.cat.comp[g][f] = morNew[C.comp[S.morOrig[g]][S.morOrig[f]]];
    S.incl.source = S.cat;
    S.incl.target = C;
    S.incl.objMap = S.objOrig;
    S.incl.morMap = S.morOrig;
    return S;
}

CommaCat comma(const Functor& F, const Functor& G) {
    const FinCat& C = F.source;
    const FinCat& D = G.source;
    const FinCat& E = F.target;
    CommaCat R;
    std::map<std::tuple<int, int, int>, int> objIdx;
    for (int c = 0; c < C.n_obj(); ++c)
        for (int d = 0; d < D.n_obj(); ++d)
            for (int b = 0; b < E.n_mor(); ++b) {
                if (E.src[b] != F.objMap[c] || E.tgt[b] != G.objMap[d]) continue;
                objIdx[{c, d, b}] = R.cat.n_obj();
                R.objC.push_back(c);
                R.objD.push_back(d);
                R.objBeta.push_back(b);
                R.cat.objNames.push_back("(" + C.objNames[c] + "," + D.objNames[d] + "," +
                                         E.morNames[b] + ")");
            }
    struct Mor {
        int from, to, gamma, delta;
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int, int>, int> morIdx;
    for (int a = 0; a < R.cat.n_obj(); ++a)
        for (int b = 0; b < R.cat.n_obj(); ++b)
            for (int gamma = 0; gamma < C.n_mor(); ++gamma) {
                if (C.src[gamma] != R.objC[a] || C.tgt[gamma] != R.objC[b]) continue;
                for (int delta = 0; delta < D.n_mor(); ++delta) {
                    if (D.src[delta] != R.objD[a] || D.tgt[delta] != R.objD[b]) continue;
                    if (E.comp[G.morMap[delta]][R.objBeta[a]] !=
                        E.comp[R.objBeta[b]][F.morMap[gamma]])
                        continue;
                    morIdx[{a, b, gamma, delta}] = static_cast<int>(mors.size());
                    mors.push_back({a, b, gamma, delta});
                }
            }
    for (const auto& m : mors) {
        R.cat.morNames.push_back("(" + C.morNames[m.gamma] + "," + D.morNames[m.delta] + ")@" +
                                 std::to_string(m.from));
        R.cat.src.push_back(m.from);
        R.cat.tgt.push_back(m.to);
    }
    R.cat.idOf.resize(R.cat.n_obj());
    for (int a = 0; a < R.cat.n_obj(); ++a)
        R.cat.idOf[a] = morIdx.at({a, a, C.idOf[R.objC[a]], D.idOf[R.objD[a]]});
    const int nM = R.cat.n_mor();
    R.cat.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            if (mors[f].to != mors[g].from) continue;
            R.cat.comp[g][f] = morIdx.at({mors[f].from, mors[g].to,
                                          C.comp[mors[g].gamma][mors[f].gamma],
                                          D.comp[mors[g].delta][mors[f].delta]});
        }
    R.projLeft.source = R.cat;
    R.projLeft.target = C;
    R.projLeft.objMap = R.objC;
    for (const auto& m : mors) R.projLeft.morMap.push_back(m.gamma);
    R.projRight.source = R.cat;
    R.projRight.target = D;
    R.projRight.objMap = R.objD;
    for (const auto& m : mors) R.projRight.morMap.push_back(m.delta);
    return R;
}

namespace {

SliceCat make_slice(const FinCat& C, int x, bool over) {
    SliceCat S;
    for (int f = 0; f < C.n_mor(); ++f)
        if ((over && C.tgt[f] == x) || (!over && C.src[f] == x)) {
            S.objMor.push_back(f);
            S.cat.objNames.push_back("[" + C.morNames[f] + "]");
        }
    const int nO = static_cast<int>(S.objMor.size());
    struct Mor {
        int from, to, u;
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int>, int> morIdx;
    for (int a = 0; a < nO; ++a)
        for (int b = 0; b < nO; ++b) {
            const int fa = S.objMor[a], fb = S.objMor[b];
            for (int u = 0; u < C.n_mor(); ++u) {
                if (over) {
                    if (C.src[u] != C.src[fa] || C.tgt[u] != C.src[fb]) continue;
                    if (C.comp[fb][u] != fa) continue;
                } else {
                    if (C.src[u] != C.tgt[fa] || C.tgt[u] != C.tgt[fb]) continue;
                    if (C.comp[u][fa] != fb) continue;
                }
                morIdx[{a, b, u}] = static_cast<int>(mors.size());
                mors.push_back({a, b, u});
            }
        }
    for (const auto& m : mors) {
        S.cat.morNames.push_back(C.morNames[m.u] + "@" + std::to_string(m.from) + ">" +
                                 std::to_string(m.to));
        S.cat.src.push_back(m.from);
        S.cat.tgt.push_back(m.to);
    }
    S.cat.idOf.resize(nO);
    for (int a = 0; a < nO; ++a) {
        const int fa = S.objMor[a];
        const int obj = over ? C.src[fa] : C.tgt[fa];
        S.cat.idOf[a] = morIdx.at({a, a, C.idOf[obj]});
    }
    const int nM = S.cat.n_mor();
    S.cat.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            if (mors[f].to != mors[g].from) continue;
            S.cat.comp[g][f] = morIdx.at({mors[f].from, mors[g].to, C.comp[mors[g].u][mors[f].u]});
        }
    S.proj.source = S.cat;
    S.proj.target = C;
    for (int a = 0; a < nO; ++a)
        S.proj.objMap.push_back(over ? C.src[S.objMor[a]] : C.tgt[S.objMor[a]]);
    for (const auto& m : mors) S.proj.morMap.push_back(m.u);
    return S;
}

} // namespace

SliceCat slice_cat(const FinCat& C, int x) { return make_slice(C, x, true); }
SliceCat coslice_cat(const FinCat& C, int x) { return make_slice(C, x, false); }

bool is_natural_transformation(const FinCat& C, const FinCat& D, const std::vector<int>& objF,
                               const std::vector<int>& morF, const std::vector<int>& objG,
                               const std::vector<int>& morG, const std::vector<int>& components,
                               bool iso) {
    for (int x = 0; x < C.n_obj(); ++x) {
        int c = components[x];
        if (c < 0 || c >= D.n_mor() || D.src[c] != objF[x] || D.tgt[c] != objG[x]) return false;
        if (iso && !is_invertible(D, c)) return false;
    }
    for (int m = 0; m < C.n_mor(); ++m)
        if (D.comp[morG[m]][components[C.src[m]]] != D.comp[components[C.tgt[m]]][morF[m]])
            return false;
    return true;
}

std::optional<std::vector<int>> find_natural_iso(const FinCat& C, const FinCat& D,
                                                 const std::vector<int>& objF,
                                                 const std::vector<int>& morF,
                                                 const std::vector<int>& objG,
                                                 const std::vector<int>& morG) {
    const int nO = C.n_obj();
    std::vector<std::vector<int>> cands(nO);
    for (int x = 0; x < nO; ++x) {
        for (int m = 0; m < D.n_mor(); ++m)
            if (D.src[m] == objF[x] && D.tgt[m] == objG[x] && is_invertible(D, m))
                cands[x].push_back(m);
        if (cands[x].empty()) return std::nullopt;
    }
    std::vector<int> comp(nO, -1);
    auto consistent = [&](int upto) {
        for (int m = 0; m < C.n_mor(); ++m) {
            if (C.src[m] > upto || C.tgt[m] > upto) continue;
            if (D.comp[morG[m]][comp[C.src[m]]] != D.comp[comp[C.tgt[m]]][morF[m]]) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, int x) -> bool {
        if (x == nO) return true;
        for (int c : cands[x]) {
            comp[x] = c;
            if (consistent(x) && self(self, x + 1)) return true;
        }
        comp[x] = -1;
        return false;
    };
    if (dfs(dfs, 0)) return comp;
    return std::nullopt;
}

namespace {

struct EquivSearch {
    const FinCat& C;
    const FinCat& D;
    long long cap;
    long long nodes = 0;
    std::vector<int> objMap, morMap;
    std::vector<std::vector<int>> homC; // per pair index x*nO+y
    std::vector<std::vector<int>> homD;
    std::vector<int> clsD;

    EquivSearch(const FinCat& c, const FinCat& d, long long capIn) : C(c), D(d), cap(capIn) {
        homC.resize(static_cast<size_t>(C.n_obj()) * C.n_obj());
        for (int m = 0; m < C.n_mor(); ++m)
            homC[static_cast<size_t>(C.src[m]) * C.n_obj() + C.tgt[m]].push_back(m);
        homD.resize(static_cast<size_t>(D.n_obj()) * D.n_obj());
        for (int m = 0; m < D.n_mor(); ++m)
            homD[static_cast<size_t>(D.src[m]) * D.n_obj() + D.tgt[m]].push_back(m);
        clsD = iso_classes(D);
    }

    void tick() {
        if (++nodes > cap) throw CapExceeded("equivalence search bound hit");
    }

    bool obj_map_admissible() {
        // fully faithful needs matching hom counts; essentially surjective
        // needs every iso class of D hit
        for (int x = 0; x < C.n_obj(); ++x)
            for (int y = 0; y < C.n_obj(); ++y)
                if (homC[static_cast<size_t>(x) * C.n_obj() + y].size() !=
                    homD[static_cast<size_t>(objMap[x]) * D.n_obj() + objMap[y]].size())
                    return false;
        std::vector<char> hit(D.n_obj(), 0);
        for (int x = 0; x < C.n_obj(); ++x) hit[clsD[objMap[x]]] = 1;
        for (int d = 0; d < D.n_obj(); ++d)
            if (!hit[clsD[d]]) return false;
        return true;
    }

    bool assign_morphisms() {
        const int nM = C.n_mor();
        morMap.assign(nM, -1);
        // used targets per C-hom-pair, for injectivity
        std::vector<std::vector<char>> used(static_cast<size_t>(C.n_obj()) * C.n_obj());
        for (int x = 0; x < C.n_obj(); ++x)
            for (int y = 0; y < C.n_obj(); ++y)
                used[static_cast<size_t>(x) * C.n_obj() + y].assign(
                    homD[static_cast<size_t>(objMap[x]) * D.n_obj() + objMap[y]].size(), 0);
        auto dfs = [&](auto&& self, int m) -> bool {
            if (m == nM) return true;
            tick();
            const int x = C.src[m], y = C.tgt[m];
            const auto& targets = homD[static_cast<size_t>(objMap[x]) * D.n_obj() + objMap[y]];
            auto& usedHere = used[static_cast<size_t>(x) * C.n_obj() + y];
            // forced value from composition with already-assigned morphisms?
            int forced = -1;
            if (C.is_identity(m)) forced = D.idOf[objMap[x]];
            for (int g = 0; g < m && forced == -1; ++g)
                for (int f = 0; f < m && forced == -1; ++f)
                    if (C.tgt[f] == C.src[g] && C.comp[g][f] == m)
                        forced = D.comp[morMap[g]][morMap[f]];
            for (size_t ti = 0; ti < targets.size(); ++ti) {
                if (usedHere[ti]) continue;
                const int v = targets[ti];
                if (forced != -1 && v != forced) continue;
                // composition consistency with assigned morphisms
                bool ok = true;
                for (int f = 0; f <= m && ok; ++f) {
                    if (morMap[f] == -1 && f != m) continue;
                    const int vf = (f == m) ? v : morMap[f];
                    if (C.tgt[f] == C.src[m]) {
                        const int h = C.comp[m][f];
                        if (h < m && D.comp[v][vf] != morMap[h]) ok = false;
                        if (h == m && D.comp[v][vf] != v) ok = false;
                    }
                    if (ok && C.tgt[m] == C.src[f]) {
                        const int h = C.comp[f][m];
                        if (h < m && D.comp[vf][v] != morMap[h]) ok = false;
                        if (h == m && D.comp[vf][v] != v) ok = false;
                    }
                }
                if (!ok) continue;
                morMap[m] = v;
                usedHere[ti] = 1;
                if (self(self, m + 1)) return true;
                usedHere[ti] = 0;
                morMap[m] = -1;
            }
            return false;
        };
        return dfs(dfs, 0);
    }
};

} // namespace

std::optional<Equivalence> are_equivalent(const FinCat& C, const FinCat& D, long long cap,
                                          const std::vector<std::vector<int>>& objConstraint) {
    EquivSearch S(C, D, cap);
    const int nO = C.n_obj();
    S.objMap.assign(nO, 0);
    std::vector<std::vector<int>> cands(nO);
    for (int x = 0; x < nO; ++x) {
        if (!objConstraint.empty())
            cands[x] = objConstraint[x];
        else {
            cands[x].resize(D.n_obj());
            std::iota(cands[x].begin(), cands[x].end(), 0);
        }
        if (cands[x].empty()) return std::nullopt;
    }
    if (nO == 0 && D.n_obj() > 0) return std::nullopt;

    std::optional<Equivalence> result;
    auto finish = [&]() -> bool {
        if (!S.obj_map_admissible()) return false;
        if (!S.assign_morphisms()) return false;
        Equivalence E;
        E.fwd.source = C;
        E.fwd.target = D;
        E.fwd.objMap = S.objMap;
        E.fwd.morMap = S.morMap;
        // quasi-inverse: least preimage object per iso class, transported by
        // a chosen counit iso
        E.bwd.source = D;
        E.bwd.target = C;
        E.bwd.objMap.assign(D.n_obj(), -1);
        E.counit.assign(D.n_obj(), -1);
        for (int d = 0; d < D.n_obj(); ++d) {
            for (int c = 0; c < nO && E.bwd.objMap[d] == -1; ++c) {
                for (int m = 0; m < D.n_mor(); ++m) {
                    if (D.src[m] != S.objMap[c] || D.tgt[m] != d || !is_invertible(D, m)) continue;
                    E.bwd.objMap[d] = c;
                    E.counit[d] = m;
                    break;
                }
            }
            if (E.bwd.objMap[d] == -1) return false; // should not happen: eso was checked
        }
        E.bwd.morMap.assign(D.n_mor(), -1);
        for (int psi = 0; psi < D.n_mor(); ++psi) {
            const int d0 = D.src[psi], d1 = D.tgt[psi];
            const int w = D.comp[D.comp[inverse_of(D, E.counit[d1])][psi]][E.counit[d0]];
            // fully faithful: unique preimage in Hom_C(bwd d0, bwd d1)
            for (int u = 0; u < C.n_mor(); ++u)
                if (C.src[u] == E.bwd.objMap[d0] && C.tgt[u] == E.bwd.objMap[d1] &&
                    S.morMap[u] == w) {
                    E.bwd.morMap[psi] = u;
                    break;
                }
            if (E.bwd.morMap[psi] == -1) return false;
        }
        E.unit.assign(nO, -1);
        for (int x = 0; x < nO; ++x) {
            const int w = inverse_of(D, E.counit[S.objMap[x]]); // F(x) -> F(bwd(F x))
            for (int u = 0; u < C.n_mor(); ++u)
                if (C.src[u] == x && C.tgt[u] == E.bwd.objMap[S.objMap[x]] && S.morMap[u] == w) {
                    E.unit[x] = u;
                    break;
                }
            if (E.unit[x] == -1) return false;
        }
        result = std::move(E);
        return true;
    };

    auto dfs = [&](auto&& self, int x) -> bool {
        if (x == nO) return finish();
        S.tick();
        for (int d : cands[x]) {
            S.objMap[x] = d;
            // prune on hom counts against already-assigned objects
            bool ok = true;
            for (int y = 0; y <= x && ok; ++y) {
                if (S.homC[static_cast<size_t>(x) * nO + y].size() !=
                        S.homD[static_cast<size_t>(d) * D.n_obj() + S.objMap[y]].size() ||
                    S.homC[static_cast<size_t>(y) * nO + x].size() !=
                        S.homD[static_cast<size_t>(S.objMap[y]) * D.n_obj() + d].size())
                    ok = false;
            }
            if (ok && self(self, x + 1)) return true;
        }
        return false;
    };
    if (nO == 0) {
        if (finish()) return result;
        return std::nullopt;
    }
    if (dfs(dfs, 0)) return result;
    return std::nullopt;
}

namespace {

bool is_ff_eso(const Functor& F) {
    const FinCat& C = F.source;
    const FinCat& D = F.target;
    // fully faithful
    for (int x = 0; x < C.n_obj(); ++x)
        for (int y = 0; y < C.n_obj(); ++y) {
            auto hc = C.hom(x, y);
            auto hd = D.hom(F.objMap[x], F.objMap[y]);
            if (hc.size() != hd.size()) return false;
            std::vector<char> seen(D.n_mor(), 0);
            for (int m : hc) {
                if (seen[F.morMap[m]]) return false;
                seen[F.morMap[m]] = 1;
            }
        }
    // essentially surjective
    auto cls = iso_classes(D);
    std::vector<char> hit(D.n_obj(), 0);
    for (int x = 0; x < C.n_obj(); ++x) hit[cls[F.objMap[x]]] = 1;
    for (int d = 0; d < D.n_obj(); ++d)
        if (!hit[cls[d]]) return false;
    return true;
}

// induced functor on (co)slices, then ff+eso
bool slice_comparison_is_equivalence(const Functor& F, int x, bool over) {
    const FinCat& C = F.source;
    const FinCat& D = F.target;
    SliceCat sc = over ? slice_cat(C, x) : coslice_cat(C, x);
    SliceCat sd = over ? slice_cat(D, F.objMap[x]) : coslice_cat(D, F.objMap[x]);
    Functor ind;
    ind.source = sc.cat;
    ind.target = sd.cat;
    std::map<int, int> objOfMor; // D-morphism -> slice object index
    for (int i = 0; i < static_cast<int>(sd.objMor.size()); ++i) objOfMor[sd.objMor[i]] = i;
    for (int i = 0; i < static_cast<int>(sc.objMor.size()); ++i)
        ind.objMap.push_back(objOfMor.at(F.morMap[sc.objMor[i]]));
    for (int m = 0; m < sc.cat.n_mor(); ++m) {
        const int u = sc.proj.morMap[m];
        const int from = ind.objMap[sc.cat.src[m]], to = ind.objMap[sc.cat.tgt[m]];
        int img = -1;
        for (int m2 = 0; m2 < sd.cat.n_mor(); ++m2)
            if (sd.cat.src[m2] == from && sd.cat.tgt[m2] == to && sd.proj.morMap[m2] == F.morMap[u]) {
                img = m2;
                break;
            }
        if (img == -1) return false;
        ind.morMap.push_back(img);
    }
    return is_ff_eso(ind);
}

} // namespace

FibrationReport classify_fibration(const Functor& F) {
    auto rep = validate_functor(F);
    if (!rep.empty()) throw ValidationError("InvalidFunctor", rep);
    const FinCat& C = F.source;
    const FinCat& D = F.target;
    // isofibration: every iso out of F(c) lifts to an iso out of c
    for (int c = 0; c < C.n_obj(); ++c)
        for (int psi = 0; psi < D.n_mor(); ++psi) {
            if (D.src[psi] != F.objMap[c] || !is_invertible(D, psi)) continue;
            bool lifted = false;
            for (int phi = 0; phi < C.n_mor() && !lifted; ++phi)
                if (C.src[phi] == c && is_invertible(C, phi) && F.morMap[phi] == psi) lifted = true;
            if (!lifted)
                throw DomainError("NotIsofibration",
                                  "iso " + D.morNames[psi] + " has no iso lift at " + C.objNames[c]);
        }
    FibrationReport R;
    R.right = true;
    R.left = true;
    for (int x = 0; x < C.n_obj(); ++x) {
        if (R.right && !slice_comparison_is_equivalence(F, x, true)) R.right = false;
        if (R.left && !slice_comparison_is_equivalence(F, x, false)) R.left = false;
    }
    R.kan = R.left && R.right;
    R.fiberSizes.assign(D.n_obj(), 0);
    for (int c = 0; c < C.n_obj(); ++c) R.fiberSizes[F.objMap[c]]++;
    return R;
}

int IsoCommaFiber::component_of(int e, int alpha, int beta) const {
    for (int i = 0; i < static_cast<int>(objs.size()); ++i)
        if (objs[i].e == e && objs[i].alpha == alpha && objs[i].beta == beta) return comp[i];
    return -1;
}

IsoCommaFiber iso_comma_fiber(const FinCat& L, const FinCat& A, const FinCat& B,
                              const std::vector<int>& sObj, const std::vector<int>& sMor,
                              const std::vector<int>& tObj, const std::vector<int>& tMor, int a,
                              int b) {
    IsoCommaFiber F;
    std::map<std::tuple<int, int, int>, int> idx;
    for (int e = 0; e < L.n_obj(); ++e)
        for (int alpha = 0; alpha < A.n_mor(); ++alpha) {
            if (A.src[alpha] != sObj[e] || A.tgt[alpha] != a || !is_invertible(A, alpha)) continue;
            for (int beta = 0; beta < B.n_mor(); ++beta) {
                if (B.src[beta] != tObj[e] || B.tgt[beta] != b || !is_invertible(B, beta)) continue;
                idx[{e, alpha, beta}] = static_cast<int>(F.objs.size());
                F.objs.push_back({e, alpha, beta});
            }
        }
    std::vector<int> parent(F.objs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int u = 0; u < L.n_mor(); ++u) {
        const int e = L.src[u], e2 = L.tgt[u];
        for (const auto& [key, j] : idx) {
            auto [ee, alpha2, beta2] = key;
            if (ee != e2) continue;
            const int alpha = A.comp[alpha2][sMor[u]];
            const int beta = B.comp[beta2][tMor[u]];
            auto it = idx.find({e, alpha, beta});
            if (it == idx.end()) continue;
            int x = find(it->second), y = find(j);
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    }
    F.comp.assign(F.objs.size(), -1);
    std::map<int, int> renumber;
    for (int i = 0; i < static_cast<int>(F.objs.size()); ++i) {
        int r = find(i);
        auto it = renumber.find(r);
        if (it == renumber.end()) {
            renumber[r] = F.nComp;
            F.comp[i] = F.nComp++;
        } else
            F.comp[i] = it->second;
    }
    return F;
}

} // namespace stratcat
