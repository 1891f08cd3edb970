#include "stratcat/sheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace stratcat {

std::vector<std::string> validate_set_functor(const FinCat& C, const SetFunctor& F) {
    std::vector<std::string> rep;
    if (static_cast<int>(F.size.size()) != C.n_obj() ||
        static_cast<int>(F.map.size()) != C.n_mor()) {
        rep.push_back("functor tables have wrong lengths");
        return rep;
    }
    for (int c = 0; c < C.n_obj(); ++c)
        if (F.size[c] < 0) rep.push_back("negative set size");
    for (int m = 0; m < C.n_mor(); ++m) {
        if (static_cast<int>(F.map[m].size()) != F.size[C.src[m]]) {
            rep.push_back("map of " + C.morNames[m] + " has wrong domain size");
            return rep;
        }
        for (int v : F.map[m])
            if (v < 0 || v >= F.size[C.tgt[m]]) {
                rep.push_back("map of " + C.morNames[m] + " lands outside its codomain");
                return rep;
            }
    }
    for (int x = 0; x < C.n_obj(); ++x)
        for (int e = 0; e < F.size[x]; ++e)
            if (F.map[C.idOf[x]][e] != e) {
                rep.push_back("identity of " + C.objNames[x] + " not sent to the identity map");
                break;
            }
    for (int g = 0; g < C.n_mor(); ++g)
        for (int f = 0; f < C.n_mor(); ++f) {
            if (C.tgt[f] != C.src[g]) continue;
            const int h = C.comp[g][f];
            for (int e = 0; e < F.size[C.src[f]]; ++e)
                if (F.map[g][F.map[f][e]] != F.map[h][e]) {
                    rep.push_back("functoriality fails on (" + C.morNames[g] + ", " + C.morNames[f] +
                                  ")");
                    e = F.size[C.src[f]];
                }
            if (rep.size() > 16) return rep;
        }
    return rep;
}

namespace {

std::vector<int> eval_word(const PresCat& P, const PresSetFunctor& F, const std::vector<int>& word,
                           int srcObj) {
    std::vector<int> v(F.size[srcObj]);
    std::iota(v.begin(), v.end(), 0);
    for (int g : word) {
        std::vector<int> next(v.size());
        for (size_t e = 0; e < v.size(); ++e) next[e] = F.genMap[g][v[e]];
        v = std::move(next);
    }
    return v;
}

bool is_bijection(const std::vector<int>& m, int tgtSize) {
    if (static_cast<int>(m.size()) != tgtSize) return false;
    std::vector<char> seen(tgtSize, 0);
    for (int v : m) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

} // namespace

std::vector<std::string> validate_pres_set_functor(const PresCat& P, const PresSetFunctor& F) {
    std::vector<std::string> rep;
    if (static_cast<int>(F.size.size()) != P.n_obj() ||
        static_cast<int>(F.genMap.size()) != P.n_gen()) {
        rep.push_back("functor tables have wrong lengths");
        return rep;
    }
    for (int g = 0; g < P.n_gen(); ++g) {
        if (static_cast<int>(F.genMap[g].size()) != F.size[P.genSrc[g]]) {
            rep.push_back("map of " + P.genNames[g] + " has wrong domain size");
            return rep;
        }
        for (int v : F.genMap[g])
            if (v < 0 || v >= F.size[P.genTgt[g]]) {
                rep.push_back("map of " + P.genNames[g] + " lands outside its codomain");
                return rep;
            }
        if (P.inverted[g] && !is_bijection(F.genMap[g], F.size[P.genTgt[g]]))
            rep.push_back("inverted generator " + P.genNames[g] + " not sent to a bijection");
    }
    for (const auto& r : P.relations) {
        const int srcObj = r.lhs.empty() ? P.genSrc[r.rhs.front()] : P.genSrc[r.lhs.front()];
        if (eval_word(P, F, r.lhs, srcObj) != eval_word(P, F, r.rhs, srcObj))
            rep.push_back("a relation is not respected");
    }
    return rep;
}

std::vector<std::vector<int>> limit_of_set_functor(const FinCat& C, const SetFunctor& F) {
    std::vector<std::vector<int>> families;
    std::vector<int> cur(C.n_obj(), -1);
    auto consistent = [&](int upto) {
        for (int m = 0; m < C.n_mor(); ++m) {
            if (C.src[m] > upto || C.tgt[m] > upto) continue;
            if (F.map[m][cur[C.src[m]]] != cur[C.tgt[m]]) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, int c) -> void {
        if (c == C.n_obj()) {
            families.push_back(cur);
            return;
        }
        for (int e = 0; e < F.size[c]; ++e) {
            cur[c] = e;
            if (consistent(c)) self(self, c + 1);
        }
    };
    if (C.n_obj() == 0)
        families.push_back({});
    else
        dfs(dfs, 0);
    return families;
}

int RKEResult::family_index(int c, const std::vector<int>& family) const {
    for (int i = 0; i < static_cast<int>(families[c].size()); ++i)
        if (families[c][i] == family) return i;
    return -1;
}

RKEResult right_kan_extension(const FinCat& U, const SetFunctor& F, const FinCat& C,
                              const Functor& J) {
    RKEResult R;
    const int nC = C.n_obj();
    R.shape.resize(nC);
    R.families.resize(nC);
    for (int c = 0; c < nC; ++c) {
        for (int u = 0; u < U.n_obj(); ++u)
            for (int phi = 0; phi < C.n_mor(); ++phi)
                if (C.src[phi] == c && C.tgt[phi] == J.objMap[u]) R.shape[c].emplace_back(u, phi);
        // comma morphisms give the compatibility constraints
        struct Constraint {
            int j1, j2, psi;
        };
        std::vector<Constraint> cons;
        const auto& sh = R.shape[c];
        for (int j1 = 0; j1 < static_cast<int>(sh.size()); ++j1)
            for (int j2 = 0; j2 < static_cast<int>(sh.size()); ++j2)
                for (int psi = 0; psi < U.n_mor(); ++psi) {
                    if (U.src[psi] != sh[j1].first || U.tgt[psi] != sh[j2].first) continue;
                    if (C.comp[J.morMap[psi]][sh[j1].second] != sh[j2].second) continue;
                    cons.push_back({j1, j2, psi});
                }
        std::vector<int> cur(sh.size(), -1);
        auto consistent = [&](int upto) {
            for (const auto& k : cons) {
                if (k.j1 > upto || k.j2 > upto) continue;
                if (F.map[k.psi][cur[k.j1]] != cur[k.j2]) return false;
            }
            return true;
        };
        auto dfs = [&](auto&& self, int j) -> void {
            if (j == static_cast<int>(sh.size())) {
                R.families[c].push_back(cur);
                if (R.families[c].size() > 2000000)
                    throw CapExceeded("right Kan extension value too large");
                return;
            }
            for (int e = 0; e < F.size[sh[j].first]; ++e) {
                cur[j] = e;
                if (consistent(j)) self(self, j + 1);
            }
        };
        if (sh.empty())
            R.families[c].push_back({});
        else
            dfs(dfs, 0);
    }
    R.F.size.resize(nC);
    for (int c = 0; c < nC; ++c) R.F.size[c] = static_cast<int>(R.families[c].size());
    R.F.map.resize(C.n_mor());
    for (int m = 0; m < C.n_mor(); ++m) {
        const int c = C.src[m], c2 = C.tgt[m];
        R.F.map[m].resize(R.F.size[c]);
        // reindex: the (u, phi') entry of the image is the (u, phi' o m) entry
        std::vector<int> reindex(R.shape[c2].size());
        for (size_t j = 0; j < R.shape[c2].size(); ++j) {
            const auto [u, phi2] = R.shape[c2][j];
            const int phi = C.comp[phi2][m];
            int found = -1;
            for (size_t i = 0; i < R.shape[c].size(); ++i)
                if (R.shape[c][i] == std::make_pair(u, phi)) {
                    found = static_cast<int>(i);
                    break;
                }
            reindex[j] = found;
        }
        for (int e = 0; e < R.F.size[c]; ++e) {
            std::vector<int> fam(R.shape[c2].size());
            for (size_t j = 0; j < R.shape[c2].size(); ++j) fam[j] = R.families[c][e][reindex[j]];
            const int idx = R.family_index(c2, fam);
            if (idx < 0) throw DomainError("InternalError", "Kan extension family not closed");
            R.F.map[m][e] = idx;
        }
    }
    return R;
}

bool is_constructible(const FinPoset& X, const MonotoneMap& s, const SetFunctor& F) {
    FinCat C = cat_from_poset(X);
    for (int m = 0; m < C.n_mor(); ++m) {
        if (s.map[C.src[m]] != s.map[C.tgt[m]]) continue;
        if (!is_bijection(F.map[m], F.size[C.tgt[m]])) return false;
    }
    return true;
}

std::vector<std::vector<std::vector<int>>> nat_transformations(const FinCat& C,
                                                               const SetFunctor& F,
                                                               const SetFunctor& G, bool onlyIso,
                                                               long long cap) {
    std::vector<std::vector<std::vector<int>>> result;
    const int nO = C.n_obj();
    // candidate maps per object
    std::vector<std::vector<std::vector<int>>> cands(nO);
    for (int x = 0; x < nO; ++x) {
        if (onlyIso && F.size[x] != G.size[x]) return result;
        std::vector<int> m(F.size[x], 0);
        for (;;) {
            if (!onlyIso || is_bijection(m, G.size[x])) cands[x].push_back(m);
            // odometer
            int i = F.size[x] - 1;
            while (i >= 0) {
                if (++m[i] < G.size[x]) break;
                m[i] = 0;
                --i;
            }
            if (i < 0) break;
            if (F.size[x] == 0) break;
        }
        if (F.size[x] > 0 && G.size[x] == 0) cands[x].clear();
        if (F.size[x] == 0) cands[x] = {std::vector<int>{}};
        if (cands[x].empty()) return result;
    }
    std::vector<std::vector<int>> cur(nO);
    long long visited = 0;
    auto consistent = [&](int upto) {
        for (int m = 0; m < C.n_mor(); ++m) {
            if (C.src[m] > upto || C.tgt[m] > upto) continue;
            for (int e = 0; e < F.size[C.src[m]]; ++e)
                if (G.map[m][cur[C.src[m]][e]] != cur[C.tgt[m]][F.map[m][e]]) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, int x) -> void {
        if (x == nO) {
            result.push_back(cur);
            return;
        }
        for (const auto& c : cands[x]) {
            if (++visited > cap) throw CapExceeded("natural transformation search bound hit");
            cur[x] = c;
            if (consistent(x)) self(self, x + 1);
        }
    };
    dfs(dfs, 0);
    return result;
}

bool exists_natural_iso_set(const FinCat& C, const SetFunctor& F, const SetFunctor& G) {
    const int nO = C.n_obj();
    for (int x = 0; x < nO; ++x)
        if (F.size[x] != G.size[x]) return false;
    std::vector<std::vector<int>> cur(nO);
    auto consistent = [&](int upto) {
        for (int m = 0; m < C.n_mor(); ++m) {
            if (C.src[m] > upto || C.tgt[m] > upto) continue;
            for (int e = 0; e < F.size[C.src[m]]; ++e)
                if (G.map[m][cur[C.src[m]][e]] != cur[C.tgt[m]][F.map[m][e]]) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, int x) -> bool {
        if (x == nO) return true;
        std::vector<int> perm(F.size[x]);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            cur[x] = perm;
            if (consistent(x) && self(self, x + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };
    return dfs(dfs, 0);
}

std::vector<SetFunctor> enumerate_set_functors(const FinCat& C, int k, long long cap) {
    std::vector<SetFunctor> out;
    const int nO = C.n_obj(), nM = C.n_mor();
    SetFunctor F;
    F.size.assign(nO, 0);
    F.map.assign(nM, {});
    long long visited = 0;
    // decompositions m = g o f with f, g < m, for the forcing check
    std::vector<std::vector<std::pair<int, int>>> decomp(nM);
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            if (C.tgt[f] != C.src[g]) continue;
            const int h = C.comp[g][f];
            if (f < h && g < h) decomp[h].emplace_back(g, f);
        }
    auto morDfs = [&](auto&& self, int m) -> void {
        if (m == nM) {
            out.push_back(F);
            return;
        }
        const int sz = F.size[C.src[m]], tz = F.size[C.tgt[m]];
        std::vector<int> cand(sz, 0);
        bool identity = C.is_identity(m);
        if (sz > 0 && tz == 0) return;
        for (;;) {
            if (++visited > cap) throw CapExceeded("set functor enumeration bound hit");
            F.map[m] = cand;
            bool ok = true;
            if (identity) {
                for (int e = 0; e < sz && ok; ++e)
                    if (cand[e] != e) ok = false;
            }
            // m as a composite of earlier morphisms
            for (const auto& [g, f] : decomp[m]) {
                if (!ok) break;
                for (int e = 0; e < sz && ok; ++e)
                    if (F.map[g][F.map[f][e]] != cand[e]) ok = false;
            }
            // compositions of m with earlier morphisms whose result is known
            for (int f = 0; f <= m && ok; ++f) {
                if (C.tgt[f] == C.src[m]) {
                    const int h = C.comp[m][f];
                    if (h <= m) {
                        for (int e = 0; e < F.size[C.src[f]] && ok; ++e)
                            if (cand[F.map[f][e]] != F.map[h][e]) ok = false;
                    }
                }
                if (ok && C.tgt[m] == C.src[f]) {
                    const int h = C.comp[f][m];
                    if (h <= m) {
                        for (int e = 0; e < sz && ok; ++e)
                            if (F.map[f][cand[e]] != F.map[h][e]) ok = false;
                    }
                }
            }
            if (ok) self(self, m + 1);
            // next candidate map
            int i = sz - 1;
            while (i >= 0) {
                if (++cand[i] < tz) break;
                cand[i] = 0;
                --i;
            }
            if (i < 0 || sz == 0) break;
        }
        F.map[m].clear();
    };
    auto sizeDfs = [&](auto&& self, int x) -> void {
        if (x == nO) {
            morDfs(morDfs, 0);
            return;
        }
        for (int s = 0; s <= k; ++s) {
            F.size[x] = s;
            self(self, x + 1);
        }
    };
    sizeDfs(sizeDfs, 0);
    return out;
}

namespace {

std::vector<std::vector<std::vector<int>>> perms_up_to(int k) {
    std::vector<std::vector<std::vector<int>>> all(k + 1);
    for (int n = 0; n <= k; ++n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            all[n].push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return all;
}

// canonical encoding of a set functor under per-object relabelings
std::vector<int> canonical_encoding(const FinCat& C, const SetFunctor& F,
                                    const std::vector<std::vector<std::vector<int>>>& perms) {
    const int nO = C.n_obj(), nM = C.n_mor();
    std::vector<int> best;
    std::vector<int> choice(nO, 0);
    std::vector<const std::vector<int>*> sigma(nO), sigmaInv(nO);
    std::vector<std::vector<int>> invStore(nO);
    auto encode = [&]() {
        std::vector<int> enc;
        enc.reserve(nO + nM * 4);
        for (int x = 0; x < nO; ++x) enc.push_back(F.size[x]);
        for (int m = 0; m < nM; ++m) {
            const int s = C.src[m], t = C.tgt[m];
            for (int e = 0; e < F.size[s]; ++e)
                enc.push_back((*sigma[t])[F.map[m][(*sigmaInv[s])[e]]]);
        }
        return enc;
    };
    auto rec = [&](auto&& self, int x) -> void {
        if (x == nO) {
            auto enc = encode();
            if (best.empty() || enc < best) best = std::move(enc);
            return;
        }
        for (const auto& p : perms[F.size[x]]) {
            sigma[x] = &p;
            invStore[x].assign(p.size(), 0);
            for (size_t i = 0; i < p.size(); ++i) invStore[x][p[i]] = static_cast<int>(i);
            sigmaInv[x] = &invStore[x];
            self(self, x + 1);
        }
    };
    rec(rec, 0);
    return best;
}

} // namespace

FunctorClasses count_functor_iso_classes(const FinCat& C, int k, long long cap) {
    if (k < 0) throw DomainError("BadCap", "k must be nonnegative");
    auto all = enumerate_set_functors(C, k, cap);
    auto perms = perms_up_to(k);
    std::map<std::vector<int>, SetFunctor> classes;
    for (const auto& F : all) {
        auto key = canonical_encoding(C, F, perms);
        classes.emplace(std::move(key), F);
    }
    FunctorClasses R;
    R.count = static_cast<long long>(classes.size());
    for (auto& [key, rep] : classes) R.reps.push_back(rep);
    return R;
}

namespace {

std::vector<int> pres_canonical_encoding(const PresCat& P, const PresSetFunctor& F,
                                         const std::vector<std::vector<std::vector<int>>>& perms) {
    const int nO = P.n_obj(), nG = P.n_gen();
    std::vector<int> best;
    std::vector<const std::vector<int>*> sigma(nO), sigmaInv(nO);
    std::vector<std::vector<int>> invStore(nO);
    auto encode = [&]() {
        std::vector<int> enc;
        for (int x = 0; x < nO; ++x) enc.push_back(F.size[x]);
        for (int g = 0; g < nG; ++g) {
            const int s = P.genSrc[g], t = P.genTgt[g];
            for (int e = 0; e < F.size[s]; ++e)
                enc.push_back((*sigma[t])[F.genMap[g][(*sigmaInv[s])[e]]]);
        }
        return enc;
    };
    auto rec = [&](auto&& self, int x) -> void {
        if (x == nO) {
            auto enc = encode();
            if (best.empty() || enc < best) best = std::move(enc);
            return;
        }
        for (const auto& p : perms[F.size[x]]) {
            sigma[x] = &p;
            invStore[x].assign(p.size(), 0);
            for (size_t i = 0; i < p.size(); ++i) invStore[x][p[i]] = static_cast<int>(i);
            sigmaInv[x] = &invStore[x];
            self(self, x + 1);
        }
    };
    rec(rec, 0);
    return best;
}

} // namespace

PresFunctorClasses count_functor_iso_classes(const PresCat& P, int k, long long cap) {
    if (k < 0) throw DomainError("BadCap", "k must be nonnegative");
    const int nO = P.n_obj(), nG = P.n_gen();
    PresSetFunctor F;
    F.size.assign(nO, 0);
    F.genMap.assign(nG, {});
    long long visited = 0;
    auto perms = perms_up_to(k);
    std::map<std::vector<int>, PresSetFunctor> classes;
    // relations become checkable once all their generators are assigned
    std::vector<int> relReady(P.relations.size(), 0);
    for (size_t r = 0; r < P.relations.size(); ++r) {
        int mx = -1;
        for (int g : P.relations[r].lhs) mx = std::max(mx, g);
        for (int g : P.relations[r].rhs) mx = std::max(mx, g);
        relReady[r] = mx;
    }
    auto genDfs = [&](auto&& self, int g) -> void {
        if (g == nG) {
            auto key = pres_canonical_encoding(P, F, perms);
            classes.emplace(std::move(key), F);
            return;
        }
        const int sz = F.size[P.genSrc[g]], tz = F.size[P.genTgt[g]];
        if (sz > 0 && tz == 0) return;
        std::vector<int> cand(sz, 0);
        for (;;) {
            if (++visited > cap) throw CapExceeded("presentation functor search bound hit");
            bool ok = !P.inverted[g] || is_bijection(cand, tz);
            if (ok) {
                F.genMap[g] = cand;
                for (size_t r = 0; r < P.relations.size() && ok; ++r) {
                    if (relReady[r] != g) continue;
                    const auto& rel = P.relations[r];
                    const int srcObj =
                        rel.lhs.empty() ? P.genSrc[rel.rhs.front()] : P.genSrc[rel.lhs.front()];
                    if (eval_word(P, F, rel.lhs, srcObj) != eval_word(P, F, rel.rhs, srcObj))
                        ok = false;
                }
                if (ok) self(self, g + 1);
            }
            int i = sz - 1;
            while (i >= 0) {
                if (++cand[i] < tz) break;
                cand[i] = 0;
                --i;
            }
            if (i < 0 || sz == 0) break;
        }
        F.genMap[g].clear();
    };
    auto sizeDfs = [&](auto&& self, int x) -> void {
        if (x == nO) {
            genDfs(genDfs, 0);
            return;
        }
        for (int s = 0; s <= k; ++s) {
            F.size[x] = s;
            self(self, x + 1);
        }
    };
    sizeDfs(sizeDfs, 0);
    PresFunctorClasses R;
    R.count = static_cast<long long>(classes.size());
    for (auto& [key, rep] : classes) R.reps.push_back(rep);
    return R;
}

namespace {

SetFunctor restrict_functor(const SubCat& S, const SetFunctor& F) {
    SetFunctor G;
    for (int o : S.objOrig) G.size.push_back(F.size[o]);
    for (int m : S.morOrig) G.map.push_back(F.map[m]);
    return G;
}

} // namespace

RecollementResult recollement_round_trip(const LayeredCat& L, const std::vector<char>& sieve,
                                         const SetFunctor& F, bool withCounts, int k) {
    if (static_cast<int>(sieve.size()) != L.base.size())
        throw DomainError("NotASieve", "sieve mask has wrong length");
    if (!is_sieve(L.base, sieve)) throw DomainError("NotASieve", "subset is not down-closed");
    auto frep = validate_set_functor(L.cat, F);
    if (!frep.empty()) throw ValidationError("InvalidSetFunctor", frep);
    RecollementResult R;
    std::vector<int> zObjs, uObjs;
    for (int x = 0; x < L.cat.n_obj(); ++x)
        (sieve[L.label[x]] ? zObjs : uObjs).push_back(x);
    R.zPart = full_subcat(L.cat, zObjs);
    R.uPart = full_subcat(L.cat, uObjs);
    R.fz = restrict_functor(R.zPart, F);
    R.fu = restrict_functor(R.uPart, F);
    RKEResult rke = right_kan_extension(R.uPart.cat, R.fu, L.cat, R.uPart.incl);
    // glue: x in F(z) gives the family (F(phi)(x))_{(u, phi)}
    R.glue.resize(R.zPart.cat.n_obj());
    for (int zi = 0; zi < R.zPart.cat.n_obj(); ++zi) {
        const int z = R.zPart.objOrig[zi];
        for (int x = 0; x < F.size[z]; ++x) {
            std::vector<int> fam(rke.shape[z].size());
            for (size_t j = 0; j < rke.shape[z].size(); ++j)
                fam[j] = F.map[rke.shape[z][j].second][x];
            const int idx = rke.family_index(z, fam);
            if (idx < 0) throw DomainError("InternalError", "glue family not found");
            R.glue[zi].push_back(idx);
        }
    }
    // reassemble from the triple alone
    R.reassembled.size = F.size;
    R.reassembled.map.assign(L.cat.n_mor(), {});
    std::vector<int> zIdxOf(L.cat.n_obj(), -1), uIdxOf(L.cat.n_obj(), -1);
    for (int i = 0; i < R.zPart.cat.n_obj(); ++i) zIdxOf[R.zPart.objOrig[i]] = i;
    for (int i = 0; i < R.uPart.cat.n_obj(); ++i) uIdxOf[R.uPart.objOrig[i]] = i;
    for (int m = 0; m < L.cat.n_mor(); ++m) {
        const int a = L.cat.src[m], b = L.cat.tgt[m];
        const bool az = sieve[L.label[a]], bz = sieve[L.label[b]];
        if (!az && bz) throw DomainError("InternalError", "morphism from the open into the closed part");
        if (az && bz) {
            int zi = -1;
            for (int i = 0; i < R.zPart.cat.n_mor(); ++i)
                if (R.zPart.morOrig[i] == m) zi = i;
            if (zi < 0) throw DomainError("InternalError", "missing Z morphism");
            R.reassembled.map[m] = R.fz.map[zi];
        } else if (!az && !bz) {
            int ui = -1;
            for (int i = 0; i < R.uPart.cat.n_mor(); ++i)
                if (R.uPart.morOrig[i] == m) ui = i;
            if (ui < 0) throw DomainError("InternalError", "missing U morphism");
            R.reassembled.map[m] = R.fu.map[ui];
        } else {
            // cross morphism: read the (u, m) component of the glued family
            const int zi = zIdxOf[a];
            int commaIdx = -1;
            for (size_t j = 0; j < rke.shape[a].size(); ++j)
                if (rke.shape[a][j] == std::make_pair(uIdxOf[b], m)) {
                    commaIdx = static_cast<int>(j);
                    break;
                }
            if (commaIdx < 0) throw DomainError("InternalError", "missing comma component");
            for (int x = 0; x < F.size[a]; ++x)
                R.reassembled.map[m].push_back(rke.families[a][R.glue[zi][x]][commaIdx]);
        }
    }
    R.ok = exists_natural_iso_set(L.cat, R.reassembled, F);

    if (withCounts) {
        R.sheafClasses = count_functor_iso_classes(L.cat, k).count;
        auto zClasses = count_functor_iso_classes(R.zPart.cat, k);
        auto uClasses = count_functor_iso_classes(R.uPart.cat, k);
        long long triples = 0;
        for (const auto& fz : zClasses.reps)
            for (const auto& fu : uClasses.reps) {
                RKEResult rkeU = right_kan_extension(R.uPart.cat, fu, L.cat, R.uPart.incl);
                // target of the glue on the Z part
                SetFunctor T;
                for (int zi = 0; zi < R.zPart.cat.n_obj(); ++zi)
                    T.size.push_back(rkeU.F.size[R.zPart.objOrig[zi]]);
                for (int mi = 0; mi < R.zPart.cat.n_mor(); ++mi)
                    T.map.push_back(rkeU.F.map[R.zPart.morOrig[mi]]);
                auto nats = nat_transformations(R.zPart.cat, fz, T, false);
                if (nats.empty()) continue;
                auto autZ = nat_transformations(R.zPart.cat, fz, fz, true);
                auto autU = nat_transformations(R.uPart.cat, fu, fu, true);
                // J_* of an automorphism of fu acts on families componentwise
                std::set<std::vector<std::vector<int>>> seen;
                long long orbits = 0;
                for (const auto& t : nats) {
                    if (seen.count(t)) continue;
                    orbits++;
                    for (const auto& a : autZ)
                        for (const auto& b : autU) {
                            std::vector<std::vector<int>> t2(t.size());
                            for (int zi = 0; zi < R.zPart.cat.n_obj(); ++zi) {
                                const int z = R.zPart.objOrig[zi];
                                // a^{-1} on fz(z)
                                std::vector<int> ainv(a[zi].size());
                                for (size_t e = 0; e < a[zi].size(); ++e)
                                    ainv[a[zi][e]] = static_cast<int>(e);
                                t2[zi].resize(t[zi].size());
                                for (size_t e = 0; e < t[zi].size(); ++e) {
                                    const int famIdx = t[zi][ainv[e]];
                                    std::vector<int> fam = rkeU.families[z][famIdx];
                                    for (size_t j = 0; j < fam.size(); ++j)
                                        fam[j] = b[rkeU.shape[z][j].first][fam[j]];
                                    const int idx2 = rkeU.family_index(z, fam);
                                    if (idx2 < 0)
                                        throw DomainError("InternalError",
                                                          "automorphism does not preserve families");
                                    t2[zi][e] = idx2;
                                }
                            }
                            seen.insert(std::move(t2));
                        }
                }
                triples += orbits;
            }
        R.tripleClasses = triples;
    }
    return R;
}

BeckChevalleyResult beck_chevalley_check(const LayeredCat& L, const std::vector<char>& sieve,
                                         const SetFunctor& FonU) {
    if (static_cast<int>(sieve.size()) != L.base.size() || !is_sieve(L.base, sieve))
        throw DomainError("NotASieve", "subset is not down-closed");
    BeckChevalleyResult R;
    std::vector<int> zObjs, uObjs;
    for (int x = 0; x < L.cat.n_obj(); ++x)
        (sieve[L.label[x]] ? zObjs : uObjs).push_back(x);
    SubCat zPart = full_subcat(L.cat, zObjs);
    SubCat uPart = full_subcat(L.cat, uObjs);
    auto frep = validate_set_functor(uPart.cat, FonU);
    if (!frep.empty()) throw ValidationError("InvalidSetFunctor", frep);
    // lhs: i*(J_* F)
    RKEResult rke = right_kan_extension(uPart.cat, FonU, L.cat, uPart.incl);
    for (int zi = 0; zi < zPart.cat.n_obj(); ++zi) R.lhs.size.push_back(rke.F.size[zPart.objOrig[zi]]);
    for (int mi = 0; mi < zPart.cat.n_mor(); ++mi) R.lhs.map.push_back(rke.F.map[zPart.morOrig[mi]]);
    // rhs: p_*(q* F) over the comma Z-down-U
    CommaCat W = comma(zPart.incl, uPart.incl);
    SetFunctor qF;
    for (int o = 0; o < W.cat.n_obj(); ++o) qF.size.push_back(FonU.size[W.objD[o]]);
    for (int m = 0; m < W.cat.n_mor(); ++m) qF.map.push_back(FonU.map[W.projRight.morMap[m]]);
    RKEResult rhsRke = right_kan_extension(W.cat, qF, zPart.cat, W.projLeft);
    R.rhs = rhsRke.F;
    // canonical comparison, componentwise
    R.witness.resize(zPart.cat.n_obj());
    bool ok = true;
    for (int zi = 0; zi < zPart.cat.n_obj(); ++zi) {
        const int z = zPart.objOrig[zi];
        for (int e = 0; e < R.lhs.size[zi]; ++e) {
            std::vector<int> fam(rhsRke.shape[zi].size());
            for (size_t j = 0; j < rhsRke.shape[zi].size(); ++j) {
                const auto [l, psi] = rhsRke.shape[zi][j]; // l in W, psi: z -> p(l) in zPart
                const int beta = W.objBeta[l];
                const int phi = L.cat.comp[beta][zPart.incl.morMap[psi]];
                int commaIdx = -1;
                for (size_t i = 0; i < rke.shape[z].size(); ++i)
                    if (rke.shape[z][i] == std::make_pair(W.objD[l], phi)) {
                        commaIdx = static_cast<int>(i);
                        break;
                    }
                if (commaIdx < 0) throw DomainError("InternalError", "comparison leg missing");
                fam[j] = rke.families[z][e][commaIdx];
            }
            const int idx = rhsRke.family_index(zi, fam);
            if (idx < 0) {
                ok = false;
                R.witness[zi].push_back(-1);
            } else
                R.witness[zi].push_back(idx);
        }
        // componentwise bijectivity
        if (ok && !is_bijection(R.witness[zi], R.rhs.size[zi])) ok = false;
    }
    // naturality of the comparison
    if (ok)
        for (int mi = 0; mi < zPart.cat.n_mor() && ok; ++mi) {
            const int a = zPart.cat.src[mi], b = zPart.cat.tgt[mi];
            for (int e = 0; e < R.lhs.size[a] && ok; ++e)
                if (R.rhs.map[mi][R.witness[a][e]] != R.witness[b][R.lhs.map[mi][e]]) ok = false;
        }
    R.ok = ok;
    return R;
}

ExodromyResult exodromy_check(const FinPoset& X, const MonotoneMap& s, int k, long long cap) {
    ExodromyResult R;
    FinCat C = cat_from_poset(X);
    auto classes = count_functor_iso_classes(C, k, cap);
    long long a = 0;
    for (const auto& rep : classes.reps)
        if (is_constructible(X, s, rep)) a++;
    R.sideA = a;
    PresCat P = exit_path_of_stratified_poset(X, s);
    R.sideB = count_functor_iso_classes(P, k, cap).count;
    R.ok = R.sideA == R.sideB;
    return R;
}

} // namespace stratcat
