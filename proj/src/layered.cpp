#include "stratcat/layered.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stratcat {

namespace {

// endpoints of a word; empty words take them from a companion word
bool word_endpoints(const PresCat& P, const std::vector<int>& w, int& s, int& t) {
    if (w.empty()) return false;
    s = P.genSrc[w.front()];
    t = P.genTgt[w.back()];
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (P.genTgt[w[i]] != P.genSrc[w[i + 1]]) return false;
    return true;
}

} // namespace

std::vector<std::string> validate_pres_cat(const PresCat& P) {
    std::vector<std::string> rep;
    if (P.genSrc.size() != P.genNames.size() || P.genTgt.size() != P.genNames.size() ||
        P.inverted.size() != P.genNames.size()) {
        rep.push_back("generator tables have inconsistent shapes");
        return rep;
    }
    for (int g = 0; g < P.n_gen(); ++g)
        if (P.genSrc[g] < 0 || P.genSrc[g] >= P.n_obj() || P.genTgt[g] < 0 ||
            P.genTgt[g] >= P.n_obj())
            rep.push_back("generator " + P.genNames[g] + " has endpoints out of range");
    if (P.hasBase) {
        if (static_cast<int>(P.objLabel.size()) != P.n_obj())
            rep.push_back("object labels missing");
        else
            for (int g = 0; g < P.n_gen(); ++g)
                if (!P.base.leq(P.objLabel[P.genSrc[g]], P.objLabel[P.genTgt[g]]))
                    rep.push_back("generator " + P.genNames[g] + " not monotone over the base");
    }
    for (const auto& r : P.relations) {
        int ls = -1, lt = -1, rs = -1, rt = -1;
        bool lok = word_endpoints(P, r.lhs, ls, lt);
        bool rok = word_endpoints(P, r.rhs, rs, rt);
        if (r.lhs.empty() && r.rhs.empty()) {
            rep.push_back("relation with two empty words");
            continue;
        }
        if (!r.lhs.empty() && !lok) rep.push_back("relation lhs not composable");
        if (!r.rhs.empty() && !rok) rep.push_back("relation rhs not composable");
        if (!r.lhs.empty() && !r.rhs.empty() && lok && rok && (ls != rs || lt != rt))
            rep.push_back("relation words not parallel");
        if (r.rhs.empty() && lok && ls != lt)
            rep.push_back("relation equates a non-loop with an identity");
        if (r.lhs.empty() && rok && rs != rt)
            rep.push_back("relation equates a non-loop with an identity");
    }
    return rep;
}

LayeredCat poset_over_itself(const FinPoset& X) {
    LayeredCat L;
    L.cat = cat_from_poset(X);
    L.base = X;
    L.label.resize(X.size());
    std::iota(L.label.begin(), L.label.end(), 0);
    return L;
}

Functor strat_functor(const LayeredCat& L) {
    Functor F;
    F.source = L.cat;
    F.target = cat_from_poset(L.base);
    F.objMap = L.label;
    for (int m = 0; m < L.cat.n_mor(); ++m) {
        int a = L.label[L.cat.src[m]], b = L.label[L.cat.tgt[m]];
        F.morMap.push_back(
            F.target.morphism_index(L.base.elements[a] + "<=" + L.base.elements[b]));
    }
    return F;
}

std::vector<std::string> validate_layered(const LayeredCat& L) {
    std::vector<std::string> rep = validate_category(L.cat);
    if (!rep.empty()) return rep;
    auto prep = validate_poset(L.base);
    rep.insert(rep.end(), prep.begin(), prep.end());
    if (!rep.empty()) return rep;
    if (static_cast<int>(L.label.size()) != L.cat.n_obj()) {
        rep.push_back("label table has wrong length");
        return rep;
    }
    for (int x = 0; x < L.cat.n_obj(); ++x)
        if (L.label[x] < 0 || L.label[x] >= L.base.size()) {
            rep.push_back("label out of range at " + L.cat.objNames[x]);
            return rep;
        }
    for (int m = 0; m < L.cat.n_mor(); ++m) {
        if (!L.base.leq(L.label[L.cat.src[m]], L.label[L.cat.tgt[m]]))
            rep.push_back("morphism " + L.cat.morNames[m] + " does not lie over a base relation");
        else if (L.label[L.cat.src[m]] == L.label[L.cat.tgt[m]]) {
            // conservativity: over-identity morphisms must be invertible (the
            // inverse then automatically lies over the same identity)
            if (!is_invertible(L.cat, m))
                rep.push_back("morphism " + L.cat.morNames[m] +
                              " lies over an identity but is not invertible");
        }
    }
    return rep;
}

Stratum stratum(const LayeredCat& L, int p) {
    if (p < 0 || p >= L.base.size()) throw DomainError("UnknownPoint", "stratum point out of range");
    std::vector<int> objs;
    for (int x = 0; x < L.cat.n_obj(); ++x)
        if (L.label[x] == p) objs.push_back(x);
    Stratum S{full_subcat(L.cat, objs), p};
    return S;
}

Link link(const LayeredCat& L, int p, int q) {
    if (p < 0 || p >= L.base.size() || q < 0 || q >= L.base.size())
        throw DomainError("UnknownPoint", "link point out of range");
    if (!L.base.leq(p, q))
        throw DomainError("NotComparable",
                          L.base.elements[p] + " <= " + L.base.elements[q] + " does not hold");
    Link lk;
    lk.stratP = stratum(L, p);
    lk.stratQ = stratum(L, q);
    if (p == q) {
        lk.groupoid = lk.stratP.sub.cat;
        lk.s = identity_functor(lk.groupoid);
        lk.t = identity_functor(lk.groupoid);
        for (int i = 0; i < lk.groupoid.n_obj(); ++i)
            lk.objMor.push_back(L.cat.idOf[lk.stratP.sub.objOrig[i]]);
        return lk;
    }
    // objects: morphisms of L.cat lying over p < q
    std::vector<int> objNewOfMor(L.cat.n_mor(), -1);
    for (int m = 0; m < L.cat.n_mor(); ++m)
        if (L.label[L.cat.src[m]] == p && L.label[L.cat.tgt[m]] == q) {
            objNewOfMor[m] = static_cast<int>(lk.objMor.size());
            lk.objMor.push_back(m);
            lk.groupoid.objNames.push_back("[" + L.cat.morNames[m] + "]");
        }
    const int nO = static_cast<int>(lk.objMor.size());
    // strata object lookup: total-category object -> stratum object index
    std::vector<int> stratObjP(L.cat.n_obj(), -1), stratObjQ(L.cat.n_obj(), -1);
    for (int i = 0; i < lk.stratP.sub.cat.n_obj(); ++i) stratObjP[lk.stratP.sub.objOrig[i]] = i;
    for (int i = 0; i < lk.stratQ.sub.cat.n_obj(); ++i) stratObjQ[lk.stratQ.sub.objOrig[i]] = i;
    std::vector<int> stratMorP(L.cat.n_mor(), -1), stratMorQ(L.cat.n_mor(), -1);
    for (int i = 0; i < lk.stratP.sub.cat.n_mor(); ++i) stratMorP[lk.stratP.sub.morOrig[i]] = i;
    for (int i = 0; i < lk.stratQ.sub.cat.n_mor(); ++i) stratMorQ[lk.stratQ.sub.morOrig[i]] = i;

    struct Mor {
        int from, to, u, w; // u, w are morphisms of the total category
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int, int>, int> morIdx;
    for (int a = 0; a < nO; ++a)
        for (int b = 0; b < nO; ++b) {
            const int ma = lk.objMor[a], mb = lk.objMor[b];
            for (int u = 0; u < L.cat.n_mor(); ++u) {
                if (L.cat.src[u] != L.cat.src[ma] || L.cat.tgt[u] != L.cat.src[mb]) continue;
                if (stratMorP[u] == -1) continue;
                for (int w = 0; w < L.cat.n_mor(); ++w) {
                    if (L.cat.src[w] != L.cat.tgt[ma] || L.cat.tgt[w] != L.cat.tgt[mb]) continue;
                    if (stratMorQ[w] == -1) continue;
                    if (L.cat.comp[w][ma] != L.cat.comp[mb][u]) continue;
                    morIdx[{a, b, u, w}] = static_cast<int>(mors.size());
                    mors.push_back({a, b, u, w});
                }
            }
        }
    for (const auto& m : mors) {
        lk.groupoid.morNames.push_back("(" + L.cat.morNames[m.u] + "," + L.cat.morNames[m.w] +
                                       ")@" + std::to_string(m.from) + ">" + std::to_string(m.to));
        lk.groupoid.src.push_back(m.from);
        lk.groupoid.tgt.push_back(m.to);
    }
    lk.groupoid.idOf.resize(nO);
    for (int a = 0; a < nO; ++a) {
        const int ma = lk.objMor[a];
        lk.groupoid.idOf[a] =
            morIdx.at({a, a, L.cat.idOf[L.cat.src[ma]], L.cat.idOf[L.cat.tgt[ma]]});
    }
    const int nM = static_cast<int>(mors.size());
    lk.groupoid.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            if (mors[f].to != mors[g].from) continue;
            lk.groupoid.comp[g][f] = morIdx.at(
                {mors[f].from, mors[g].to, L.cat.comp[mors[g].u][mors[f].u],
                 L.cat.comp[mors[g].w][mors[f].w]});
        }
    lk.s.source = lk.groupoid;
    lk.s.target = lk.stratP.sub.cat;
    lk.t.source = lk.groupoid;
    lk.t.target = lk.stratQ.sub.cat;
    for (int a = 0; a < nO; ++a) {
        lk.s.objMap.push_back(stratObjP[L.cat.src[lk.objMor[a]]]);
        lk.t.objMap.push_back(stratObjQ[L.cat.tgt[lk.objMor[a]]]);
    }
    for (const auto& m : mors) {
        lk.s.morMap.push_back(stratMorP[m.u]);
        lk.t.morMap.push_back(stratMorQ[m.w]);
    }
    return lk;
}

IsoCommaFiber hom_fiber(const Link& lk, int xInP, int yInQ) {
    return iso_comma_fiber(lk.groupoid, lk.stratP.sub.cat, lk.stratQ.sub.cat, lk.s.objMap,
                           lk.s.morMap, lk.t.objMap, lk.t.morMap, xInP, yInQ);
}

int hom_fiber_size(const Link& lk, int xInP, int yInQ) {
    return hom_fiber(lk, xInP, yInQ).nComp;
}

H0Result h0(const LayeredCat& L) {
    H0Result R;
    auto cls = iso_classes(L.cat);
    // renumber classes by least representative
    std::vector<int> reps;
    std::map<int, int> newId;
    for (int x = 0; x < L.cat.n_obj(); ++x)
        if (!newId.count(cls[x])) {
            newId[cls[x]] = static_cast<int>(reps.size());
            reps.push_back(x);
        }
    R.classOf.resize(L.cat.n_obj());
    for (int x = 0; x < L.cat.n_obj(); ++x) R.classOf[x] = newId.at(cls[x]);
    const int k = static_cast<int>(reps.size());
    FinPoset& Q = R.poset;
    for (int r : reps) Q.elements.push_back(L.cat.objNames[r]);
    Q.rel.assign(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) Q.rel[static_cast<size_t>(i) * k + i] = 1;
    for (int m = 0; m < L.cat.n_mor(); ++m)
        Q.rel[static_cast<size_t>(R.classOf[L.cat.src[m]]) * k + R.classOf[L.cat.tgt[m]]] = 1;
    auto rep = validate_poset(Q);
    if (!rep.empty()) throw ValidationError("H0NotAPoset", rep);
    R.quotient.source = L.cat;
    R.quotient.target = cat_from_poset(Q);
    R.quotient.objMap = R.classOf;
    for (int m = 0; m < L.cat.n_mor(); ++m) {
        int a = R.classOf[L.cat.src[m]], b = R.classOf[L.cat.tgt[m]];
        R.quotient.morMap.push_back(
            R.quotient.target.morphism_index(Q.elements[a] + "<=" + Q.elements[b]));
    }
    return R;
}

TruncationReport truncation_report(const LayeredCat& L) {
    TruncationReport R;
    R.isPosetal = true;
    for (int p = 0; p < L.base.size(); ++p)
        for (int q = 0; q < L.base.size(); ++q) {
            if (!L.base.leq(p, q)) continue;
            Link lk = link(L, p, q);
            for (int x = 0; x < lk.stratP.sub.cat.n_obj(); ++x)
                for (int y = 0; y < lk.stratQ.sub.cat.n_obj(); ++y) {
                    int sz = hom_fiber_size(lk, x, y);
                    R.maxHomFiber = std::max(R.maxHomFiber, sz);
                    if (sz > 1) R.isPosetal = false;
                }
        }
    R.details = "1-truncated and pi-finite by finiteness; max hom fiber " +
                std::to_string(R.maxHomFiber);
    return R;
}

LayeredCat pullback_layered(const LayeredCat& L, const MonotoneMap& g) {
    auto rep = validate_monotone(g);
    if (!rep.empty()) throw ValidationError("InvalidMonotoneMap", rep);
    LayeredCat R;
    R.base = g.source; // Q
    struct ObjKey {
        int q, x;
    };
    std::vector<ObjKey> objs;
    std::map<std::pair<int, int>, int> objIdx;
    for (int q = 0; q < g.source.size(); ++q)
        for (int x = 0; x < L.cat.n_obj(); ++x) {
            if (L.label[x] != g.map[q]) continue;
            objIdx[{q, x}] = static_cast<int>(objs.size());
            objs.push_back({q, x});
            R.cat.objNames.push_back("(" + L.cat.objNames[x] + "," + g.source.elements[q] + ")");
            R.label.push_back(q);
        }
    struct Mor {
        int from, to, m;
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int>, int> morIdx;
    for (int a = 0; a < static_cast<int>(objs.size()); ++a)
        for (int b = 0; b < static_cast<int>(objs.size()); ++b) {
            if (!g.source.leq(objs[a].q, objs[b].q)) continue;
            for (int m = 0; m < L.cat.n_mor(); ++m) {
                if (L.cat.src[m] != objs[a].x || L.cat.tgt[m] != objs[b].x) continue;
                morIdx[{a, b, m}] = static_cast<int>(mors.size());
                mors.push_back({a, b, m});
            }
        }
    for (const auto& m : mors) {
        R.cat.morNames.push_back(L.cat.morNames[m.m] + "@" + std::to_string(m.from) + ">" +
                                 std::to_string(m.to));
        R.cat.src.push_back(m.from);
        R.cat.tgt.push_back(m.to);
    }
    R.cat.idOf.resize(R.cat.n_obj());
    for (int a = 0; a < R.cat.n_obj(); ++a)
        R.cat.idOf[a] = morIdx.at({a, a, L.cat.idOf[objs[a].x]});
    const int nM = static_cast<int>(mors.size());
    R.cat.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g2 = 0; g2 < nM; ++g2)
        for (int f = 0; f < nM; ++f) {
            if (mors[f].to != mors[g2].from) continue;
            R.cat.comp[g2][f] =
                morIdx.at({mors[f].from, mors[g2].to, L.cat.comp[mors[g2].m][mors[f].m]});
        }
    return R;
}

PresCat coarsen(const LayeredCat& L, const MonotoneMap& f) {
    auto rep = validate_monotone(f);
    if (!rep.empty()) throw ValidationError("InvalidMonotoneMap", rep);
    if (f.source.size() != L.base.size())
        throw DomainError("BaseMismatch", "coarsening map must start at the base of the input");
    PresCat P;
    P.objNames = L.cat.objNames;
    P.hasBase = true;
    P.base = f.target;
    for (int x = 0; x < L.cat.n_obj(); ++x) P.objLabel.push_back(f.map[L.label[x]]);
    std::vector<int> genOfMor(L.cat.n_mor(), -1);
    for (int m = 0; m < L.cat.n_mor(); ++m) {
        if (L.cat.is_identity(m)) continue;
        genOfMor[m] = P.n_gen();
        P.genNames.push_back(L.cat.morNames[m]);
        P.genSrc.push_back(L.cat.src[m]);
        P.genTgt.push_back(L.cat.tgt[m]);
        // the class inverted by the localization: morphisms pushed onto
        // identities of Q; morphisms that were already invertible need no
        // formal inverse
        const bool overIdentity = f.map[L.label[L.cat.src[m]]] == f.map[L.label[L.cat.tgt[m]]];
        P.inverted.push_back(overIdentity && !is_invertible(L.cat, m) ? 1 : 0);
    }
    for (int g = 0; g < L.cat.n_mor(); ++g)
        for (int m = 0; m < L.cat.n_mor(); ++m) {
            if (L.cat.tgt[m] != L.cat.src[g]) continue;
            if (L.cat.is_identity(g) || L.cat.is_identity(m)) continue;
            const int h = L.cat.comp[g][m];
            PresCat::Relation r;
            r.lhs = {genOfMor[m], genOfMor[g]};
            if (!L.cat.is_identity(h)) r.rhs = {genOfMor[h]};
            P.relations.push_back(std::move(r));
        }
    return P;
}

PresCat exit_path_of_stratified_poset(const FinPoset& X, const MonotoneMap& s) {
    return coarsen(poset_over_itself(X), s);
}

FinCat realize_pres_cat(const PresCat& P) {
    for (char c : P.inverted)
        if (c)
            throw DomainError("NotRealizable",
                              "presentations with inverted generators are not realized");
    auto rep = validate_pres_cat(P);
    if (!rep.empty()) throw ValidationError("InvalidPresCat", rep);
    FinCat C;
    C.objNames = P.objNames;
    const int nO = P.n_obj();
    for (int x = 0; x < nO; ++x) {
        C.morNames.push_back("id_" + P.objNames[x]);
        C.src.push_back(x);
        C.tgt.push_back(x);
        C.idOf.push_back(x);
    }
    for (int g = 0; g < P.n_gen(); ++g) {
        C.morNames.push_back(P.genNames[g]);
        C.src.push_back(P.genSrc[g]);
        C.tgt.push_back(P.genTgt[g]);
    }
    auto morOfGen = [&](int g) { return nO + g; };
    const int nM = C.n_mor();
    C.comp.assign(nM, std::vector<int>(nM, -1));
    for (int m = 0; m < nM; ++m) {
        C.comp[C.idOf[C.tgt[m]]][m] = m;
        C.comp[m][C.idOf[C.src[m]]] = m;
    }
    // composites of two generators must be pinned by 2-letter relations
    for (const auto& r : P.relations) {
        if (r.lhs.size() == 2) {
            const int f = r.lhs[0], g = r.lhs[1];
            int h;
            if (r.rhs.empty())
                h = C.idOf[P.genSrc[f]];
            else if (r.rhs.size() == 1)
                h = morOfGen(r.rhs[0]);
            else
                continue;
            int& slot = C.comp[morOfGen(g)][morOfGen(f)];
            if (slot != -1 && slot != h)
                throw DomainError("NotRealizable", "conflicting composites for a generator pair");
            slot = h;
        }
    }
    for (int g = 0; g < P.n_gen(); ++g)
        for (int f = 0; f < P.n_gen(); ++f) {
            if (P.genTgt[f] != P.genSrc[g]) continue;
            if (C.comp[morOfGen(g)][morOfGen(f)] == -1)
                throw DomainError("NotRealizable", "presentation does not determine the composite of (" +
                                                       P.genNames[g] + ", " + P.genNames[f] + ")");
        }
    auto crep = validate_category(C);
    if (!crep.empty()) throw ValidationError("NotRealizable", crep);
    return C;
}

std::optional<Equivalence> are_equivalent_layered(const LayeredCat& A, const LayeredCat& B,
                                                  long long cap) {
    if (A.base.size() != B.base.size() || A.base.rel != B.base.rel) return std::nullopt;
    std::vector<std::vector<int>> constraint(A.cat.n_obj());
    for (int x = 0; x < A.cat.n_obj(); ++x)
        for (int y = 0; y < B.cat.n_obj(); ++y)
            if (B.label[y] == A.label[x]) constraint[x].push_back(y);
    return are_equivalent(A.cat, B.cat, cap, constraint);
}

} // namespace stratcat
