#include "stratcat/decollage.hpp"

#include <algorithm>
#include <numeric>

namespace stratcat {

int Decollage::restrict_obj(int from, int to, int obj) const {
    if (from == to) return obj;
    return restr.at({from, to}).objMap[obj];
}

int Decollage::restrict_mor(int from, int to, int mor) const {
    if (from == to) return mor;
    return restr.at({from, to}).morMap[mor];
}

namespace {

bool string_contained(const std::vector<int>& small, const std::vector<int>& big) {
    auto s = small;
    auto b = big;
    std::sort(s.begin(), s.end());
    std::sort(b.begin(), b.end());
    return std::includes(b.begin(), b.end(), s.begin(), s.end());
}

struct ReassembleData {
    LayeredCat result;
    bool ok = true;
    std::string error;
};

// canonical Segal section for a triple string: least (E, v1, v2) with
// theta o r_q(v1) = r_q(v2)
struct SegalLift {
    int E, v1, v2;
};

} // namespace

std::vector<std::string> validate_decollage(const Decollage& D) {
    std::vector<std::string> rep;
    Subdivision sd = subdivision(D.base);
    if (sd.strings != D.sd.strings) {
        rep.push_back("string list does not match the subdivision of the base");
        return rep;
    }
    const int nS = static_cast<int>(sd.strings.size());
    if (static_cast<int>(D.value.size()) != nS) {
        rep.push_back("one groupoid per string required");
        return rep;
    }
    for (int s = 0; s < nS; ++s) {
        auto r = validate_category(D.value[s]);
        for (const auto& line : r) rep.push_back(D.sd.poset.elements[s] + ": " + line);
        if (r.empty() && !is_groupoid(D.value[s]))
            rep.push_back(D.sd.poset.elements[s] + ": value is not a groupoid");
    }
    if (!rep.empty()) return rep;
    // restriction functors present exactly for strict inclusions, each valid
    for (int a = 0; a < nS; ++a)
        for (int b = 0; b < nS; ++b) {
            const bool incl = a != b && string_contained(sd.strings[b], sd.strings[a]);
            const bool present = D.restr.count({a, b}) > 0;
            if (incl && !present)
                rep.push_back("missing restriction " + D.sd.poset.elements[a] + " -> " +
                              D.sd.poset.elements[b]);
            if (!incl && present)
                rep.push_back("unexpected restriction " + D.sd.poset.elements[a] + " -> " +
                              D.sd.poset.elements[b]);
            if (incl && present) {
                const auto& F = D.restr.at({a, b});
                auto r = validate_functor_maps(D.value[a], D.value[b], F.objMap, F.morMap);
                for (const auto& line : r)
                    rep.push_back("restriction " + D.sd.poset.elements[a] + " -> " +
                                  D.sd.poset.elements[b] + ": " + line);
            }
        }
    if (!rep.empty()) return rep;
    // functoriality of restrictions
    for (int a = 0; a < nS; ++a)
        for (int b = 0; b < nS; ++b) {
            if (a == b || !string_contained(sd.strings[b], sd.strings[a])) continue;
            for (int c = 0; c < nS; ++c) {
                if (b == c || !string_contained(sd.strings[c], sd.strings[b])) continue;
                for (int m = 0; m < D.value[a].n_mor(); ++m)
                    if (D.restrict_mor(b, c, D.restrict_mor(a, b, m)) != D.restrict_mor(a, c, m)) {
                        rep.push_back("restrictions do not compose through " +
                                      D.sd.poset.elements[b]);
                        break;
                    }
            }
        }
    if (!rep.empty()) return rep;
    // 1-truncatedness: edge (s, t) faithful
    for (int s = 0; s < nS; ++s) {
        if (sd.strings[s].size() != 2) continue;
        const int vp = sd.index_of({sd.strings[s][0]});
        const int vq = sd.index_of({sd.strings[s][1]});
        const auto& E = D.value[s];
        for (int u = 0; u < E.n_mor(); ++u)
            for (int v = 0; v < E.n_mor(); ++v) {
                if (u == v || E.src[u] != E.src[v] || E.tgt[u] != E.tgt[v]) continue;
                if (D.restrict_mor(s, vp, u) == D.restrict_mor(s, vp, v) &&
                    D.restrict_mor(s, vq, u) == D.restrict_mor(s, vq, v))
                    rep.push_back("edge value " + D.sd.poset.elements[s] +
                                  " is not faithful over its endpoints");
            }
    }
    if (!rep.empty()) return rep;
    // Segal comparison for strings of length >= 3 (length 2 is definitional)
    for (int s = 0; s < nS; ++s) {
        const auto& str = sd.strings[s];
        const int m = static_cast<int>(str.size()) - 1;
        if (m < 2) continue;
        std::vector<int> edgeIdx(m), vertIdx(m + 1);
        for (int i = 0; i < m; ++i) edgeIdx[i] = sd.index_of({str[i], str[i + 1]});
        for (int i = 0; i <= m; ++i) vertIdx[i] = sd.index_of({str[i]});
        // enumerate fiber-product objects: (a_1..a_m, theta_1..theta_{m-1})
        struct FPObj {
            std::vector<int> a, theta;
        };
        std::vector<FPObj> fpObjs;
        {
            FPObj cur;
            cur.a.assign(m, 0);
            cur.theta.assign(m - 1, 0);
            auto rec = [&](auto&& self, int i) -> void {
                if (i == m) {
                    fpObjs.push_back(cur);
                    return;
                }
                for (int a = 0; a < D.value[edgeIdx[i]].n_obj(); ++a) {
                    cur.a[i] = a;
                    if (i == 0) {
                        self(self, i + 1);
                        continue;
                    }
                    const auto& V = D.value[vertIdx[i]];
                    int from = D.restrict_obj(edgeIdx[i - 1], vertIdx[i], cur.a[i - 1]);
                    int to = D.restrict_obj(edgeIdx[i], vertIdx[i], a);
                    for (int th = 0; th < V.n_mor(); ++th) {
                        if (V.src[th] != from || V.tgt[th] != to) continue;
                        cur.theta[i - 1] = th;
                        self(self, i + 1);
                    }
                }
            };
            rec(rec, 0);
        }
        const auto& S = D.value[s];
        // essential surjectivity
        for (const auto& ob : fpObjs) {
            bool found = false;
            for (int E = 0; E < S.n_obj() && !found; ++E) {
                // iso in the fiber product from comparison(E) to ob:
                // tuple v_i: r_i(E) -> a_i with theta_{i-1} o r(v_{i-1}) = r(v_i)
                std::vector<int> v(m, -1);
                auto rec = [&](auto&& self, int i) -> bool {
                    if (i == m) return true;
                    const auto& Ei = D.value[edgeIdx[i]];
                    const int from = D.restrict_obj(s, edgeIdx[i], E);
                    for (int cand = 0; cand < Ei.n_mor(); ++cand) {
                        if (Ei.src[cand] != from || Ei.tgt[cand] != ob.a[i]) continue;
                        if (i > 0) {
                            const auto& V = D.value[vertIdx[i]];
                            int lhs = V.comp[ob.theta[i - 1]]
                                            [D.restrict_mor(edgeIdx[i - 1], vertIdx[i], v[i - 1])];
                            int rhs = D.restrict_mor(edgeIdx[i], vertIdx[i], cand);
                            if (lhs != rhs) continue;
                        }
                        v[i] = cand;
                        if (self(self, i + 1)) return true;
                    }
                    return false;
                };
                if (rec(rec, 0)) found = true;
            }
            if (!found) {
                rep.push_back("Segal comparison for " + D.sd.poset.elements[s] +
                              " is not essentially surjective");
                break;
            }
        }
        // full faithfulness on the comparison images
        for (int E = 0; E < S.n_obj(); ++E)
            for (int E2 = 0; E2 < S.n_obj(); ++E2) {
                long long upstairs = 0;
                for (int w = 0; w < S.n_mor(); ++w)
                    if (S.src[w] == E && S.tgt[w] == E2) upstairs++;
                // downstairs: tuples v_i: r_i(E) -> r_i(E2) with matching
                // vertex restrictions
                long long downstairs = 0;
                std::vector<int> v(m, -1);
                auto rec = [&](auto&& self, int i) -> void {
                    if (i == m) {
                        downstairs++;
                        return;
                    }
                    const auto& Ei = D.value[edgeIdx[i]];
                    const int from = D.restrict_obj(s, edgeIdx[i], E);
                    const int to = D.restrict_obj(s, edgeIdx[i], E2);
                    for (int cand = 0; cand < Ei.n_mor(); ++cand) {
                        if (Ei.src[cand] != from || Ei.tgt[cand] != to) continue;
                        if (i > 0) {
                            int lhs = D.restrict_mor(edgeIdx[i - 1], vertIdx[i], v[i - 1]);
                            int rhs = D.restrict_mor(edgeIdx[i], vertIdx[i], cand);
                            if (lhs != rhs) continue;
                        }
                        v[i] = cand;
                        self(self, i + 1);
                    }
                };
                rec(rec, 0);
                // injectivity: distinct w give distinct tuples by edge
                // restrictions
                bool inj = true;
                for (int w = 0; w < S.n_mor() && inj; ++w)
                    for (int w2 = w + 1; w2 < S.n_mor() && inj; ++w2) {
                        if (S.src[w] != E || S.tgt[w] != E2 || S.src[w2] != E || S.tgt[w2] != E2)
                            continue;
                        bool same = true;
                        for (int i = 0; i < m && same; ++i)
                            if (D.restrict_mor(s, edgeIdx[i], w) != D.restrict_mor(s, edgeIdx[i], w2))
                                same = false;
                        if (same) inj = false;
                    }
                if (!inj || upstairs != downstairs) {
                    rep.push_back("Segal comparison for " + D.sd.poset.elements[s] +
                                  " is not fully faithful");
                    E = S.n_obj();
                    break;
                }
            }
        if (!rep.empty()) return rep;
    }
    // associativity of the induced composition, via the reassembly
    try {
        reassemble(D);
    } catch (const DomainError& e) {
        if (e.code() == "AssociativityFailure") rep.push_back(e.what());
        // other failures were reported above
    }
    return rep;
}

namespace {

struct Reassembler {
    const Decollage& D;
    std::vector<int> vertString;                 // base element -> singleton string index
    std::map<std::pair<int, int>, int> edgeString;
    std::map<std::vector<int>, int> tripleString;

    // fibers per (p, q, x, y)
    std::map<std::tuple<int, int, int, int>, IsoCommaFiber> fibers;

    explicit Reassembler(const Decollage& d) : D(d) {
        const int n = D.base.size();
        vertString.resize(n);
        for (int p = 0; p < n; ++p) vertString[p] = D.sd.index_of({p});
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (D.base.lt(p, q)) edgeString[{p, q}] = D.sd.index_of({p, q});
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                    if (D.base.lt(p, q) && D.base.lt(q, r))
                        tripleString[{p, q, r}] = D.sd.index_of({p, q, r});
    }

    const IsoCommaFiber& fiber(int p, int q, int x, int y) {
        auto key = std::make_tuple(p, q, x, y);
        auto it = fibers.find(key);
        if (it != fibers.end()) return it->second;
        const int es = edgeString.at({p, q});
        const int vp = vertString[p], vq = vertString[q];
        const auto& E = D.value[es];
        std::vector<int> sObj(E.n_obj()), tObj(E.n_obj()), sMor(E.n_mor()), tMor(E.n_mor());
        for (int o = 0; o < E.n_obj(); ++o) {
            sObj[o] = D.restrict_obj(es, vp, o);
            tObj[o] = D.restrict_obj(es, vq, o);
        }
        for (int m = 0; m < E.n_mor(); ++m) {
            sMor[m] = D.restrict_mor(es, vp, m);
            tMor[m] = D.restrict_mor(es, vq, m);
        }
        auto F = iso_comma_fiber(E, D.value[vp], D.value[vq], sObj, sMor, tObj, tMor, x, y);
        return fibers.emplace(key, std::move(F)).first->second;
    }

    SegalLift segal_lift(int p, int q, int r, int e1, int e2, int theta) {
        const int ts = tripleString.at({p, q, r});
        const int epq = edgeString.at({p, q});
        const int eqr = edgeString.at({q, r});
        const int vq = vertString[q];
        const auto& S = D.value[ts];
        const auto& Epq = D.value[epq];
        const auto& Eqr = D.value[eqr];
        const auto& V = D.value[vq];
        for (int E = 0; E < S.n_obj(); ++E) {
            const int r1 = D.restrict_obj(ts, epq, E);
            const int r2 = D.restrict_obj(ts, eqr, E);
            for (int v1 = 0; v1 < Epq.n_mor(); ++v1) {
                if (Epq.src[v1] != r1 || Epq.tgt[v1] != e1) continue;
                const int want = V.comp[theta][D.restrict_mor(epq, vq, v1)];
                for (int v2 = 0; v2 < Eqr.n_mor(); ++v2) {
                    if (Eqr.src[v2] != r2 || Eqr.tgt[v2] != e2) continue;
                    if (D.restrict_mor(eqr, vq, v2) != want) continue;
                    return {E, v1, v2};
                }
            }
        }
        throw DomainError("SegalLiftMissing", "no Segal section over a triple string");
    }
};

} // namespace

ReassembleInfo reassemble_info(const Decollage& D) {
    // structural preconditions are the caller's concern via validate_decollage;
    // reassembly itself recomputes what it needs and verifies the axioms of
    // the induced composition.
    Reassembler R(D);
    ReassembleInfo I;
    LayeredCat& L = I.layered;
    L.base = D.base;
    const int n = D.base.size();

    for (int p = 0; p < n; ++p) {
        const auto& V = D.value[R.vertString[p]];
        for (int o = 0; o < V.n_obj(); ++o) {
            I.objIdx[{p, o}] = L.cat.n_obj();
            I.obj.push_back({p, o});
            L.cat.objNames.push_back(D.base.elements[p] + ":" + V.objNames[o]);
            L.label.push_back(p);
        }
    }
    auto objOf = [&](int p, int o) { return I.objIdx.at({p, o}); };
    for (int p = 0; p < n; ++p) {
        const auto& V = D.value[R.vertString[p]];
        for (int m = 0; m < V.n_mor(); ++m) {
            I.stratIdx[{p, m}] = static_cast<int>(I.mor.size());
            L.cat.morNames.push_back(D.base.elements[p] + ":" + V.morNames[m]);
            L.cat.src.push_back(objOf(p, V.src[m]));
            L.cat.tgt.push_back(objOf(p, V.tgt[m]));
            I.mor.push_back({true, p, p, m, -1, -1, -1, {}});
        }
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!D.base.lt(p, q)) continue;
            const auto& Vp = D.value[R.vertString[p]];
            const auto& Vq = D.value[R.vertString[q]];
            for (int x = 0; x < Vp.n_obj(); ++x)
                for (int y = 0; y < Vq.n_obj(); ++y) {
                    const auto& F = R.fiber(p, q, x, y);
                    for (int c = 0; c < F.nComp; ++c) {
                        I.linkIdx[{p, q, x, y, c}] = static_cast<int>(I.mor.size());
                        L.cat.morNames.push_back(D.base.elements[p] + "<" + D.base.elements[q] +
                                                 ":" + std::to_string(x) + ">" + std::to_string(y) +
                                                 "#" + std::to_string(c));
                        L.cat.src.push_back(objOf(p, x));
                        L.cat.tgt.push_back(objOf(q, y));
                        IsoCommaFiber::Obj rep{};
                        for (size_t i = 0; i < F.objs.size(); ++i)
                            if (F.comp[i] == c) {
                                rep = F.objs[i];
                                break;
                            }
                        I.mor.push_back({false, p, q, -1, x, y, c, rep});
                    }
                }
        }
    L.cat.idOf.resize(L.cat.n_obj());
    for (int p = 0; p < n; ++p) {
        const auto& V = D.value[R.vertString[p]];
        for (int o = 0; o < V.n_obj(); ++o) L.cat.idOf[objOf(p, o)] = I.stratIdx.at({p, V.idOf[o]});
    }
    const int nM = static_cast<int>(I.mor.size());
    L.cat.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            const auto& MF = I.mor[f];
            const auto& MG = I.mor[g];
            if (L.cat.tgt[f] != L.cat.src[g]) continue;
            if (MF.strat && MG.strat) {
                const auto& V = D.value[R.vertString[MF.p]];
                L.cat.comp[g][f] = I.stratIdx.at({MF.p, V.comp[MG.m][MF.m]});
            } else if (MF.strat && !MG.strat) {
                // link o strat: transport the alpha side
                const auto& Vp = D.value[R.vertString[MG.p]];
                const auto& rep = MG.rep;
                const int minv = inverse_of(Vp, MF.m);
                if (minv < 0)
                    throw ValidationError("ReassemblyFailure",
                                          {"stratum value is not a groupoid"});
                const int alphaNew = Vp.comp[rep.alpha][minv];
                const auto& F = R.fiber(MG.p, MG.q, Vp.src[MF.m], MG.y);
                const int c = F.component_of(rep.e, alphaNew, rep.beta);
                if (c < 0) throw DomainError("InternalError", "fiber transport failed");
                L.cat.comp[g][f] = I.linkIdx.at({MG.p, MG.q, Vp.src[MF.m], MG.y, c});
            } else if (!MF.strat && MG.strat) {
                // strat o link: transport the beta side
                const auto& Vq = D.value[R.vertString[MF.q]];
                const auto& rep = MF.rep;
                const int betaNew = Vq.comp[MG.m][rep.beta];
                const auto& F = R.fiber(MF.p, MF.q, MF.x, Vq.tgt[MG.m]);
                const int c = F.component_of(rep.e, rep.alpha, betaNew);
                if (c < 0) throw DomainError("InternalError", "fiber transport failed");
                L.cat.comp[g][f] = I.linkIdx.at({MF.p, MF.q, MF.x, Vq.tgt[MG.m], c});
            } else {
                // link o link through the Segal section of the triple string
                const int p = MF.p, q = MF.q, r = MG.q;
                const auto& rep1 = MF.rep;
                const auto& rep2 = MG.rep;
                const auto& Vq = D.value[R.vertString[q]];
                const int ainv = inverse_of(Vq, rep2.alpha);
                if (ainv < 0)
                    throw ValidationError("ReassemblyFailure",
                                          {"stratum value is not a groupoid"});
                const int theta = Vq.comp[ainv][rep1.beta];
                SegalLift lift = R.segal_lift(p, q, r, rep1.e, rep2.e, theta);
                const int ts = R.tripleString.at({p, q, r});
                const int epq = R.edgeString.at({p, q});
                const int eqr = R.edgeString.at({q, r});
                const int epr = R.edgeString.at({p, r});
                const int vp = R.vertString[p], vr = R.vertString[r];
                const auto& Vp = D.value[vp];
                const auto& Vr = D.value[vr];
                const int ePR = D.restrict_obj(ts, epr, lift.E);
                // r_p(r_pq E) = r_p(r_pr E) by functoriality, so these legs
                // start at the restriction of ePR
                const int alpha = Vp.comp[rep1.alpha][D.restrict_mor(epq, vp, lift.v1)];
                const int beta = Vr.comp[rep2.beta][D.restrict_mor(eqr, vr, lift.v2)];
                const auto& F = R.fiber(p, r, MF.x, MG.y);
                const int c = F.component_of(ePR, alpha, beta);
                if (c < 0) throw DomainError("InternalError", "composite not found in fiber");
                L.cat.comp[g][f] = I.linkIdx.at({p, r, MF.x, MG.y, c});
            }
        }
    auto rep = validate_category(L.cat);
    if (!rep.empty()) {
        for (const auto& line : rep)
            if (line.find("associativity") != std::string::npos)
                throw DomainError("AssociativityFailure", line);
        throw ValidationError("ReassemblyFailure", rep);
    }
    auto lrep = validate_layered(L);
    if (!lrep.empty()) throw ValidationError("ReassemblyFailure", lrep);
    I.fibers = std::move(R.fibers);
    return I;
}

LayeredCat reassemble(const Decollage& D) { return reassemble_info(D).layered; }

namespace {

struct ChainObj {
    std::vector<int> objs; // k+1 objects of the total category
    std::vector<int> mors; // k connecting morphisms
    bool operator<(const ChainObj& o) const {
        if (objs != o.objs) return objs < o.objs;
        return mors < o.mors;
    }
    bool operator==(const ChainObj& o) const { return objs == o.objs && mors == o.mors; }
};

} // namespace

Decollage nerve(const LayeredCat& L) {
    Decollage D;
    D.base = L.base;
    D.sd = subdivision(L.base);
    const int nS = static_cast<int>(D.sd.strings.size());
    std::vector<std::vector<ChainObj>> chains(nS);
    std::vector<std::map<ChainObj, int>> chainIdx(nS);
    // enumerate section chains per string, in canonical order
    for (int s = 0; s < nS; ++s) {
        const auto& str = D.sd.strings[s];
        const int k = static_cast<int>(str.size());
        ChainObj cur;
        auto rec = [&](auto&& self, int level) -> void {
            if (level == k) {
                chainIdx[s][cur] = static_cast<int>(chains[s].size());
                chains[s].push_back(cur);
                return;
            }
            if (level == 0) {
                for (int x = 0; x < L.cat.n_obj(); ++x) {
                    if (L.label[x] != str[0]) continue;
                    cur.objs.push_back(x);
                    self(self, 1);
                    cur.objs.pop_back();
                }
                return;
            }
            for (int m = 0; m < L.cat.n_mor(); ++m) {
                if (L.cat.src[m] != cur.objs.back()) continue;
                if (L.label[L.cat.tgt[m]] != str[level]) continue;
                cur.objs.push_back(L.cat.tgt[m]);
                cur.mors.push_back(m);
                self(self, level + 1);
                cur.objs.pop_back();
                cur.mors.pop_back();
            }
        };
        rec(rec, 0);
    }
    // build each value groupoid: morphisms are levelwise strata isos with
    // commuting ladders
    std::vector<std::map<std::tuple<int, int, std::vector<int>>, int>> morIdx(nS);
    D.value.resize(nS);
    for (int s = 0; s < nS; ++s) {
        FinCat& V = D.value[s];
        const auto& str = D.sd.strings[s];
        const int k = static_cast<int>(str.size());
        for (const auto& ch : chains[s]) {
            std::string name = "<";
            for (size_t i = 0; i < ch.objs.size(); ++i) {
                if (i) name += "|";
                name += L.cat.objNames[ch.objs[i]];
            }
            name += ">";
            V.objNames.push_back(name);
        }
        struct MorRec {
            int from, to;
            std::vector<int> u;
        };
        std::vector<MorRec> recs;
        for (int a = 0; a < static_cast<int>(chains[s].size()); ++a)
            for (int b = 0; b < static_cast<int>(chains[s].size()); ++b) {
                const auto& A = chains[s][a];
                const auto& B = chains[s][b];
                std::vector<int> u(k, -1);
                auto rec = [&](auto&& self, int level) -> void {
                    if (level == k) {
                        morIdx[s][{a, b, u}] = static_cast<int>(recs.size());
                        recs.push_back({a, b, u});
                        return;
                    }
                    for (int m = 0; m < L.cat.n_mor(); ++m) {
                        if (L.cat.src[m] != A.objs[level] || L.cat.tgt[m] != B.objs[level]) continue;
                        if (L.label[A.objs[level]] != L.label[B.objs[level]]) continue;
                        // stratum morphism (conservativity makes it an iso)
                        if (level > 0) {
                            if (L.cat.comp[m][A.mors[level - 1]] !=
                                L.cat.comp[B.mors[level - 1]][u[level - 1]])
                                continue;
                        }
                        u[level] = m;
                        self(self, level + 1);
                    }
                };
                rec(rec, 0);
            }
        for (const auto& r : recs) {
            std::string name = "{";
            for (size_t i = 0; i < r.u.size(); ++i) {
                if (i) name += "|";
                name += L.cat.morNames[r.u[i]];
            }
            name += "}@" + std::to_string(r.from) + ">" + std::to_string(r.to);
            V.morNames.push_back(name);
            V.src.push_back(r.from);
            V.tgt.push_back(r.to);
        }
        V.idOf.resize(V.n_obj());
        for (int a = 0; a < V.n_obj(); ++a) {
            std::vector<int> u;
            for (int x : chains[s][a].objs) u.push_back(L.cat.idOf[x]);
            V.idOf[a] = morIdx[s].at({a, a, u});
        }
        const int nM = V.n_mor();
        V.comp.assign(nM, std::vector<int>(nM, -1));
        for (int g = 0; g < nM; ++g)
            for (int f = 0; f < nM; ++f) {
                if (recs[f].to != recs[g].from) continue;
                std::vector<int> u(k);
                for (int i = 0; i < k; ++i) u[i] = L.cat.comp[recs[g].u[i]][recs[f].u[i]];
                V.comp[g][f] = morIdx[s].at({recs[f].from, recs[g].to, u});
            }
    }
    // restrictions: subselect objects, compose through dropped levels
    for (int a = 0; a < nS; ++a)
        for (int b = 0; b < nS; ++b) {
            if (a == b || !string_contained(D.sd.strings[b], D.sd.strings[a])) continue;
            const auto& SA = D.sd.strings[a];
            const auto& SB = D.sd.strings[b];
            std::vector<int> pos;
            for (int e : SB)
                pos.push_back(static_cast<int>(std::find(SA.begin(), SA.end(), e) - SA.begin()));
            FunctorData F;
            for (const auto& ch : chains[a]) {
                ChainObj sub;
                for (size_t i = 0; i < pos.size(); ++i) {
                    sub.objs.push_back(ch.objs[pos[i]]);
                    if (i > 0) {
                        int m = L.cat.idOf[ch.objs[pos[i - 1]]];
                        for (int lv = pos[i - 1]; lv < pos[i]; ++lv) m = L.cat.comp[ch.mors[lv]][m];
                        sub.mors.push_back(m);
                    }
                }
                F.objMap.push_back(chainIdx[b].at(sub));
            }
            F.morMap.assign(D.value[a].n_mor(), -1);
            for (const auto& [key, idx] : morIdx[a]) {
                const auto& [from, to, u] = key;
                std::vector<int> usub;
                for (int p : pos) usub.push_back(u[p]);
                F.morMap[idx] = morIdx[b].at({F.objMap[from], F.objMap[to], usub});
            }
            D.restr[{a, b}] = std::move(F);
        }
    return D;
}

Decollage group_decollage(const FinPoset& P, const std::vector<FinGroup>& pointGroups,
                          const std::vector<EdgeGroupData>& edges) {
    if (poset_height(P) > 1)
        throw DomainError("HeightExceeded", "group decollages require a base without 3-chains");
    if (static_cast<int>(pointGroups.size()) != P.size())
        throw DomainError("BadInput", "one point group per base element required");
    Decollage D;
    D.base = P;
    D.sd = subdivision(P);
    const int nS = static_cast<int>(D.sd.strings.size());
    D.value.resize(nS);
    std::map<std::pair<int, int>, const EdgeGroupData*> edgeOf;
    for (const auto& e : edges) {
        if (!P.lt(e.p, e.q)) throw DomainError("BadInput", "edge data on a non-relation");
        edgeOf[{e.p, e.q}] = &e;
    }
    for (int s = 0; s < nS; ++s) {
        const auto& str = D.sd.strings[s];
        if (str.size() == 1)
            D.value[s] = b_group(pointGroups[str[0]], P.elements[str[0]]);
        else {
            auto it = edgeOf.find({str[0], str[1]});
            if (it == edgeOf.end())
                throw DomainError("BadInput",
                                  "missing edge group for " + P.elements[str[0]] + " < " +
                                      P.elements[str[1]]);
            D.value[s] = b_group(it->second->group,
                                 P.elements[str[0]] + "<" + P.elements[str[1]]);
        }
    }
    for (int s = 0; s < nS; ++s) {
        const auto& str = D.sd.strings[s];
        if (str.size() != 2) continue;
        const auto* e = edgeOf.at({str[0], str[1]});
        FunctorData toP, toQ;
        toP.objMap = {0};
        toQ.objMap = {0};
        toP.morMap = e->toP.elemImages;
        toQ.morMap = e->toQ.elemImages;
        D.restr[{s, D.sd.index_of({str[0]})}] = std::move(toP);
        D.restr[{s, D.sd.index_of({str[1]})}] = std::move(toQ);
    }
    return D;
}

} // namespace stratcat
