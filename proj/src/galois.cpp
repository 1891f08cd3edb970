#include "stratcat/galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stratcat {

std::vector<std::string> validate_curve_spec(const CurveSpec& S) {
    std::vector<std::string> rep;
    if (S.genus < 0) rep.push_back("genus must be nonnegative");
    if (S.punctures < 2) rep.push_back("at least two marked points required");
    if (static_cast<int>(S.images.size()) != 2 * S.genus + S.punctures - 1)
        rep.push_back("expected " + std::to_string(2 * S.genus + S.punctures - 1) +
                      " generator images");
    for (const auto& p : S.images)
        if (static_cast<int>(p.size()) != S.group.degree())
            rep.push_back("image degree mismatch");
    return rep;
}

CurveGammas curve_gammas(const CurveSpec& S) {
    auto rep = validate_curve_spec(S);
    if (!rep.empty()) throw ValidationError("InvalidCurveSpec", rep);
    CurveGammas G;
    std::vector<Perm> gens = S.images;
    if (gens.empty()) gens.push_back(perm_identity(S.group.degree()));
    G.imageGroup = FinGroup(S.group.degree(), gens);
    const int g = S.genus, n = S.punctures;
    auto idx = [&](const Perm& p) { return G.imageGroup.index_of(p); };
    auto mul = [&](int a, int b) { return G.imageGroup.mult(a, b); };
    auto inv = [&](int a) { return G.imageGroup.inverse(a); };
    // gamma_0 = ([a_1,b_1] ... [a_g,b_g]) (c_1 ... c_{n-1})^{-1}
    int w = 0;
    for (int j = 0; j < g; ++j) {
        const int a = idx(S.images[2 * j]), b = idx(S.images[2 * j + 1]);
        const int comm = mul(mul(a, b), mul(inv(a), inv(b)));
        w = mul(w, comm);
    }
    int cprod = 0;
    for (int i = 0; i < n - 1; ++i) cprod = mul(cprod, idx(S.images[2 * g + i]));
    G.gamma.push_back(mul(w, inv(cprod)));
    for (int i = 1; i < n; ++i) G.gamma.push_back(idx(S.images[2 * g + i - 1]));
    return G;
}

namespace {

Decollage two_stratum_decollage(const FinGroup& Gz, const FinGroup& Gu, const FinGroup& D,
                                const GroupHom& toZ, const GroupHom& toU) {
    FinPoset base = chain_poset(2);
    std::vector<FinGroup> pts = {Gz, Gu};
    EdgeGroupData e{0, 1, D, toZ, toU};
    return group_decollage(base, pts, {e});
}

Decollage curve_decollage(const CurveSpec& S, CurveGammas& G) {
    G = curve_gammas(S);
    const int n = S.punctures;
    FinPoset base = x_n_poset(n);
    std::vector<FinGroup> pts;
    for (int i = 0; i < n; ++i) pts.push_back(trivial_group());
    pts.push_back(G.imageGroup);
    std::vector<EdgeGroupData> edges;
    for (int i = 0; i < n; ++i) {
        FinGroup link = generated_subgroup(G.imageGroup, {G.gamma[i]});
        GroupHom toP = make_group_hom(link, trivial_group(), std::vector<int>(link.n_gens(), 0));
        std::vector<int> incl;
        for (int gi = 0; gi < link.n_gens(); ++gi)
            incl.push_back(G.imageGroup.index_of(link.generator(gi)));
        GroupHom toQ = make_group_hom(link, G.imageGroup, incl);
        edges.push_back({i, n, link, toP, toQ});
    }
    return group_decollage(base, pts, edges);
}

} // namespace

LayeredCat build_two_stratum(const FinGroup& Gz, const FinGroup& Gu, const FinGroup& D,
                             const GroupHom& toZ, const GroupHom& toU) {
    Decollage dec = two_stratum_decollage(Gz, Gu, D, toZ, toU);
    auto rep = validate_decollage(dec);
    if (!rep.empty()) throw ValidationError("InvalidDecollage", rep);
    return reassemble(dec);
}

LayeredCat build_curve_level(const CurveSpec& S) {
    CurveGammas G;
    Decollage dec = curve_decollage(S, G);
    auto rep = validate_decollage(dec);
    if (!rep.empty()) throw ValidationError("InvalidDecollage", rep);
    return reassemble(dec);
}

GroupPresentation curve_presentation(int g, int n) {
    if (g < 0 || n < 2) throw DomainError("BadInput", "need g >= 0 and n >= 2");
    GroupPresentation P;
    for (int j = 1; j <= g; ++j) {
        P.generators.push_back("a" + std::to_string(j));
        P.generators.push_back("b" + std::to_string(j));
    }
    for (int i = 1; i <= n - 1; ++i) P.generators.push_back("c" + std::to_string(i));
    auto a = [&](int j) { return 2 * (j - 1) + 1; }; // 1-based letters
    auto b = [&](int j) { return 2 * (j - 1) + 2; };
    auto c = [&](int i) { return 2 * g + i; };
    std::vector<int> gamma0;
    for (int j = 1; j <= g; ++j) {
        gamma0.push_back(a(j));
        gamma0.push_back(b(j));
        gamma0.push_back(-a(j));
        gamma0.push_back(-b(j));
    }
    for (int i = n - 1; i >= 1; --i) gamma0.push_back(-c(i));
    P.relators.push_back(gamma0);
    for (int i = 1; i <= n - 1; ++i) P.relators.push_back({c(i)});
    return P;
}

MonotoneMap curve_base_bond(int n) {
    MonotoneMap f;
    f.source = x_n_poset(n + 1);
    f.target = x_n_poset(n);
    for (int i = 0; i < n; ++i) f.map.push_back(i);
    f.map.push_back(n); // point n -> inf
    f.map.push_back(n); // inf -> inf
    return f;
}

PosetTower curve_base_tower(int nLow, int nHigh) {
    if (nLow < 2 || nHigh < nLow) throw DomainError("BadInput", "need 2 <= nLow <= nHigh");
    PosetTower T;
    T.index = chain_poset(nHigh - nLow + 1);
    for (int n = nLow; n <= nHigh; ++n) T.nodes.push_back(x_n_poset(n));
    for (int i = 0; i < T.index.size(); ++i)
        for (int j = i + 1; j < T.index.size(); ++j) {
            MonotoneMap f;
            f.source = T.nodes[j];
            f.target = T.nodes[i];
            const int nj = nLow + j, ni = nLow + i;
            for (int x = 0; x <= nj; ++x) f.map.push_back(std::min(x, ni));
            T.bonds[{i, j}] = std::move(f);
        }
    return T;
}

namespace {

// image of a Gim_from element under a quotient compatible with the curve
// generators: evaluate the element's generator word in the target
std::vector<int> image_group_map(const FinGroup& from, const FinGroup& to,
                                 const std::vector<int>& genImages) {
    GroupHom h = make_group_hom(from, to, genImages);
    return h.elemImages;
}

} // namespace

Functor curve_quotient_functor(const CurveSpec& from, const CurveSpec& to, const GroupHom& q) {
    if (from.genus != to.genus || from.punctures != to.punctures)
        throw DomainError("BadInput", "curve specs must share (g, n)");
    CurveGammas gFrom, gTo;
    Decollage decA = curve_decollage(from, gFrom);
    Decollage decB = curve_decollage(to, gTo);
    // The image groups are generated by the images; q must carry generators
    // to generators.
    std::vector<int> genImgs;
    for (size_t i = 0; i < from.images.size(); ++i) {
        const Perm img = to.images[i];
        const int viaQ = q.elemImages[q.source.index_of(from.images[i])];
        if (q.target.element(viaQ) != img)
            throw DomainError("BadInput", "quotient does not carry images to images");
        genImgs.push_back(gTo.imageGroup.index_of(img));
    }
    if (from.images.empty()) genImgs.push_back(0);
    std::vector<int> elemMap = image_group_map(gFrom.imageGroup, gTo.imageGroup, genImgs);
    ReassembleInfo A = reassemble_info(decA);
    ReassembleInfo B = reassemble_info(decB);
    const int n = from.punctures;
    Functor F;
    F.source = A.layered.cat;
    F.target = B.layered.cat;
    for (const auto& o : A.obj) F.objMap.push_back(B.objIdx.at({o.p, o.o}));
    for (const auto& m : A.mor) {
        if (m.strat) {
            // strata: trivial strata carry only identities; the infinity
            // stratum is B(Gim) and maps by the element map
            const int img = (m.p == n) ? elemMap[m.m] : 0;
            F.morMap.push_back(B.stratIdx.at({m.p, img}));
        } else {
            // link class: transport the canonical representative; edge values
            // are one-object groupoids B<gamma_i>, alpha lives in a trivial
            // stratum, beta in B(Gim)
            const int beta2 = elemMap[m.rep.beta];
            const auto& fib = B.fibers.at({m.p, m.q, m.x, m.y});
            // the B-side link subgroup may differ; component lookup handles it
            int c2 = fib.component_of(m.rep.e, m.rep.alpha, beta2);
            if (c2 < 0) throw DomainError("InternalError", "transported class not found");
            F.morMap.push_back(B.linkIdx.at({m.p, m.q, m.x, m.y, c2}));
        }
    }
    auto rep = validate_functor_maps(F.source, F.target, F.objMap, F.morMap);
    if (!rep.empty()) throw ValidationError("InvalidFunctor", rep);
    return F;
}

Functor curve_level_bond(const CurveSpec& high, const CurveSpec& low, const GroupHom& q) {
    if (high.genus != low.genus || high.punctures != low.punctures + 1)
        throw DomainError("BadInput", "bond needs one more marked point upstairs");
    CurveGammas gHigh, gLow;
    Decollage decA = curve_decollage(high, gHigh);
    Decollage decB = curve_decollage(low, gLow);
    const int n = low.punctures;
    // q must carry shared images to images and kill c_n
    std::vector<int> genImgs;
    for (size_t i = 0; i < high.images.size(); ++i) {
        const int viaQ = q.elemImages[q.source.index_of(high.images[i])];
        const Perm img = q.target.element(viaQ);
        if (i + 1 == high.images.size()) {
            if (img != perm_identity(q.target.degree()))
                throw DomainError("BadInput", "the bond must kill the last boundary generator");
        } else if (img != low.images[i])
            throw DomainError("BadInput", "quotient does not carry images to images");
        genImgs.push_back(gLow.imageGroup.index_of(img));
    }
    if (high.images.empty()) genImgs.push_back(0);
    std::vector<int> elemMap = image_group_map(gHigh.imageGroup, gLow.imageGroup, genImgs);
    ReassembleInfo A = reassemble_info(decA);
    ReassembleInfo B = reassemble_info(decB);
    Functor F;
    F.source = A.layered.cat;
    F.target = B.layered.cat;
    // base map: i -> i for i < n, the extra point n -> inf, inf -> inf
    auto baseImg = [&](int p) { return p < n ? p : n; };
    for (const auto& o : A.obj) F.objMap.push_back(B.objIdx.at({baseImg(o.p), 0}));
    for (const auto& m : A.mor) {
        if (m.strat) {
            const int img = (m.p == high.punctures) ? elemMap[m.m] : 0;
            F.morMap.push_back(B.stratIdx.at({baseImg(m.p), img}));
        } else if (m.p < n) {
            const int beta2 = elemMap[m.rep.beta];
            const auto& fib = B.fibers.at({m.p, n, m.x, m.y});
            int c2 = fib.component_of(m.rep.e, m.rep.alpha, beta2);
            if (c2 < 0) throw DomainError("InternalError", "transported class not found");
            F.morMap.push_back(B.linkIdx.at({m.p, n, m.x, m.y, c2}));
        } else {
            // the collapsed link Hom(x_n, inf): classes become automorphisms
            // of the infinity stratum downstairs (well defined since q kills
            // the boundary generator)
            F.morMap.push_back(B.stratIdx.at({n, elemMap[m.rep.beta]}));
        }
    }
    auto rep = validate_functor_maps(F.source, F.target, F.objMap, F.morMap);
    if (!rep.empty()) throw ValidationError("InvalidFunctor", rep);
    return F;
}

GalMorphismTags classify_gal_morphism(const LayeredCat& sub, const LayeredCat& amb,
                                      const Functor& F, const MonotoneMap& baseMap) {
    auto rep = validate_functor_maps(sub.cat, amb.cat, F.objMap, F.morMap);
    if (!rep.empty()) throw ValidationError("InvalidFunctor", rep);
    auto brep = validate_monotone(baseMap);
    if (!brep.empty()) throw ValidationError("InvalidMonotoneMap", brep);
    for (int x = 0; x < sub.cat.n_obj(); ++x)
        if (amb.label[F.objMap[x]] != baseMap.map[sub.label[x]])
            throw DomainError("NotBaseCompatible",
                              "labels do not commute with the base map at " + sub.cat.objNames[x]);
    GalMorphismTags T;
    H0Result hB = h0(amb);
    std::vector<char> image(hB.poset.size(), 0);
    for (int x = 0; x < sub.cat.n_obj(); ++x) image[hB.classOf[F.objMap[x]]] = 1;
    T.imageClass = classify_subposet(hB.poset, image);
    FibrationReport fib = classify_fibration(F);
    T.leftFibration = fib.left;
    T.rightFibration = fib.right;
    T.kanFibration = fib.kan;
    T.fiberSizes = fib.fiberSizes;
    T.finiteFibers = true;
    T.etaleLike = fib.left;
    T.integralLike = fib.right;
    T.finiteEtaleLike = fib.kan;
    T.radicialLike = true;
    for (int s : fib.fiberSizes)
        if (s > 1) T.radicialLike = false;
    std::string s = to_string(T.imageClass);
    if (T.finiteEtaleLike)
        s += " + kan fibration (finite-etale-like)";
    else if (T.etaleLike)
        s += " + left fibration (etale-like)";
    else if (T.integralLike)
        s += " + right fibration (integral-like)";
    else
        s += " + no fibration tag";
    if (T.radicialLike) s += " + radicial-like";
    T.summary = s;
    return T;
}

LocalizeResult localize_normalize(const LayeredCat& L, int x) {
    if (x < 0 || x >= L.cat.n_obj()) throw DomainError("UnknownObject", "object out of range");
    LocalizeResult R;
    auto build = [&](bool over) -> std::pair<LayeredCat, std::vector<int>> {
        SliceCat S = over ? slice_cat(L.cat, x) : coslice_cat(L.cat, x);
        LayeredCat out;
        out.cat = S.cat;
        const auto elems = over ? down_set(L.base, L.label[x]) : up_set(L.base, L.label[x]);
        out.base = induced_subposet(L.base, elems);
        std::vector<int> newBaseIdx(L.base.size(), -1);
        for (size_t i = 0; i < elems.size(); ++i) newBaseIdx[elems[i]] = static_cast<int>(i);
        for (int o = 0; o < S.cat.n_obj(); ++o) {
            const int underlying = over ? L.cat.src[S.objMor[o]] : L.cat.tgt[S.objMor[o]];
            out.label.push_back(newBaseIdx[L.label[underlying]]);
        }
        return {out, S.objMor};
    };
    auto [sl, slObj] = build(true);
    auto [co, coObj] = build(false);
    R.slice = std::move(sl);
    R.sliceObjMor = std::move(slObj);
    R.coslice = std::move(co);
    R.cosliceObjMor = std::move(coObj);
    R.weaklyInitial = true;
    R.weaklyTerminal = true;
    for (int y = 0; y < L.cat.n_obj(); ++y) {
        if (L.cat.hom(x, y).empty()) R.weaklyInitial = false;
        if (L.cat.hom(y, x).empty()) R.weaklyTerminal = false;
    }
    return R;
}

} // namespace stratcat
