#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratcat/homology.hpp"
#include "stratcat/layered.hpp"
#include "support/corpus.hpp"

using namespace stratcat;

namespace {

// pseudo-circle stratified over [1]: minimal points closed, maximal open
LayeredCat pseudo_circle_over_interval() {
    LayeredCat L;
    L.cat = cat_from_poset(corpus::pseudo_circle());
    L.base = chain_poset(2);
    L.label = {0, 0, 1, 1};
    return L;
}

FinCat idempotent_monoid() {
    FinCat C;
    C.objNames = {"*"};
    C.morNames = {"id", "e"};
    C.src = {0, 0};
    C.tgt = {0, 0};
    C.idOf = {0};
    C.comp = {{0, 1}, {1, 1}};
    return C;
}

LayeredCat over_point(const FinCat& C) {
    LayeredCat L;
    L.cat = C;
    L.base = chain_poset(1);
    L.label.assign(C.n_obj(), 0);
    return L;
}

} // namespace

TEST_CASE("conservativity validation") {
    CHECK_FALSE(validate_layered(over_point(idempotent_monoid())).empty());
    CHECK(validate_layered(over_point(b_group(cyclic_group(2)))).empty());
    CHECK(validate_layered(pseudo_circle_over_interval()).empty());
    // [1] over the point is not conservative: 0 <= 1 lies over the identity
    CHECK_FALSE(validate_layered(over_point(cat_from_poset(chain_poset(2)))).empty());
}

TEST_CASE("strata") {
    LayeredCat dvr = corpus::standard_dvr();
    Stratum s0 = stratum(dvr, 0);
    auto eq = are_equivalent(s0.sub.cat, b_group(cyclic_group(2)));
    CHECK(eq.has_value());
    Stratum s1 = stratum(dvr, 1);
    CHECK(are_equivalent(s1.sub.cat, b_group(symmetric_group(3))).has_value());

    LayeredCat pc = pseudo_circle_over_interval();
    Stratum t1 = stratum(pc, 1);
    CHECK(t1.sub.cat.n_obj() == 2);
    CHECK(t1.sub.cat.n_mor() == 2); // discrete

    // empty fiber gives the empty groupoid
    LayeredCat pcBig = pc;
    pcBig.base = chain_poset(3);
    Stratum t2 = stratum(pcBig, 2);
    CHECK(t2.sub.cat.n_obj() == 0);

    CHECK_THROWS_WITH_AS(stratum(pc, 7), doctest::Contains("UnknownPoint"), DomainError);
}

TEST_CASE("links and hom fibers") {
    LayeredCat dvr = corpus::standard_dvr();
    Link lk = link(dvr, 0, 1);
    CHECK(lk.groupoid.n_obj() == 6);
    CHECK(lk.groupoid.n_mor() == 72);
    // connected with automorphism group of order 2
    CHECK(iso_classes(lk.groupoid) == std::vector<int>(6, 0));
    CHECK(lk.groupoid.hom(0, 0).size() == 2);
    CHECK(hom_fiber_size(lk, 0, 0) == 6);

    // link(p, p) is the stratum with the diagonal
    Link diag = link(dvr, 1, 1);
    CHECK(diag.groupoid.n_mor() == stratum(dvr, 1).sub.cat.n_mor());

    LayeredCat pc = pseudo_circle_over_interval();
    Link lkpc = link(pc, 0, 1);
    CHECK(lkpc.groupoid.n_obj() == 4);
    CHECK(lkpc.groupoid.n_mor() == 4); // discrete

    CHECK_THROWS_WITH_AS(link(pc, 1, 0), doctest::Contains("NotComparable"), DomainError);
}

TEST_CASE("hom fiber sizes are invariant under base-preserving equivalence") {
    LayeredCat dvr = corpus::standard_dvr();
    LayeredCat dvr2 = reassemble(nerve(dvr));
    REQUIRE(are_equivalent_layered(dvr, dvr2).has_value());
    for (int p = 0; p <= 1; ++p)
        for (int q = p; q <= 1; ++q) {
            Link a = link(dvr, p, q);
            Link b = link(dvr2, p, q);
            std::vector<int> sa, sb;
            for (int x = 0; x < a.stratP.sub.cat.n_obj(); ++x)
                for (int y = 0; y < a.stratQ.sub.cat.n_obj(); ++y)
                    sa.push_back(hom_fiber_size(a, x, y));
            for (int x = 0; x < b.stratP.sub.cat.n_obj(); ++x)
                for (int y = 0; y < b.stratQ.sub.cat.n_obj(); ++y)
                    sb.push_back(hom_fiber_size(b, x, y));
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            CHECK(sa == sb);
        }
}

TEST_CASE("h0") {
    LayeredCat dvr = corpus::standard_dvr();
    CHECK(are_posets_isomorphic(h0(dvr).poset, chain_poset(2)));
    CHECK(validate_functor(h0(dvr).quotient).empty());

    LayeredCat curve = build_curve_level(corpus::criterion7_spec());
    CHECK(are_posets_isomorphic(h0(curve).poset, x_n_poset(2)));

    CHECK(are_posets_isomorphic(h0(over_point(b_group(symmetric_group(3)))).poset, chain_poset(1)));

    // idempotent: h0 of a poset over itself is itself
    for (const auto& P : corpus::all_posets_up_to(4))
        CHECK(are_posets_isomorphic(h0(poset_over_itself(P)).poset, P));
}

TEST_CASE("truncation report") {
    for (const auto& P : corpus::all_posets_up_to(3))
        CHECK(truncation_report(poset_over_itself(P)).isPosetal);
    TruncationReport dvrRep = truncation_report(corpus::standard_dvr());
    CHECK_FALSE(dvrRep.isPosetal);
    CHECK(dvrRep.maxHomFiber == 6);
    CHECK(dvrRep.is1Truncated);
    CHECK(dvrRep.isPiFinite);
    CHECK_FALSE(truncation_report(over_point(b_group(cyclic_group(2)))).isPosetal);
}

TEST_CASE("pullback") {
    LayeredCat dvr = corpus::standard_dvr();
    MonotoneMap id;
    id.source = dvr.base;
    id.target = dvr.base;
    id.map = {0, 1};
    LayeredCat back = pullback_layered(dvr, id);
    CHECK(are_equivalent_layered(dvr, back).has_value());

    MonotoneMap closedPt;
    closedPt.source = chain_poset(1);
    closedPt.target = dvr.base;
    closedPt.map = {0};
    LayeredCat fiber0 = pullback_layered(dvr, closedPt);
    CHECK(are_equivalent(fiber0.cat, b_group(cyclic_group(2))).has_value());

    // pullback along a composite agrees with iterated pullback
    LayeredCat pc = pseudo_circle_over_interval();
    MonotoneMap g1; // {0} -> [1]
    g1.source = chain_poset(1);
    g1.target = chain_poset(2);
    g1.map = {1};
    MonotoneMap g2; // two points -> {0}
    g2.source = antichain_poset(2);
    g2.target = chain_poset(1);
    g2.map = {0, 0};
    MonotoneMap g12;
    g12.source = g2.source;
    g12.target = g1.target;
    g12.map = {1, 1};
    LayeredCat twice = pullback_layered(pullback_layered(pc, g1), g2);
    LayeredCat once = pullback_layered(pc, g12);
    CHECK(are_equivalent_layered(twice, once).has_value());
}

TEST_CASE("curve-level pullback to a two-stratum piece keeps the link") {
    LayeredCat curve = build_curve_level(corpus::criterion7_spec());
    MonotoneMap incl; // {0 < inf} into X_2
    incl.source = chain_poset(2);
    incl.target = curve.base;
    incl.map = {0, 2};
    LayeredCat piece = pullback_layered(curve, incl);
    CHECK(validate_layered(piece).empty());
    Link a = link(curve, 0, 2);
    Link b = link(piece, 0, 1);
    CHECK(hom_fiber_size(a, 0, 0) == hom_fiber_size(b, 0, 0));
    CHECK(hom_fiber_size(b, 0, 0) == 5);
}

TEST_CASE("coarsen") {
    LayeredCat pc = pseudo_circle_over_interval();
    MonotoneMap id;
    id.source = pc.base;
    id.target = pc.base;
    id.map = {0, 1};
    PresCat sameP = coarsen(pc, id);
    CHECK(validate_pres_cat(sameP).empty());
    for (char inv : sameP.inverted) CHECK_FALSE(inv);

    MonotoneMap toPoint;
    toPoint.source = chain_poset(2);
    toPoint.target = chain_poset(1);
    toPoint.map = {0, 0};
    PresCat collapse = coarsen(poset_over_itself(chain_poset(2)), toPoint);
    CHECK(collapse.n_gen() == 1);
    CHECK(collapse.inverted[0]);
    CHECK(pres_cat_pi0(collapse) == 1);
    auto h1 = presentation_h1(collapse);
    CHECK(h1.betti == 0);
    CHECK(h1.torsion.empty());

    MonotoneMap pcToPoint;
    pcToPoint.source = pc.base;
    pcToPoint.target = chain_poset(1);
    pcToPoint.map = {0, 0};
    auto circleH1 = presentation_h1(coarsen(pc, pcToPoint));
    CHECK(circleH1.betti == 1);
    CHECK(circleH1.torsion.empty());
}

TEST_CASE("realizing a coarsening with nothing inverted reproduces the category") {
    for (const auto& P : corpus::all_posets_up_to(3)) {
        LayeredCat L = poset_over_itself(P);
        MonotoneMap id;
        id.source = P;
        id.target = P;
        id.map.resize(P.size());
        for (int i = 0; i < P.size(); ++i) id.map[i] = i;
        FinCat realized = realize_pres_cat(coarsen(L, id));
        CHECK(are_equivalent(realized, L.cat).has_value());
    }
    LayeredCat dvr = corpus::standard_dvr();
    MonotoneMap id;
    id.source = dvr.base;
    id.target = dvr.base;
    id.map = {0, 1};
    CHECK(are_equivalent(realize_pres_cat(coarsen(dvr, id)), dvr.cat).has_value());
}
