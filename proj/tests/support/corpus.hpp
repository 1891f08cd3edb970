#ifndef STRATCAT_TESTS_CORPUS_HPP
#define STRATCAT_TESTS_CORPUS_HPP

#include <map>
#include <string>
#include <vector>

#include "stratcat/decollage.hpp"
#include "stratcat/galois.hpp"
#include "stratcat/group.hpp"
#include "stratcat/layered.hpp"
#include "stratcat/poset.hpp"

namespace stratcat::corpus {

// the 4-point circle model {a, b < u, v}
FinPoset pseudo_circle();

// all posets with exactly n elements, up to isomorphism (canonical order)
std::vector<FinPoset> all_posets_of_size(int n);
// sizes 0..nMax inclusive
std::vector<FinPoset> all_posets_up_to(int nMax);

struct DvrTriple {
    std::string name;
    FinGroup gz, gu, d;
    GroupHom toZ, toU;
};
std::vector<DvrTriple> dvr_triples();
LayeredCat dvr_cat(const DvrTriple& t);
// the (Z/2, S3, <(12)>) example
DvrTriple standard_dvr_triple();
LayeredCat standard_dvr();

// canonical curve data over Z/m: a_j, c_i map to the shift, b_j to the
// identity
CurveSpec cyclic_curve_spec(int g, int n, int m);
// g=1, n=2 over Z/5 with a -> 1, b -> 0, c1 -> 0
CurveSpec criterion7_spec();

// strict diagram of groupoids over a poset, glued cocartesian-style:
// Hom((p,x),(q,y)) = Hom_{F(q)}(F(p<=q)(x), y)
LayeredCat cocartesian_layered(const FinPoset& P, const std::vector<FinCat>& F,
                               const std::map<std::pair<int, int>, FunctorData>& maps);

// seeded generator over tree-shaped height-<=2 bases with small groupoid
// strata
std::vector<LayeredCat> random_layered_cats(int count, unsigned seed);

struct CorpusItem {
    std::string name;
    LayeredCat cat;
};
// posets <= 5 over themselves, three DVR triples, curve levels for
// (g,n) in {0,1} x {2,3} with quotients Z/2 and Z/5, and 10 seeded random
// layered categories
std::vector<CorpusItem> round_trip_corpus();

} // namespace stratcat::corpus

#endif
