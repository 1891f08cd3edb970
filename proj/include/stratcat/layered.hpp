#ifndef STRATCAT_LAYERED_HPP
#define STRATCAT_LAYERED_HPP

#include <optional>
#include <string>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/poset.hpp"

namespace stratcat {

// Finite category with a conservative functor to a finite poset. The functor
// is determined by the object labels; every morphism x -> y is carried to
// label[x] <= label[y].
struct LayeredCat {
    FinCat cat;
    FinPoset base;
    std::vector<int> label; // object -> base element

    int label_of(int obj) const { return label[obj]; }
};

// Category presented by generators and relations, with a marked class of
// formally inverted generators. Localizations of finite categories need not
// be finite, so coarsenings are returned at this level.
struct PresCat {
    std::vector<std::string> objNames;
    bool hasBase = false;
    FinPoset base;
    std::vector<int> objLabel; // into base when hasBase

    std::vector<std::string> genNames;
    std::vector<int> genSrc, genTgt;
    struct Relation {
        std::vector<int> lhs, rhs; // words in diagram order (first applied first)
    };
    std::vector<Relation> relations;
    std::vector<char> inverted; // per generator

    int n_obj() const { return static_cast<int>(objNames.size()); }
    int n_gen() const { return static_cast<int>(genNames.size()); }
};

std::vector<std::string> validate_pres_cat(const PresCat& P);

LayeredCat poset_over_itself(const FinPoset& X);
Functor strat_functor(const LayeredCat& L); // to cat_from_poset(base)

// Empty iff functoriality holds and every morphism over an identity of the
// base has a two-sided inverse over the same identity.
std::vector<std::string> validate_layered(const LayeredCat& L);

struct Stratum {
    SubCat sub; // groupoid over the chosen point
    int point;
};
Stratum stratum(const LayeredCat& L, int p);

// Link from the p-th to the q-th stratum: objects are morphisms lying over
// p <= q, morphisms are commuting squares of strata isos. For p == q the
// link is the stratum itself with the diagonal (s, t).
struct Link {
    FinCat groupoid;
    Stratum stratP, stratQ;
    Functor s, t;            // groupoid -> strata
    std::vector<int> objMor; // per link object: the underlying morphism of the
                             // total category (identity morphisms when p == q)
};
Link link(const LayeredCat& L, int p, int q);

// pi0 of the iso-comma fiber of (s, t) over a pair of stratum objects; in
// bijection with Hom(x, y) whenever (s, t) is faithful.
IsoCommaFiber hom_fiber(const Link& lk, int xInP, int yInQ);
int hom_fiber_size(const Link& lk, int xInP, int yInQ);

struct H0Result {
    FinPoset poset;
    std::vector<int> classOf; // object -> h0 element
    Functor quotient;         // cat -> cat_from_poset(poset)
};
H0Result h0(const LayeredCat& L);

struct TruncationReport {
    bool isPosetal = false;
    bool is1Truncated = true; // automatic for finite input
    bool isPiFinite = true;   // automatic for finite input
    int maxHomFiber = 0;
    std::string details;
};
TruncationReport truncation_report(const LayeredCat& L);

LayeredCat pullback_layered(const LayeredCat& L, const MonotoneMap& g); // g: Q -> base

// Presentation of the coarsening along f: base -> Q; generators are the
// non-identity morphisms, relations record the whole composition table, and
// the generators sent to identities of Q are marked inverted.
PresCat coarsen(const LayeredCat& L, const MonotoneMap& f);
PresCat exit_path_of_stratified_poset(const FinPoset& X, const MonotoneMap& s);

// Rebuilds a finite category from a presentation whose relations determine
// every composite of two generators (e.g. any output of coarsen). The
// inverted set must be empty.
FinCat realize_pres_cat(const PresCat& P);

// Equivalence with a base-preserving witness: objects may only map to
// objects with the same label (bases must agree elementwise).
std::optional<Equivalence> are_equivalent_layered(const LayeredCat& A, const LayeredCat& B,
                                                  long long cap = 4000000);

} // namespace stratcat

#endif
