#ifndef STRATCAT_CATEGORY_HPP
#define STRATCAT_CATEGORY_HPP

#include <optional>
#include <string>
#include <vector>

#include "stratcat/errors.hpp"
#include "stratcat/poset.hpp"

namespace stratcat {

// Finite category with an explicit, total composition table.
struct FinCat {
    std::vector<std::string> objNames;
    std::vector<std::string> morNames;
    std::vector<int> src, tgt;       // per morphism
    std::vector<int> idOf;           // object -> identity morphism
    std::vector<std::vector<int>> comp; // comp[g][f] = g after f; -1 when not composable

    int n_obj() const { return static_cast<int>(objNames.size()); }
    int n_mor() const { return static_cast<int>(src.size()); }
    bool is_identity(int m) const { return idOf[src[m]] == m; }
    int compose(int g, int f) const { return comp[g][f]; } // g o f, requires tgt[f] == src[g]
    std::vector<int> hom(int x, int y) const;
    int object_index(const std::string& name) const;
    int morphism_index(const std::string& name) const;
};

struct Functor {
    FinCat source;
    FinCat target;
    std::vector<int> objMap;
    std::vector<int> morMap;
};

std::vector<std::string> validate_category(const FinCat& C);
std::vector<std::string> validate_functor(const Functor& F);
// functor laws for raw maps between given categories (no copies)
std::vector<std::string> validate_functor_maps(const FinCat& C, const FinCat& D,
                                               const std::vector<int>& objMap,
                                               const std::vector<int>& morMap);

bool is_invertible(const FinCat& C, int m);
int inverse_of(const FinCat& C, int m); // -1 if none
bool is_groupoid(const FinCat& C);
// x ~ y when an invertible morphism x -> y exists
std::vector<int> iso_classes(const FinCat& C);

// Builders ------------------------------------------------------------------

FinCat point_cat();
FinCat discrete_cat(int n);
FinCat cat_from_poset(const FinPoset& P);
Functor identity_functor(const FinCat& C);
Functor compose_functors(const Functor& G, const Functor& F); // G o F
// functor induced by a monotone map on the poset categories
Functor functor_from_monotone(const MonotoneMap& f);

// Full subcategory on the listed objects, with the inclusion functor and the
// original indices of objects and morphisms.
struct SubCat {
    FinCat cat;
    std::vector<int> objOrig;
    std::vector<int> morOrig;
    Functor incl;
};
SubCat full_subcat(const FinCat& C, const std::vector<int>& objects);

// Oriented fibre product (comma category) of F: C -> E and G: D -> E.
// Objects are triples (c, d, beta: F(c) -> G(d)); morphisms are pairs
// (gamma, delta) with G(delta) o beta = beta' o F(gamma).
struct CommaCat {
    FinCat cat;
    Functor projLeft;  // to C
    Functor projRight; // to D
    // object decomposition: (c, d, beta)
    std::vector<int> objC, objD, objBeta;
};
CommaCat comma(const Functor& F, const Functor& G);

// Slice C/x and coslice x/C with their projections to C.
struct SliceCat {
    FinCat cat;
    std::vector<int> objMor; // object of the (co)slice -> morphism of C
    Functor proj;
};
SliceCat slice_cat(const FinCat& C, int x);
SliceCat coslice_cat(const FinCat& C, int x);

// Natural transformations / isomorphisms ------------------------------------

// components[x] in Hom_D(F(x), G(x)); checks naturality (and invertibility
// when iso = true).
bool is_natural_transformation(const FinCat& C, const FinCat& D, const std::vector<int>& objF,
                               const std::vector<int>& morF, const std::vector<int>& objG,
                               const std::vector<int>& morG, const std::vector<int>& components,
                               bool iso);
std::optional<std::vector<int>> find_natural_iso(const FinCat& C, const FinCat& D,
                                                 const std::vector<int>& objF,
                                                 const std::vector<int>& morF,
                                                 const std::vector<int>& objG,
                                                 const std::vector<int>& morG);

// Equivalence search ---------------------------------------------------------

struct Equivalence {
    Functor fwd;               // C -> D, fully faithful and essentially surjective
    Functor bwd;               // quasi-inverse D -> C
    std::vector<int> unit;     // per object x of C: iso x -> bwd(fwd(x))
    std::vector<int> counit;   // per object d of D: iso fwd(bwd(d)) -> d
};

// Exhaustive search for an equivalence C ~ D; the first witness in canonical
// order (object maps, then morphism maps) is returned. `cap` bounds the
// number of search nodes; hitting it raises CapExceeded, which is distinct
// from a definite "not equivalent".
// `objConstraint`, when nonempty, restricts objMap[x] to the listed targets.
std::optional<Equivalence> are_equivalent(const FinCat& C, const FinCat& D, long long cap = 4000000,
                                          const std::vector<std::vector<int>>& objConstraint = {});

// Fibration classification ---------------------------------------------------

struct FibrationReport {
    bool left = false;
    bool right = false;
    bool kan = false;
    std::vector<int> fiberSizes; // strict fiber object counts per target object
};

// Right iff every slice comparison C/x -> D/F(x) is an equivalence; left iff
// the dual holds on coslices; kan iff both. F must be an isofibration
// (DomainError "NotIsofibration" otherwise): strict fibers only match the
// intended classifiers on isofibrations.
FibrationReport classify_fibration(const Functor& F);

// Iso-comma fibre of a span A <-s- L -t-> B over (a, b): objects are triples
// (e, alpha: s(e) -> a, beta: t(e) -> b) with alpha, beta invertible;
// morphisms e -> e' must commute with the connecting isos. Components give
// hom sets at the 1-truncated level.
struct IsoCommaFiber {
    struct Obj {
        int e, alpha, beta;
    };
    std::vector<Obj> objs;
    std::vector<int> comp;   // component id per object
    int nComp = 0;
    int component_of(int e, int alpha, int beta) const;
};
IsoCommaFiber iso_comma_fiber(const FinCat& L, const FinCat& A, const FinCat& B,
                              const std::vector<int>& sObj, const std::vector<int>& sMor,
                              const std::vector<int>& tObj, const std::vector<int>& tMor, int a,
                              int b);

} // namespace stratcat

#endif
