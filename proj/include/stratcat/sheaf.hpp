#ifndef STRATCAT_SHEAF_HPP
#define STRATCAT_SHEAF_HPP

#include <string>
#include <utility>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/layered.hpp"
#include "stratcat/poset.hpp"

namespace stratcat {

// Finite-set-valued functor on a finite category. Sets are 0..size-1 per
// object; map[m] sends elements of the source set to the target set.
struct SetFunctor {
    std::vector<int> size;
    std::vector<std::vector<int>> map;
};

// Functor on a PresCat: sizes per object, one map per generator.
struct PresSetFunctor {
    std::vector<int> size;
    std::vector<std::vector<int>> genMap;
};

std::vector<std::string> validate_set_functor(const FinCat& C, const SetFunctor& F);
std::vector<std::string> validate_pres_set_functor(const PresCat& P, const PresSetFunctor& F);

// Compatible families (x_c) with F(phi)(x_c) = x_{c'}, in lexicographic order.
std::vector<std::vector<int>> limit_of_set_functor(const FinCat& C, const SetFunctor& F);

// Pointwise right Kan extension along J: U -> C, with the comma shapes and
// the family decomposition of each value retained for later gluing.
struct RKEResult {
    SetFunctor F;                                        // on C
    std::vector<std::vector<std::pair<int, int>>> shape; // per c: comma objects (u, phi in C)
    std::vector<std::vector<std::vector<int>>> families; // per c, per element: the family
    int family_index(int c, const std::vector<int>& family) const;
};
RKEResult right_kan_extension(const FinCat& U, const SetFunctor& F, const FinCat& C,
                              const Functor& J);

// True iff F inverts every morphism lying inside a single stratum fiber of
// s: X -> P. F lives on cat_from_poset(X).
bool is_constructible(const FinPoset& X, const MonotoneMap& s, const SetFunctor& F);

// Natural transformations F -> G by componentwise maps (bijections when
// onlyIso); lexicographic order.
std::vector<std::vector<std::vector<int>>> nat_transformations(const FinCat& C,
                                                               const SetFunctor& F,
                                                               const SetFunctor& G, bool onlyIso,
                                                               long long cap = 1000000);
bool exists_natural_iso_set(const FinCat& C, const SetFunctor& F, const SetFunctor& G);

// All set functors with values of size <= k, lexicographic.
std::vector<SetFunctor> enumerate_set_functors(const FinCat& C, int k, long long cap = 20000000);

struct FunctorClasses {
    long long count = 0;
    std::vector<SetFunctor> reps; // canonical representative per class
};
FunctorClasses count_functor_iso_classes(const FinCat& C, int k, long long cap = 20000000);

struct PresFunctorClasses {
    long long count = 0;
    std::vector<PresSetFunctor> reps;
};
PresFunctorClasses count_functor_iso_classes(const PresCat& P, int k, long long cap = 20000000);

// Recollement of sheaves on a layered category along a sieve of the base:
// the triple (F|_Z, F|_U, glue: F|_Z -> i* J_* F|_U), the sheaf rebuilt from
// the triple alone, and the comparison with the input. Optionally counts
// iso classes of sheaves and of triples.
struct RecollementResult {
    SubCat zPart, uPart;
    SetFunctor fz, fu;
    std::vector<std::vector<int>> glue; // per z-object in zPart order: element -> family index
    SetFunctor reassembled;             // on the whole category
    bool ok = false;
    long long sheafClasses = -1, tripleClasses = -1;
};
RecollementResult recollement_round_trip(const LayeredCat& L, const std::vector<char>& sieve,
                                         const SetFunctor& F, bool withCounts = false, int k = 2);

// Beck-Chevalley instance for the gluing square of a sieve: compares
// i*(J_* F) with p_*(q* F) over the comma Z-down-U via the canonical
// comparison, computed componentwise.
struct BeckChevalleyResult {
    bool ok = false;
    SetFunctor lhs, rhs;                    // both on the Z part
    std::vector<std::vector<int>> witness;  // per z-object: the comparison map
};
BeckChevalleyResult beck_chevalley_check(const LayeredCat& L, const std::vector<char>& sieve,
                                         const SetFunctor& FonU);

// Side A counts constructible sheaf classes directly on X; side B counts
// set-functor classes of the exit-path presentation of (X, s).
struct ExodromyResult {
    bool ok = false;
    long long sideA = 0, sideB = 0;
};
ExodromyResult exodromy_check(const FinPoset& X, const MonotoneMap& s, int k,
                              long long cap = 20000000);

} // namespace stratcat

#endif
