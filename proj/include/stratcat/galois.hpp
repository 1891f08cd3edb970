#ifndef STRATCAT_GALOIS_HPP
#define STRATCAT_GALOIS_HPP

#include <string>
#include <vector>

#include "stratcat/decollage.hpp"
#include "stratcat/group.hpp"
#include "stratcat/homology.hpp"
#include "stratcat/layered.hpp"

namespace stratcat {

// Genus-g curve with n marked points at a finite quotient level: the images
// of a_1, b_1, ..., a_g, b_g, c_1, ..., c_{n-1} in a finite permutation
// group.
struct CurveSpec {
    int genus = 0;
    int punctures = 2;
    FinGroup group;
    std::vector<Perm> images; // 2*genus + punctures - 1 permutations
};
std::vector<std::string> validate_curve_spec(const CurveSpec& S);

// gamma_0 = ([a_1,b_1]...[a_g,b_g]) (c_1...c_{n-1})^{-1}, gamma_i = c_i;
// element indices in the image subgroup.
struct CurveGammas {
    FinGroup imageGroup;
    std::vector<int> gamma; // per i = 0..n-1
};
CurveGammas curve_gammas(const CurveSpec& S);

// Two-stratum category over [1] with strata B(Gz), B(Gu) and link group D.
LayeredCat build_two_stratum(const FinGroup& Gz, const FinGroup& Gu, const FinGroup& D,
                             const GroupHom& toZ, const GroupHom& toU);

// Curve-level category over X_n: point strata for the marked points, B(image
// group) at infinity, links generated by the gammas.
LayeredCat build_curve_level(const CurveSpec& S);

// Free generators a_j, b_j, c_i with the n boundary relators.
GroupPresentation curve_presentation(int g, int n);

// The bond X_{n+1} -> X_n of the curve base tower (collapse point n to inf).
MonotoneMap curve_base_bond(int n);
PosetTower curve_base_tower(int nLow, int nHigh);

// Functor between curve levels over the identity base, induced by a
// compatible quotient q: from.group -> to.group.
Functor curve_quotient_functor(const CurveSpec& from, const CurveSpec& to, const GroupHom& q);

// Functor over curve_base_bond(n): requires q to kill the image of c_n.
Functor curve_level_bond(const CurveSpec& high, const CurveSpec& low, const GroupHom& q);

struct GalMorphismTags {
    SubposetClass imageClass = SubposetClass::None; // of the h0 image
    bool leftFibration = false, rightFibration = false, kanFibration = false;
    bool finiteFibers = true;
    bool etaleLike = false;       // left fibration with finite fibers
    bool integralLike = false;    // right fibration
    bool finiteEtaleLike = false; // Kan fibration with finite fibers
    bool radicialLike = false;    // every fiber empty or a singleton
    std::vector<int> fiberSizes;
    std::string summary;
};
// Scheme-morphism dictionary tags for a base-compatible functor of layered
// categories. DomainError "NotBaseCompatible" when the labels do not commute
// with the base map.
GalMorphismTags classify_gal_morphism(const LayeredCat& sub, const LayeredCat& amb,
                                      const Functor& F, const MonotoneMap& baseMap);

struct LocalizeResult {
    LayeredCat coslice, slice;           // over the up-set / down-set of the label
    std::vector<int> cosliceObjMor, sliceObjMor; // object -> morphism of the input
    bool weaklyInitial = false, weaklyTerminal = false;
};
LocalizeResult localize_normalize(const LayeredCat& L, int x);

} // namespace stratcat

#endif
