#ifndef STRATCAT_DECOLLAGE_HPP
#define STRATCAT_DECOLLAGE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/group.hpp"
#include "stratcat/layered.hpp"
#include "stratcat/poset.hpp"

namespace stratcat {

struct FunctorData {
    std::vector<int> objMap, morMap;
};

// Groupoid-valued presheaf on the string poset of the base, with chosen
// restriction functors for every string inclusion. Strict data: no coherence
// cells; functoriality and the Segal condition are validation requirements.
struct Decollage {
    FinPoset base;
    Subdivision sd;
    std::vector<FinCat> value;                         // per string (same order as sd.strings)
    std::map<std::pair<int, int>, FunctorData> restr;  // (from, to) with strings[to] strictly
                                                       // contained in strings[from]

    int string_index(const std::vector<int>& s) const { return sd.index_of(s); }
    int restrict_obj(int from, int to, int obj) const;
    int restrict_mor(int from, int to, int mor) const;
};

// Checks functoriality of the restrictions, faithfulness of edge (s, t)
// pairs (1-truncatedness), the Segal comparison into the iterated strict
// iso-comma fibre product for every string of length >= 3, and associativity
// of the induced reassembled composition.
std::vector<std::string> validate_decollage(const Decollage& D);

// The assignment sending a string to the groupoid of sections over it:
// objects are chains of morphisms lying over the string, morphisms are
// levelwise strata isos making the ladders commute. Restrictions forget and
// compose.
Decollage nerve(const LayeredCat& L);

// Inverse direction at desk scale: objects are the singleton-string objects,
// hom sets over p < q are the components of the iso-comma fibers of edge
// values, and composition lifts composable pairs through the canonical
// (least-index) Segal section of the triple string. Raises
// DomainError("AssociativityFailure") if the induced composition fails to be
// strictly associative; never repairs silently.
LayeredCat reassemble(const Decollage& D);

// Same construction with the provenance retained: which (p, o) each object
// came from, which stratum morphism or fiber component each morphism is, and
// the fiber structures themselves.
struct ReassembleInfo {
    LayeredCat layered;
    struct ObjInfo {
        int p, o;
    };
    struct MorInfo {
        bool strat;
        int p, q;                   // strata have p == q
        int m;                      // stratum morphism of value[{p}] when strat
        int x, y, c;                // link: value-object endpoints, component
        IsoCommaFiber::Obj rep;     // canonical representative when link
    };
    std::vector<ObjInfo> obj;
    std::vector<MorInfo> mor;
    std::map<std::pair<int, int>, int> objIdx;                 // (p, o)
    std::map<std::pair<int, int>, int> stratIdx;               // (p, m)
    std::map<std::tuple<int, int, int, int, int>, int> linkIdx; // (p, q, x, y, c)
    std::map<std::tuple<int, int, int, int>, IsoCommaFiber> fibers;
};
ReassembleInfo reassemble_info(const Decollage& D);

// Pattern of one-object groupoids over a height-1 base: B(G_p) on points,
// B(G_e) on edges, restrictions induced by the given homomorphisms.
struct EdgeGroupData {
    int p, q; // base elements with p < q
    FinGroup group;
    GroupHom toP, toQ; // from `group` to the point groups at p and q
};
Decollage group_decollage(const FinPoset& P, const std::vector<FinGroup>& pointGroups,
                          const std::vector<EdgeGroupData>& edges);

} // namespace stratcat

#endif
