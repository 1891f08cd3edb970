#ifndef STRATCAT_GROUP_HPP
#define STRATCAT_GROUP_HPP

#include <map>
#include <string>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/errors.hpp"

namespace stratcat {

using Perm = std::vector<int>;

Perm perm_identity(int degree);
Perm perm_mult(const Perm& a, const Perm& b); // a after b
Perm perm_inverse(const Perm& a);
Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
std::vector<std::vector<int>> cycles_of_perm(const Perm& p);

// Finite permutation group generated by the given permutations; the element
// table is computed on construction (closure), element 0 is the identity.
class FinGroup {
public:
    FinGroup() : degree_(1) { init({}); }
    explicit FinGroup(int degree, std::vector<Perm> generators, int orderCap = 5040);

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elems_.size()); }
    int n_gens() const { return static_cast<int>(gens_.size()); }
    const Perm& element(int i) const { return elems_[i]; }
    const Perm& generator(int i) const { return gens_[i]; }
    int gen_element(int i) const { return genElems_[i]; }
    int index_of(const Perm& p) const;
    int mult(int a, int b) const { return mult_[static_cast<size_t>(a) * order() + b]; }
    int inverse(int a) const { return inv_[a]; }
    // one word in the generators per element (indices into the generator list)
    const std::vector<int>& word_of(int e) const { return words_[e]; }

private:
    void init(std::vector<Perm> generators, int orderCap = 5040);
    int degree_;
    std::vector<Perm> gens_;
    std::vector<int> genElems_;
    std::vector<Perm> elems_;
    std::map<Perm, int> index_;
    std::vector<int> mult_, inv_;
    std::vector<std::vector<int>> words_;
};

FinGroup trivial_group();
FinGroup cyclic_group(int n);
FinGroup symmetric_group(int n); // degree n, n <= 7
FinGroup group_from_cycles(int degree, const std::vector<std::vector<std::vector<int>>>& genCycles);

// Homomorphism specified on generators, validated along the Cayley graph of
// the source: the induced assignment on all elements must be multiplicative.
struct GroupHom {
    FinGroup source, target;
    std::vector<int> genImages;   // per source generator: element index in target
    std::vector<int> elemImages;  // filled by make_group_hom
};
GroupHom make_group_hom(const FinGroup& G, const FinGroup& H, const std::vector<int>& genImages);
GroupHom make_group_hom_perms(const FinGroup& G, const FinGroup& H,
                              const std::vector<Perm>& genImages);

// One-object groupoid of a group; morphism i is element i.
FinCat b_group(const FinGroup& G, const std::string& objName = "*");
// Objects 0..degree-1, morphisms (g, x): x -> g(x).
FinCat action_groupoid(const FinGroup& G);
Functor action_to_b_group(const FinGroup& G); // action groupoid -> BG

// Functor B(hom): B(source) -> B(target).
Functor b_group_functor(const GroupHom& h);

// Subgroup generated by the listed elements, with its inclusion expressed as
// element indices of the ambient group.
FinGroup generated_subgroup(const FinGroup& G, const std::vector<int>& elements);

} // namespace stratcat

#endif
