#ifndef STRATCAT_POSET_HPP
#define STRATCAT_POSET_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/errors.hpp"

namespace stratcat {

// Finite partial order. The relation is kept as a full boolean matrix;
// posets in this library are small, so O(n^2) storage and O(n^3) checks
// are fine.
struct FinPoset {
    std::vector<std::string> elements;
    std::vector<char> rel; // row-major; rel[i*n+j] != 0 iff i <= j

    int size() const { return static_cast<int>(elements.size()); }
    bool leq(int i, int j) const { return rel[static_cast<size_t>(i) * elements.size() + j] != 0; }
    bool lt(int i, int j) const { return i != j && leq(i, j); }
    int index_of(const std::string& name) const;
};

// Monotone map of posets; "assignment" sends source indices to target indices.
struct MonotoneMap {
    FinPoset source;
    FinPoset target;
    std::vector<int> map;

    int operator()(int i) const { return map[i]; }
};

// Finite topological space given by its full family of open sets.
struct FiniteSpace {
    std::vector<std::string> points;
    std::vector<std::vector<int>> opens; // each open = sorted point indices; family sorted lex
};

// Finite inverse system of finite posets: a poset per index element and a
// bond nodes[j] -> nodes[i] for every i <= j, composing functorially.
struct PosetTower {
    FinPoset index;
    std::vector<FinPoset> nodes;
    std::map<std::pair<int, int>, MonotoneMap> bonds; // key (i, j) with i < j
};

enum class SubposetClass { Clopen, Sieve, Cosieve, Interval, None };

std::string to_string(SubposetClass c);

// Builds a poset from generating relations; reflexive-transitive closure is
// applied, antisymmetry is checked.
FinPoset make_poset(std::vector<std::string> elements,
                    const std::vector<std::pair<int, int>>& relations);
FinPoset make_poset_named(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& relations);

// The chain 0 < 1 < ... < n-1.
FinPoset chain_poset(int n);
FinPoset antichain_poset(int n);
// {0, ..., n-1, inf} with i < inf and the finite points pairwise incomparable.
FinPoset x_n_poset(int n);

std::vector<std::string> validate_poset(const FinPoset& P);
std::vector<std::string> validate_monotone(const MonotoneMap& f);
std::vector<std::string> validate_space(const FiniteSpace& X);
std::vector<std::string> validate_tower(const PosetTower& T);

std::vector<int> up_set(const FinPoset& P, int p);   // P_{>= p}
std::vector<int> down_set(const FinPoset& P, int p); // P_{<= p}
// Cover relations (i, j): i < j with nothing strictly between.
std::vector<std::pair<int, int>> cover_relations(const FinPoset& P);
// Length of the longest chain minus one; -1 for the empty poset.
int poset_height(const FinPoset& P);
bool is_sieve(const FinPoset& P, const std::vector<char>& subset);
bool is_cosieve(const FinPoset& P, const std::vector<char>& subset);
FinPoset induced_subposet(const FinPoset& P, const std::vector<int>& elems);
bool are_posets_isomorphic(const FinPoset& P, const FinPoset& Q);

// Alexandroff topology: opens are exactly the cosieves of P.
FiniteSpace alexandroff(const FinPoset& P);

// Specialisation order of a T0 finite space: x <= y iff x lies in the
// closure of {y}. Throws DomainError("NotT0") when two points share their
// open-neighbourhood family.
FinPoset specialization_poset(const FiniteSpace& X);

// Poset of strings (nonempty totally ordered subsets) ordered by inclusion.
struct Subdivision {
    FinPoset poset;
    std::vector<std::vector<int>> strings; // each sorted ascending along the order of P
    int index_of(const std::vector<int>& s) const;
};
Subdivision subdivision(const FinPoset& P);

SubposetClass classify_subposet(const FinPoset& P, const std::vector<char>& subset);
SubposetClass classify_subposet(const FinPoset& P, const std::vector<int>& subset);

// Limit of a finite tower: compatible families ordered componentwise.
FinPoset tower_limit(const PosetTower& T);
// Projection from the limit to nodes[i].
MonotoneMap tower_limit_projection(const PosetTower& T, const FinPoset& limit, int i);

// All monotone surjections P -> Q up to isomorphism of Q, each with
// nonempty fibers, in canonical order.
std::vector<MonotoneMap> enumerate_stratifications(const FinPoset& P);

} // namespace stratcat

#endif
