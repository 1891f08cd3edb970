#ifndef STRATCAT_HOMOLOGY_HPP
#define STRATCAT_HOMOLOGY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/decollage.hpp"
#include "stratcat/layered.hpp"

namespace stratcat {

using BigInt = boost::multiprecision::cpp_int;

struct IMat {
    int rows = 0, cols = 0;
    std::vector<BigInt> a; // row-major

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    BigInt& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const BigInt& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    static IMat identity(int n);
};
IMat mat_mult(const IMat& A, const IMat& B);

struct SmithResult {
    std::vector<BigInt> diagonal; // d1 | d2 | ..., nonzero entries only
    IMat left, right;             // unimodular; left * M * right is diagonal
    IMat diag;                    // the full diagonal matrix
};
// Smith normal form with verified transforms.
SmithResult smith_normal_form(const IMat& M);
// Diagonal only (no transforms); faster for rank/torsion queries.
std::vector<BigInt> smith_diagonal(IMat M);

// Chain complex of free abelian groups; boundary[n] maps degree n to n-1.
struct ChainComplex {
    int maxDim = 0;
    std::vector<int> ranks;             // 0..maxDim
    std::vector<IMat> boundary;         // index 1..maxDim used
    std::vector<std::string> basisNote; // optional description per degree
};
std::vector<std::string> validate_complex(const ChainComplex& K); // dd = 0

struct HomologyResult {
    long long betti = 0;
    std::vector<BigInt> torsion; // sorted invariant factors > 1
    bool operator==(const HomologyResult& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
    std::string to_string() const;
};

// H_n = ker d_n / im d_{n+1}; requires n + 1 <= maxDim
// (DomainError "DegreeOutOfRange" otherwise).
HomologyResult homology_groups(const ChainComplex& K, int n);

// Normalized nerve: degree-n basis is the set of length-n chains of
// composable non-identity morphisms; inner faces compose, faces through an
// identity are dropped. maxDim <= 3.
ChainComplex nerve_complex(const FinCat& C, int maxDim);

// Generators and relator words; letters are +-(i+1) for generator i.
struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> relators;
};
std::vector<std::string> validate_presentation(const GroupPresentation& P);

// H1 of the presentation complex (rank and torsion of the abelianization).
HomologyResult presentation_h1(const GroupPresentation& P);
// H1 of the classifying space presented by a PresCat; formally inverted
// generators need no extra relations after abelianization.
HomologyResult presentation_h1(const PresCat& P);

// pi0 of a PresCat via union-find over generator endpoints.
int pres_cat_pi0(const PresCat& P);

// Total category of the diagram over sd^op(P): objects (string, object),
// morphisms (inclusion, map after restriction).
FinCat grothendieck_total(const Decollage& D);

struct VanKampenResult {
    bool ok = false;
    std::vector<HomologyResult> direct;    // H_0..H_n of the nerve of the category
    std::vector<HomologyResult> decollage; // same for the Grothendieck total of the nerve
};
VanKampenResult van_kampen_check(const LayeredCat& L, int n = 1);

} // namespace stratcat

#endif
