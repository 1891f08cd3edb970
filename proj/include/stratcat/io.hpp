#ifndef STRATCAT_IO_HPP
#define STRATCAT_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/decollage.hpp"
#include "stratcat/galois.hpp"
#include "stratcat/group.hpp"
#include "stratcat/layered.hpp"
#include "stratcat/poset.hpp"
#include "stratcat/sheaf.hpp"

namespace stratcat {

inline constexpr int kFormatVersion = 1;

// A sheaf document carries its domain category.
struct SheafDoc {
    FinCat cat;
    SetFunctor F;
};

struct Document {
    std::string kind; // poset, space, category, layered, decollage, sheaf, tower, group, curve
    int version = kFormatVersion;
    std::variant<FinPoset, FiniteSpace, FinCat, LayeredCat, Decollage, SheafDoc, PosetTower,
                 FinGroup, CurveSpec>
        payload;
};

// Parses and validates; ParseError on malformed text, ValidationError when
// the payload fails its domain validator.
Document load_document(const std::string& text);
Document load_document_file(const std::string& path);

// Canonical serialization: sorted keys, canonical element order, LF endings.
std::string emit_document(const Document& doc);

// Hasse diagram for posets, objects-and-generators digraph for categories,
// stratum-colored digraph for layered categories.
std::string emit_dot(const Document& doc);

// Command dispatch; returns the process exit code (0 ok, 1 check/validation
// failure, 2 parse/usage error).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stratcat

#endif
