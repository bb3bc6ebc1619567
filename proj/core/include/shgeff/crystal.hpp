#pragma once

#include <map>
#include <string>
#include <vector>

#include "shgeff/tensor.hpp"

namespace shgeff {

// Component-list variant for crystal classes whose published lists are not
// symmetric in the last two indices. For every class except "4" the two
// variants build the same tensor.
enum class Variant { PaperLiteral, Symmetrized };

const char* to_string(Variant v);

struct ClassInfo {
    std::string name;                  // canonical registry name
    std::vector<std::string> params;   // required coefficient keys, fixed order
    std::vector<std::string> aliases;  // accepted alternative spellings
    bool distinct_variants;            // true iff the variants differ
};

// Registry of the supported uniaxial crystal classes, deterministic order:
// "-42m", "4mm", "4", "-62m", "6". The leading '-' renders the
// crystallographic bar; "62m" is accepted as an alias of "-62m".
const std::vector<ClassInfo>& crystal_classes();

// Canonical registry name for a class name or alias; throws
// std::invalid_argument for unknown names.
const ClassInfo& find_class(const std::string& name);

// Builds the class tensor from its independent coefficients. params must
// contain exactly the required keys (missing or extra keys throw
// std::invalid_argument naming the offender).
Tensor3 build_crystal(const std::string& name,
                      const std::map<std::string, double>& params,
                      Variant variant = Variant::Symmetrized);

}  // namespace shgeff
