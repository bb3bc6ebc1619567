#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shgeff/crystal.hpp"
#include "shgeff/tensor.hpp"

namespace shgeff::cli {

// Malformed input file (JSON syntax, schema, unknown class, bad parameter...).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem-level failure (unreadable input, unwritable output).
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TensorInput {
    Tensor3 tensor;
    std::string form;        // "class" | "voigt" | "components"
    std::string class_name;  // canonical name when form == "class"
    Variant variant = Variant::Symmetrized;
    std::vector<std::pair<std::string, double>> params;  // declared order
    std::string path;
};

// Loads a tensor description file. JSON object with exactly one of:
//   "class": string with "params": {name: number, ...} and optional
//            "variant": "paper-literal" | "symmetrized" (default symmetrized);
//   "voigt": 3x6 array of numbers (rows i = 1..3, columns l = 1..6);
//   "components": [{"i":1,"j":2,"k":3,"value":x}, ...] with optional
//            "symmetrize": bool. Without the flag, component lists that are
//            asymmetric in the last two indices are rejected (symmetry error)
//            rather than silently symmetrized.
// Throws io_error / parse_error / shgeff::symmetry_error.
TensorInput load_tensor_file(const std::string& path);

}  // namespace shgeff::cli
