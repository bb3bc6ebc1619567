#include "tensor_input.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "shgeff/errors.hpp"

namespace shgeff::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw parse_error(path + ": " + msg);
}

void require_keys(const std::string& path, const json& obj,
                  const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            fail(path, "unexpected key \"" + item.key() + "\"");
        }
    }
}

double number_at(const std::string& path, const json& v, const std::string& what) {
    if (!v.is_number()) fail(path, what + " must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, what + " must be finite");
    return x;
}

TensorInput load_class_form(const std::string& path, const json& j) {
    require_keys(path, j, {"class", "params", "variant"});
    if (!j.at("class").is_string()) fail(path, "\"class\" must be a string");
    const std::string name = j.at("class").get<std::string>();
    const ClassInfo* info = nullptr;
    try {
        info = &find_class(name);
    } catch (const std::invalid_argument&) {
        fail(path, "unknown crystal class \"" + name + "\"");
    }

    Variant variant = Variant::Symmetrized;
    if (j.contains("variant")) {
        if (!j.at("variant").is_string()) fail(path, "\"variant\" must be a string");
        const std::string v = j.at("variant").get<std::string>();
        if (v == "paper-literal") {
            variant = Variant::PaperLiteral;
        } else if (v == "symmetrized") {
            variant = Variant::Symmetrized;
        } else {
            fail(path, "unknown variant \"" + v +
                           "\" (expected \"paper-literal\" or \"symmetrized\")");
        }
    }

    if (!j.contains("params")) fail(path, "class form requires \"params\"");
    if (!j.at("params").is_object()) fail(path, "\"params\" must be an object");
    std::map<std::string, double> params;
    for (const auto& item : j.at("params").items()) {
        params[item.key()] =
            number_at(path, item.value(), "parameter \"" + item.key() + "\"");
    }

    Tensor3 t = [&] {
        try {
            return build_crystal(info->name, params, variant);
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
    }();

    TensorInput in{t, "class", info->name, variant, {}, path};
    for (const std::string& p : info->params) {
        in.params.emplace_back(p, params.at(p));
    }
    return in;
}

TensorInput load_voigt_form(const std::string& path, const json& j) {
    require_keys(path, j, {"voigt"});
    const json& rows = j.at("voigt");
    if (!rows.is_array() || rows.size() != 3) {
        fail(path, "\"voigt\" must be an array of 3 rows");
    }
    std::array<double, 18> entries{};
    for (int i = 0; i < 3; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != 6) {
            fail(path, "voigt row " + std::to_string(i + 1) + " must have 6 entries");
        }
        for (int l = 0; l < 6; ++l) {
            std::ostringstream what;
            what << "voigt entry (" << i + 1 << "," << l + 1 << ")";
            entries[size_t(i) * 6 + l] = number_at(path, row[l], what.str());
        }
    }
    return TensorInput{from_voigt(VoigtMatrix(entries)), "voigt", "",
                       Variant::Symmetrized, {}, path};
}

TensorInput load_components_form(const std::string& path, const json& j) {
    require_keys(path, j, {"components", "symmetrize"});
    const json& list = j.at("components");
    if (!list.is_array()) fail(path, "\"components\" must be an array");
    if (list.empty()) fail(path, "\"components\" must not be empty");

    bool has_symmetrize = j.contains("symmetrize");
    bool symmetrize = false;
    if (has_symmetrize) {
        if (!j.at("symmetrize").is_boolean()) fail(path, "\"symmetrize\" must be a boolean");
        symmetrize = j.at("symmetrize").get<bool>();
    }

    auto at = [](auto& arr, int i, int jj, int k) -> auto& {
        return arr[(size_t(i) * 3 + jj) * 3 + k];
    };
    std::array<double, 27> e{};
    std::array<bool, 27> given{};
    for (const auto& entry : list) {
        if (!entry.is_object()) fail(path, "each component must be an object");
        require_keys(path, entry, {"i", "j", "k", "value"});
        int idx[3];
        const char* names[3] = {"i", "j", "k"};
        for (int n = 0; n < 3; ++n) {
            if (!entry.contains(names[n]) || !entry.at(names[n]).is_number_integer()) {
                fail(path, std::string("component index \"") + names[n] +
                               "\" must be an integer");
            }
            idx[n] = entry.at(names[n]).get<int>();
            if (idx[n] < 1 || idx[n] > 3) {
                fail(path, std::string("component index \"") + names[n] +
                               "\" must be in 1..3");
            }
        }
        if (!entry.contains("value")) fail(path, "component missing \"value\"");
        double v = number_at(path, entry.at("value"), "component value");
        int i = idx[0] - 1, jj = idx[1] - 1, k = idx[2] - 1;
        if (at(given, i, jj, k)) {
            std::ostringstream msg;
            msg << "duplicate component (" << idx[0] << "," << idx[1] << "," << idx[2]
                << ")";
            fail(path, msg.str());
        }
        at(given, i, jj, k) = true;
        at(e, i, jj, k) = v;
    }

    if (symmetrize) {
        for (int i = 0; i < 3; ++i) {
            for (int jj = 0; jj < 3; ++jj) {
                for (int k = jj + 1; k < 3; ++k) {
                    if (at(given, i, jj, k) && at(given, i, k, jj)) {
                        if (at(e, i, jj, k) != at(e, i, k, jj)) {
                            std::ostringstream msg;
                            msg << "conflicting values for (" << i + 1 << "," << jj + 1
                                << "," << k + 1 << ") and its mirror under symmetrize";
                            fail(path, msg.str());
                        }
                    } else if (at(given, i, jj, k)) {
                        at(e, i, k, jj) = at(e, i, jj, k);
                    } else if (at(given, i, k, jj)) {
                        at(e, i, jj, k) = at(e, i, k, jj);
                    }
                }
            }
        }
    }

    Tensor3 t(e);
    if (!has_symmetrize) {
        // Explicit component lists must already be symmetric in j,k unless the
        // file opts in or out via "symmetrize".
        if (classify_symmetry(t) == SymmetryClass::General) {
            for (int i = 0; i < 3; ++i) {
                for (int jj = 0; jj < 3; ++jj) {
                    for (int k = jj + 1; k < 3; ++k) {
                        if (std::abs(t(i, jj, k) - t(i, k, jj)) > kSymmetryTol) {
                            throw symmetry_error(
                                path + ": components are asymmetric in the last two "
                                       "indices; set \"symmetrize\" explicitly",
                                i + 1, jj + 1, k + 1);
                        }
                    }
                }
            }
        }
    }
    return TensorInput{t, "components", "", Variant::Symmetrized, {}, path};
}

}  // namespace

TensorInput load_tensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open \"" + path + "\" for reading");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    if (!j.is_object()) fail(path, "top level must be a JSON object");

    int forms = int(j.contains("class")) + int(j.contains("voigt")) +
                int(j.contains("components"));
    if (forms != 1) {
        fail(path, "exactly one of \"class\", \"voigt\", \"components\" is required");
    }
    if (j.contains("class")) return load_class_form(path, j);
    if (j.contains("voigt")) return load_voigt_form(path, j);
    return load_components_form(path, j);
}

}  // namespace shgeff::cli
