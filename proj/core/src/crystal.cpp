#include "shgeff/crystal.hpp"

#include <algorithm>
#include <stdexcept>

namespace shgeff {

const char* to_string(Variant v) {
    return v == Variant::PaperLiteral ? "paper-literal" : "symmetrized";
}

const std::vector<ClassInfo>& crystal_classes() {
    static const std::vector<ClassInfo> registry = {
        {"-42m", {"chi14"}, {}, false},
        {"4mm", {"chi15", "chi33"}, {}, false},
        {"4", {"chi14", "chi15"}, {}, true},
        {"-62m", {"chi22"}, {"62m"}, false},
        {"6", {"chi11", "chi22"}, {}, false},
    };
    return registry;
}

const ClassInfo& find_class(const std::string& name) {
    for (const auto& info : crystal_classes()) {
        if (info.name == name) return info;
        if (std::find(info.aliases.begin(), info.aliases.end(), name) != info.aliases.end())
            return info;
    }
    throw std::invalid_argument("unknown crystal class \"" + name + "\"");
}

namespace {

double get_param(const std::map<std::string, double>& params, const ClassInfo& info,
                 const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("class \"" + info.name + "\": missing parameter \"" + key + "\"");
    return it->second;
}

void check_params(const std::map<std::string, double>& params, const ClassInfo& info) {
    for (const auto& [key, value] : params) {
        (void)value;
        if (std::find(info.params.begin(), info.params.end(), key) == info.params.end())
            throw std::invalid_argument("class \"" + info.name + "\": unexpected parameter \"" + key + "\"");
    }
    for (const auto& key : info.params) get_param(params, info, key);
}

// 1-based component setter for readability against the published lists.
struct Builder {
    std::array<double, 27> e{};
    void set(int i, int j, int k, double v) { e[((i - 1) * 3 + (j - 1)) * 3 + (k - 1)] = v; }
    Tensor3 tensor() const { return Tensor3(e); }
};

}  // namespace

Tensor3 build_crystal(const std::string& name, const std::map<std::string, double>& params,
                      Variant variant) {
    const ClassInfo& info = find_class(name);
    check_params(params, info);
    Builder b;

    if (info.name == "-42m") {
        double c14 = get_param(params, info, "chi14");
        b.set(1, 2, 3, c14); b.set(1, 3, 2, c14);
        b.set(2, 1, 3, c14); b.set(2, 3, 1, c14);
        b.set(3, 1, 2, c14); b.set(3, 2, 1, c14);
    } else if (info.name == "4mm") {
        double c15 = get_param(params, info, "chi15");
        double c33 = get_param(params, info, "chi33");
        b.set(1, 3, 1, c15); b.set(1, 1, 3, c15);
        b.set(2, 2, 3, c15); b.set(2, 3, 2, c15);
        b.set(3, 1, 1, c15); b.set(3, 2, 2, c15);
        b.set(3, 3, 3, c33);
    } else if (info.name == "4") {
        double c14 = get_param(params, info, "chi14");
        double c15 = get_param(params, info, "chi15");
        // The published list sets T_132 = -chi14, breaking last-two-index
        // symmetry; the symmetrized variant flips that single sign.
        b.set(1, 2, 3, c14);
        b.set(1, 3, 2, variant == Variant::PaperLiteral ? -c14 : c14);
        b.set(2, 1, 3, c14); b.set(2, 3, 1, c14);
        b.set(3, 1, 2, c14); b.set(3, 2, 1, c14);
        b.set(1, 1, 3, c15); b.set(1, 3, 1, c15);
        b.set(2, 2, 3, -c15); b.set(2, 3, 2, -c15);
        b.set(3, 1, 1, c15); b.set(3, 2, 2, -c15);
    } else if (info.name == "-62m") {
        double c22 = get_param(params, info, "chi22");
        b.set(2, 2, 2, c22);
        b.set(1, 1, 2, -c22); b.set(1, 2, 1, -c22); b.set(2, 1, 1, -c22);
    } else {  // "6"
        double c11 = get_param(params, info, "chi11");
        double c22 = get_param(params, info, "chi22");
        b.set(1, 1, 1, c11);
        b.set(1, 2, 2, -c11); b.set(2, 1, 2, -c11); b.set(2, 2, 1, -c11);
        b.set(2, 2, 2, c22);
        b.set(1, 1, 2, -c22); b.set(1, 2, 1, -c22); b.set(2, 1, 1, -c22);
    }
    return b.tensor();
}

}  // namespace shgeff
