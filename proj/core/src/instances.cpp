#include "otg/instances.hpp"

#include <algorithm>

#include "otg/errors.hpp"

namespace otg {

const std::vector<std::string>& builtin_instance_names() {
    static const std::vector<std::string> names{"pfa8", "pfa16", "dlog8-a3", "z2z4"};
    return names;
}

bool is_builtin_instance(const std::string& name) {
    const auto& names = builtin_instance_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

OracleSpec builtin_instance(const std::string& name) {
    if (name == "pfa8") {
        // Period finding on Z/8 with r = 4; maps even to even, so the
        // least-significant qubits align without any basis change.
        OracleSpec oracle = make_periodic_oracle(8, 8, {2, 3, 4, 5}, 4);
        oracle.k_generators = {GroupElement(oracle.group, {2})};
        return oracle;
    }
    if (name == "pfa16") {
        OracleSpec oracle = make_periodic_oracle(16, 16, {2, 3, 4, 5}, 4);
        oracle.k_generators = {GroupElement(oracle.group, {2})};
        return oracle;
    }
    if (name == "dlog8-a3") {
        // Discrete logarithm with generator order 8 and exponent a = 3; the
        // concrete instantiation gamma = 2 mod 17 has exactly this shape.
        OracleSpec oracle = make_dlog_oracle(8, 3);
        oracle.k_generators = {GroupElement(oracle.group, {1, 1}), GroupElement(oracle.group, {2, 0})};
        return oracle;
    }
    if (name == "z2z4") {
        AbelianGroup g({2, 4});
        Subgroup hidden = Subgroup::span_indices(g, {g.index_of({1, 2})});
        OracleSpec oracle = make_coset_oracle(hidden);
        oracle.k_generators = {GroupElement(g, {1, 2}), GroupElement(g, {0, 2})};
        return oracle;
    }
    throw ConfigError("unknown built-in instance '" + name + "'");
}

} // namespace otg
