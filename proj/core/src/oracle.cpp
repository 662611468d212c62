#include "otg/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "otg/errors.hpp"

namespace otg {

void OracleSpec::validate() const {
    if (!(hidden.parent() == group)) throw OracleValidationError("oracle: hidden subgroup has a different parent group");
    if (codomain_bits < 1 || codomain_bits > 20)
        throw OracleValidationError("oracle: codomain_bits out of range");
    if (table.size() != group.order()) throw OracleValidationError("oracle: table size does not match |G|");
    for (uint32_t v : table)
        if (v >= codomain_size()) throw OracleValidationError("oracle: table value exceeds codomain");

    // Constant on every H-coset.
    for (uint32_t g = 0; g < group.order(); ++g)
        for (uint32_t h : hidden.element_indices())
            if (table[group.add(g, h)] != table[g])
                throw OracleValidationError("oracle: f is not constant on the coset of " +
                                            GroupElement::from_index(group, g).to_string());
    // Distinct across cosets: a value may only ever appear inside one coset.
    std::map<uint32_t, uint32_t> value_to_coset; // value -> canonical rep
    for (uint32_t g = 0; g < group.order(); ++g) {
        uint32_t rep = g;
        for (uint32_t h : hidden.element_indices()) rep = std::min(rep, group.add(g, h));
        auto [it, inserted] = value_to_coset.emplace(table[g], rep);
        if (!inserted && it->second != rep)
            throw OracleValidationError("oracle: value " + std::to_string(table[g]) +
                                        " repeats across distinct cosets");
    }
    for (const auto& k : k_generators)
        if (!(k.group == group)) throw OracleValidationError("oracle: K generator from a different group");
}

OracleSpec make_periodic_oracle(uint32_t domain_size, uint32_t codomain_size, const std::vector<uint32_t>& fbar,
                                uint32_t period) {
    AbelianGroup g({domain_size});
    const uint32_t m = log2_exact(codomain_size);
    if (period == 0 || domain_size % period != 0)
        throw OracleValidationError("periodic oracle: period must divide the domain size");
    if (fbar.size() != period) throw OracleValidationError("periodic oracle: fbar must list one period");
    for (uint32_t v : fbar)
        if (v >= codomain_size) throw OracleValidationError("periodic oracle: fbar value exceeds codomain");
    std::vector<uint32_t> sorted = fbar;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw OracleValidationError("periodic oracle: fbar is not injective");

    OracleSpec oracle{g, m, {}, Subgroup::span_indices(g, {period % domain_size})};
    oracle.table.resize(domain_size);
    for (uint32_t x = 0; x < domain_size; ++x) oracle.table[x] = fbar[x % period];
    oracle.period = period;
    oracle.validate();
    return oracle;
}

OracleSpec make_dlog_oracle(uint32_t cyclic_order, uint32_t a) {
    const uint32_t n = cyclic_order;
    if (a >= n) throw OracleValidationError("dlog oracle: exponent a out of range");
    AbelianGroup g({n, n});
    OracleSpec oracle{g, log2_exact(n), {}, Subgroup::span_indices(g, {g.index_of({a, 1})})};
    oracle.table.resize(g.order());
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            oracle.table[g.index_of({i, j})] = (i + (n - a) * j) % n;
    oracle.validate();
    return oracle;
}

OracleSpec make_coset_oracle(const Subgroup& hidden) {
    const AbelianGroup& g = hidden.parent();
    std::vector<uint32_t> reps(g.order());
    for (uint32_t x = 0; x < g.order(); ++x) {
        uint32_t rep = x;
        for (uint32_t h : hidden.element_indices()) rep = std::min(rep, g.add(x, h));
        reps[x] = rep;
    }
    std::vector<uint32_t> unique_reps = reps;
    std::sort(unique_reps.begin(), unique_reps.end());
    unique_reps.erase(std::unique(unique_reps.begin(), unique_reps.end()), unique_reps.end());

    const uint32_t coset_count = g.order() / hidden.order();
    OracleSpec oracle{g, std::max(1u, log2_exact(coset_count)), {}, hidden};
    oracle.table.resize(g.order());
    for (uint32_t x = 0; x < g.order(); ++x) {
        const auto it = std::lower_bound(unique_reps.begin(), unique_reps.end(), reps[x]);
        oracle.table[x] = static_cast<uint32_t>(it - unique_reps.begin());
    }
    oracle.validate();
    return oracle;
}

OracleSpec parse_oracle(const std::string& text) {
    std::optional<AbelianGroup> group;
    std::optional<uint32_t> codomain_bits;
    std::vector<uint32_t> table;
    std::vector<std::string> hidden_tokens, k_tokens;
    std::optional<uint32_t> period;
    OracleAccess access = OracleAccess::open_circuit;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "group") {
            std::string spec;
            ls >> spec;
            group = AbelianGroup::parse(spec);
        } else if (key == "codomain_bits") {
            uint32_t m;
            if (!(ls >> m)) throw ConfigError("oracle file: bad codomain_bits");
            codomain_bits = m;
        } else if (key == "table") {
            uint32_t v;
            while (ls >> v) table.push_back(v);
        } else if (key == "hidden") {
            std::string tok;
            while (ls >> tok) hidden_tokens.push_back(tok);
        } else if (key == "k") {
            std::string tok;
            while (ls >> tok) k_tokens.push_back(tok);
        } else if (key == "period") {
            uint32_t r;
            if (!(ls >> r)) throw ConfigError("oracle file: bad period");
            period = r;
        } else if (key == "access") {
            std::string mode;
            ls >> mode;
            if (mode == "open-circuit")
                access = OracleAccess::open_circuit;
            else if (mode == "black-box")
                access = OracleAccess::black_box;
            else
                throw ConfigError("oracle file: unknown access mode '" + mode + "'");
        } else {
            throw ConfigError("oracle file: unknown key '" + key + "'");
        }
    }
    if (!group) throw ConfigError("oracle file: missing 'group'");
    if (!codomain_bits) throw ConfigError("oracle file: missing 'codomain_bits'");
    if (table.empty()) throw ConfigError("oracle file: missing 'table'");

    std::vector<uint32_t> hidden_gen_indices;
    for (const auto& tok : hidden_tokens) hidden_gen_indices.push_back(GroupElement::parse(*group, tok).index());
    OracleSpec oracle{*group, *codomain_bits, std::move(table), Subgroup::span_indices(*group, hidden_gen_indices)};
    for (const auto& tok : k_tokens) oracle.k_generators.push_back(GroupElement::parse(*group, tok));
    oracle.period = period;
    oracle.access = access;
    oracle.validate();
    return oracle;
}

std::string serialize_oracle(const OracleSpec& oracle) {
    std::ostringstream out;
    out << "group " << oracle.group.to_string() << '\n';
    out << "codomain_bits " << oracle.codomain_bits << '\n';
    out << "table";
    for (uint32_t v : oracle.table) out << ' ' << v;
    out << '\n';
    out << "hidden";
    for (uint32_t g : oracle.hidden.generator_indices()) out << ' ' << GroupElement::from_index(oracle.group, g).to_string();
    out << '\n';
    if (oracle.period) out << "period " << *oracle.period << '\n';
    if (!oracle.k_generators.empty()) {
        out << "k";
        for (const auto& k : oracle.k_generators) out << ' ' << k.to_string();
        out << '\n';
    }
    out << "access " << (oracle.access == OracleAccess::black_box ? "black-box" : "open-circuit") << '\n';
    return out.str();
}

} // namespace otg
