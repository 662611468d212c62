#include "otg/witness.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "otg/errors.hpp"
#include "otg/oracle.hpp"

namespace otg {

FactorizationWitness::FactorizationWitness(uint32_t n, uint32_t m, uint32_t ell, BasisPermutation ug,
                                           BasisPermutation us)
    : main_qubits(n), aux_qubits(m), bell_pairs(ell), u_g(std::move(ug)), u_s(std::move(us)) {
    if (bell_pairs > main_qubits || bell_pairs > aux_qubits)
        throw std::invalid_argument("witness: more Bell pairs than register qubits");
    if (u_g.size() != (1u << n) || u_s.size() != (1u << m))
        throw std::invalid_argument("witness: permutation sizes do not match register widths");
}

FactorizationWitness FactorizationWitness::identity(uint32_t n, uint32_t m, uint32_t ell) {
    return FactorizationWitness(n, m, ell, BasisPermutation::identity(1u << n), BasisPermutation::identity(1u << m));
}

namespace {

struct CosetTables {
    std::vector<uint32_t> coset_number; // per group index
    std::vector<uint32_t> k_part;       // per group index, an element of K
    uint32_t coset_count;
};

CosetTables coset_tables(const AbelianGroup& g, const Subgroup& k) {
    CosetTables t;
    t.coset_number.resize(g.order());
    t.k_part.resize(g.order());
    std::vector<uint32_t> rep(g.order());
    for (uint32_t x = 0; x < g.order(); ++x) {
        uint32_t r = x;
        for (uint32_t e : k.element_indices()) r = std::min(r, g.add(x, e));
        rep[x] = r;
    }
    std::vector<uint32_t> reps = rep;
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    t.coset_count = static_cast<uint32_t>(reps.size());
    for (uint32_t x = 0; x < g.order(); ++x) {
        t.coset_number[x] = static_cast<uint32_t>(std::lower_bound(reps.begin(), reps.end(), rep[x]) - reps.begin());
        t.k_part[x] = g.add(x, g.neg(rep[x]));
    }
    return t;
}

} // namespace

FactorizationWitness witness_from_subgroup(const OracleSpec& oracle, const Subgroup& k) {
    const AbelianGroup& g = oracle.group;
    if (!(k.parent() == g)) throw OracleValidationError("witness: K has a different parent group");
    if (!oracle.hidden.is_subgroup_of(k))
        throw OracleValidationError("witness: hidden subgroup is not contained in K");

    const uint32_t n = g.qubits();
    const uint32_t m = oracle.codomain_bits;
    const uint32_t ell = log2_exact(g.order() / k.order());
    const CosetTables ct = coset_tables(g, k);

    // f must refine K-cosets: equal values may only occur inside one coset.
    std::map<uint32_t, uint32_t> value_coset;
    for (uint32_t x = 0; x < g.order(); ++x) {
        auto [it, inserted] = value_coset.emplace(oracle.table[x], ct.coset_number[x]);
        if (!inserted && it->second != ct.coset_number[x])
            throw OracleValidationError("witness: oracle table is not refined by the cosets of K");
    }

    std::vector<uint32_t> ug(g.order());
    for (uint32_t x = 0; x < g.order(); ++x)
        ug[x] = (k.rank_of_index(ct.k_part[x]) << ell) | ct.coset_number[x];

    // S1 label per K-element: prefer the table's own high bits (identity when
    // the encoding is already aligned), fall back to the rank of the H-coset
    // inside K.
    const Subgroup& h = oracle.hidden;
    std::vector<uint32_t> phi(k.order());
    {
        std::set<uint32_t> distinct;
        for (uint32_t r = 0; r < k.order(); ++r) {
            phi[r] = oracle.table[k.element_indices()[r]] >> ell;
            distinct.insert(phi[r]);
        }
        if (distinct.size() != k.order() / h.order()) {
            std::vector<uint32_t> h_rep(k.order());
            for (uint32_t r = 0; r < k.order(); ++r) {
                uint32_t e = k.element_indices()[r];
                uint32_t rep = e;
                for (uint32_t hh : h.element_indices()) rep = std::min(rep, g.add(e, hh));
                h_rep[r] = rep;
            }
            std::vector<uint32_t> reps = h_rep;
            std::sort(reps.begin(), reps.end());
            reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
            for (uint32_t r = 0; r < k.order(); ++r)
                phi[r] = static_cast<uint32_t>(std::lower_bound(reps.begin(), reps.end(), h_rep[r]) - reps.begin());
        }
    }

    const uint32_t s_size = 1u << m;
    std::vector<uint32_t> us(s_size, s_size); // s_size = unassigned
    std::vector<bool> used(s_size, false);
    for (uint32_t x = 0; x < g.order(); ++x) {
        const uint32_t v = oracle.table[x];
        const uint32_t target = (phi[k.rank_of_index(ct.k_part[x])] << ell) | ct.coset_number[x];
        if (us[v] == s_size) {
            if (used[target]) throw std::logic_error("witness: non-injective codomain labeling");
            us[v] = target;
            used[target] = true;
        } else if (us[v] != target) {
            throw std::logic_error("witness: inconsistent codomain labeling");
        }
    }
    // Extend to a bijection over values the oracle never takes.
    uint32_t next_free = 0;
    for (uint32_t v = 0; v < s_size; ++v) {
        if (us[v] != s_size) continue;
        while (used[next_free]) ++next_free;
        us[v] = next_free;
        used[next_free] = true;
    }

    FactorizationWitness w(n, m, ell, BasisPermutation(std::move(ug)), BasisPermutation(std::move(us)));
    validate_witness(oracle, w);
    return w;
}

void validate_witness(const OracleSpec& oracle, const FactorizationWitness& w) {
    const AbelianGroup& g = oracle.group;
    if (w.main_qubits != g.qubits() || w.aux_qubits != oracle.codomain_bits)
        throw OracleValidationError("witness: register widths do not match the oracle");
    const uint32_t ell = w.bell_pairs;
    const uint32_t low_mask = (ell == 0) ? 0u : ((1u << ell) - 1u);

    // Condition (1): equal values force equal G2 tags.
    std::map<uint32_t, uint32_t> value_tag;
    for (uint32_t x = 0; x < g.order(); ++x) {
        const uint32_t tag = w.u_g.map[x] & low_mask;
        auto [it, inserted] = value_tag.emplace(oracle.table[x], tag);
        if (!inserted && it->second != tag)
            throw OracleValidationError("witness condition 1 violated: value " + std::to_string(oracle.table[x]) +
                                        " occurs with distinct G2 tags");
    }
    // Condition (2a): the S2 part of the transformed value equals the G2 tag.
    for (uint32_t x = 0; x < g.order(); ++x) {
        const uint32_t g2 = w.u_g.map[x] & low_mask;
        const uint32_t s2 = w.u_s.map[oracle.table[x]] & low_mask;
        if (g2 != s2)
            throw OracleValidationError("witness condition 2 violated: S2 tag differs from G2 tag at g = " +
                                        GroupElement::from_index(g, x).to_string());
    }
    // Condition (2b): the S1 part depends only on the G1 part.
    std::map<uint32_t, uint32_t> g1_to_s1;
    for (uint32_t x = 0; x < g.order(); ++x) {
        const uint32_t g1 = w.u_g.map[x] >> ell;
        const uint32_t s1 = w.u_s.map[oracle.table[x]] >> ell;
        auto [it, inserted] = g1_to_s1.emplace(g1, s1);
        if (!inserted && it->second != s1)
            throw OracleValidationError("witness condition 2 violated: S1 part is not a function of G1");
    }
}

WitnessComplexity classify_witness(const FactorizationWitness& w) {
    WitnessComplexity c{};
    c.u_g = w.u_g.is_qubit_relabeling() ? TransformComplexity::qubit_swaps : TransformComplexity::general_permutation;
    c.u_s = w.u_s.is_qubit_relabeling() ? TransformComplexity::qubit_swaps : TransformComplexity::general_permutation;
    const bool swaps =
        c.u_g == TransformComplexity::qubit_swaps && c.u_s == TransformComplexity::qubit_swaps;
    c.overall = swaps ? TransformComplexity::qubit_swaps : TransformComplexity::general_permutation;
    c.bound_label = swaps ? "O(log|K|)" : "O(n*2^n)";
    return c;
}

FactorizationWitness parse_witness(const std::string& text) {
    std::optional<uint32_t> n, m, ell;
    std::vector<uint32_t> ug, us;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto read_u32 = [&](const char* what) {
            uint32_t v;
            if (!(ls >> v)) throw ConfigError(std::string("witness file: bad ") + what);
            return v;
        };
        if (key == "main_qubits")
            n = read_u32("main_qubits");
        else if (key == "aux_qubits")
            m = read_u32("aux_qubits");
        else if (key == "bell_pairs")
            ell = read_u32("bell_pairs");
        else if (key == "u_g") {
            uint32_t v;
            while (ls >> v) ug.push_back(v);
        } else if (key == "u_s") {
            uint32_t v;
            while (ls >> v) us.push_back(v);
        } else
            throw ConfigError("witness file: unknown key '" + key + "'");
    }
    if (!n || !m || !ell) throw ConfigError("witness file: need main_qubits, aux_qubits and bell_pairs");
    try {
        return FactorizationWitness(*n, *m, *ell, BasisPermutation(std::move(ug)), BasisPermutation(std::move(us)));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("witness file: ") + e.what());
    }
}

std::string serialize_witness(const FactorizationWitness& w) {
    std::ostringstream out;
    out << "main_qubits " << w.main_qubits << '\n';
    out << "aux_qubits " << w.aux_qubits << '\n';
    out << "bell_pairs " << w.bell_pairs << '\n';
    out << "u_g";
    for (uint32_t v : w.u_g.map) out << ' ' << v;
    out << "\nu_s";
    for (uint32_t v : w.u_s.map) out << ' ' << v;
    out << '\n';
    return out.str();
}

} // namespace otg
