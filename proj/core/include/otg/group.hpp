#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace otg {

/**
 * Finite Abelian 2-group in invariant-factor form,
 *   G = Z/a1 x Z/a2 x ... x Z/am,  a1 | a2 | ... | am,
 * with every a_i a power of two (so |G| is a power of two and the exact
 * power-of-two Fourier transform applies). Elements are addressed either as
 * coordinate tuples or as mixed-radix indices in [0, |G|); the index is the
 * big-endian concatenation of the coordinates' binary digits, matching the
 * qubit layout of a group register.
 */
class AbelianGroup {
  public:
    explicit AbelianGroup(std::vector<uint32_t> invariant_factors);

    /// Parses "Z8", "Z2xZ4", "Z8xZ8", ...
    static AbelianGroup parse(std::string_view text);

    const std::vector<uint32_t>& factors() const { return factors_; }
    uint32_t order() const { return order_; }
    uint32_t qubits() const { return qubits_; }
    size_t rank() const { return factors_.size(); }
    /// Exponent of the group = largest invariant factor.
    uint32_t exponent() const { return factors_.back(); }

    uint32_t index_of(const std::vector<uint32_t>& coords) const;
    std::vector<uint32_t> coords_of(uint32_t index) const;

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;

    /// chi_a(b) as an exponent t of exp(2*pi*i*t/exponent()), reduced mod exponent().
    /// chi_a(b) = 1 exactly iff the returned exponent is 0.
    uint32_t character_exponent(uint32_t a, uint32_t b) const;
    std::complex<double> character(uint32_t a, uint32_t b) const;

    std::string to_string() const;

    bool operator==(const AbelianGroup& other) const { return factors_ == other.factors_; }

  private:
    std::vector<uint32_t> factors_;
    uint32_t order_ = 1;
    uint32_t qubits_ = 0;
};

/// Element of an AbelianGroup, carrying its parent group by value (groups are
/// tiny). All arithmetic checks that both operands live in the same group.
struct GroupElement {
    AbelianGroup group;
    std::vector<uint32_t> coords;

    GroupElement(AbelianGroup g, std::vector<uint32_t> c);
    static GroupElement from_index(const AbelianGroup& g, uint32_t index);
    static GroupElement zero(const AbelianGroup& g);

    uint32_t index() const { return group.index_of(coords); }
    bool is_zero() const;
    std::string to_string() const; // "3" or "3,1"
    /// Inverse of to_string(); throws ConfigError on malformed input.
    static GroupElement parse(const AbelianGroup& g, const std::string& text);

    bool operator==(const GroupElement& other) const;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);

/// chi_g(h); symmetric in its arguments and multiplicative in each.
std::complex<double> chi(const GroupElement& g, const GroupElement& h);

/// Subgroup stored fully enumerated: sorted element indices plus a membership
/// mask over the parent group.
class Subgroup {
  public:
    static Subgroup span(const AbelianGroup& parent, const std::vector<GroupElement>& generators);
    static Subgroup span_indices(const AbelianGroup& parent, const std::vector<uint32_t>& generator_indices);
    /// Builds from an explicit element set; throws if the set is not closed.
    static Subgroup from_indices(const AbelianGroup& parent, std::vector<uint32_t> indices);
    static Subgroup trivial(const AbelianGroup& parent);
    static Subgroup full(const AbelianGroup& parent);

    const AbelianGroup& parent() const { return parent_; }
    const std::vector<uint32_t>& element_indices() const { return elements_; }
    std::vector<GroupElement> elements() const;
    const std::vector<uint32_t>& generator_indices() const { return generators_; }
    uint32_t order() const { return static_cast<uint32_t>(elements_.size()); }
    bool contains_index(uint32_t idx) const { return mask_[idx]; }
    bool contains(const GroupElement& g) const;
    bool is_subgroup_of(const Subgroup& other) const;
    /// Rank of an element within the sorted enumeration; element must be a member.
    uint32_t rank_of_index(uint32_t idx) const;

    std::string to_string() const;
    bool operator==(const Subgroup& other) const;

  private:
    Subgroup(AbelianGroup parent, std::vector<uint32_t> elements, std::vector<uint32_t> generators);

    AbelianGroup parent_;
    std::vector<uint32_t> elements_;  // sorted
    std::vector<bool> mask_;
    std::vector<uint32_t> generators_;
};

/// Splits g = representative + k with k in K and the representative the
/// lexicographically minimal element of the coset g + K. Deterministic.
struct CosetDecomposition {
    GroupElement representative;
    GroupElement k;
};
CosetDecomposition coset_decompose(const GroupElement& g, const Subgroup& K);

/// H_perp = { g : chi_g(h) = 1 for all h in H }, computed by the exact
/// integer character-exponent test.
Subgroup orthogonal_subgroup(const Subgroup& H);

/// Intersection over samples g~ of the character kernels { h : chi_h(g~) = 1 }.
/// No samples means no constraint: returns the full group.
Subgroup reconstruct_subgroup(const AbelianGroup& G, const std::vector<GroupElement>& samples);
Subgroup reconstruct_subgroup_indices(const AbelianGroup& G, const std::vector<uint32_t>& sample_indices);

/// All subgroups of G, found as spans of generator tuples up to rank(G).
std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& G);
/// All K with H <= K <= G, largest first.
std::vector<Subgroup> intermediate_subgroups(const Subgroup& H);

/**
 * Direct-sum decomposition of a subgroup: basis elements b_1..b_r of orders
 * o_1 | ... | o_r with K = <b_1> + ... + <b_r>, plus the induced isomorphism
 * between K and the abstract group Z/o1 x ... x Z/or. Ranks refer to the
 * position of an element in K's sorted enumeration.
 */
struct SubgroupBasis {
    Subgroup sub;
    std::vector<uint32_t> basis_indices;      // in the parent group, orders ascending
    AbelianGroup abstract_group;
    std::vector<uint32_t> rank_to_abstract;   // rank in K -> abstract index
    std::vector<uint32_t> abstract_to_parent; // abstract index -> element index in parent
};
SubgroupBasis subgroup_basis(const Subgroup& K);

uint32_t element_order(const AbelianGroup& G, uint32_t idx);
uint32_t log2_exact(uint32_t power_of_two);

} // namespace otg
