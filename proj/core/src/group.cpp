#include "otg/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "otg/errors.hpp"

namespace otg {

namespace {

bool is_power_of_two(uint32_t x) { return x != 0 && (x & (x - 1)) == 0; }

} // namespace

uint32_t log2_exact(uint32_t power_of_two) {
    if (!is_power_of_two(power_of_two))
        throw std::invalid_argument("log2_exact: " + std::to_string(power_of_two) + " is not a power of two");
    uint32_t n = 0;
    while ((1u << n) < power_of_two) ++n;
    return n;
}

AbelianGroup::AbelianGroup(std::vector<uint32_t> invariant_factors) : factors_(std::move(invariant_factors)) {
    if (factors_.empty())
        throw std::invalid_argument("AbelianGroup: need at least one invariant factor");
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2 || !is_power_of_two(factors_[i]))
            throw std::invalid_argument("AbelianGroup: factor " + std::to_string(factors_[i]) +
                                        " is not a power of two >= 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw std::invalid_argument("AbelianGroup: invariant factors must form a divisibility chain");
    }
    for (uint32_t a : factors_) {
        if (order_ > (1u << 20) / a)
            throw std::invalid_argument("AbelianGroup: order too large for desk-scale use");
        order_ *= a;
    }
    qubits_ = log2_exact(order_);
}

AbelianGroup AbelianGroup::parse(std::string_view text) {
    std::vector<uint32_t> factors;
    size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'Z' && text[pos] != 'z')
            throw ConfigError("group spec: expected 'Z' at position " + std::to_string(pos) + " in '" +
                              std::string(text) + "'");
        ++pos;
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ConfigError("group spec: missing modulus in '" + std::string(text) + "'");
        factors.push_back(static_cast<uint32_t>(std::stoul(std::string(text.substr(start, pos - start)))));
        if (pos < text.size()) {
            if (text[pos] != 'x' && text[pos] != 'X')
                throw ConfigError("group spec: expected 'x' separator in '" + std::string(text) + "'");
            ++pos;
        }
    }
    if (factors.empty()) throw ConfigError("group spec: empty");
    try {
        return AbelianGroup(std::move(factors));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("group spec: ") + e.what());
    }
}

uint32_t AbelianGroup::index_of(const std::vector<uint32_t>& coords) const {
    if (coords.size() != factors_.size())
        throw std::invalid_argument("index_of: coordinate count mismatch");
    uint32_t idx = 0;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= factors_[i]) throw std::out_of_range("index_of: coordinate out of range");
        idx = idx * factors_[i] + coords[i];
    }
    return idx;
}

std::vector<uint32_t> AbelianGroup::coords_of(uint32_t index) const {
    if (index >= order_) throw std::out_of_range("coords_of: index out of range");
    std::vector<uint32_t> coords(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
        coords[i] = index % factors_[i];
        index /= factors_[i];
    }
    return coords;
}

uint32_t AbelianGroup::add(uint32_t a, uint32_t b) const {
    auto ca = coords_of(a), cb = coords_of(b);
    for (size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % factors_[i];
    return index_of(ca);
}

uint32_t AbelianGroup::neg(uint32_t a) const {
    auto ca = coords_of(a);
    for (size_t i = 0; i < ca.size(); ++i) ca[i] = (factors_[i] - ca[i]) % factors_[i];
    return index_of(ca);
}

uint32_t AbelianGroup::character_exponent(uint32_t a, uint32_t b) const {
    // chi_a(b) = prod_i w_{a_i}^{a_i-th coords product}; collect everything as a
    // single root of unity of order exponent().
    const uint32_t L = exponent();
    auto ca = coords_of(a), cb = coords_of(b);
    uint64_t t = 0;
    for (size_t i = 0; i < ca.size(); ++i) {
        uint64_t partial = (static_cast<uint64_t>(ca[i]) * cb[i]) % factors_[i];
        t = (t + partial * (L / factors_[i])) % L;
    }
    return static_cast<uint32_t>(t);
}

std::complex<double> AbelianGroup::character(uint32_t a, uint32_t b) const {
    const uint32_t t = character_exponent(a, b);
    if (t == 0) return {1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(exponent());
    return {std::cos(angle), std::sin(angle)};
}

std::string AbelianGroup::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << 'x';
        out << 'Z' << factors_[i];
    }
    return out.str();
}

GroupElement::GroupElement(AbelianGroup g, std::vector<uint32_t> c) : group(std::move(g)), coords(std::move(c)) {
    group.index_of(coords); // validates
}

GroupElement GroupElement::from_index(const AbelianGroup& g, uint32_t index) {
    return GroupElement(g, g.coords_of(index));
}

GroupElement GroupElement::zero(const AbelianGroup& g) {
    return GroupElement(g, std::vector<uint32_t>(g.rank(), 0));
}

bool GroupElement::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](uint32_t c) { return c == 0; });
}

std::string GroupElement::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out << ',';
        out << coords[i];
    }
    return out.str();
}

GroupElement GroupElement::parse(const AbelianGroup& g, const std::string& text) {
    std::vector<uint32_t> coords;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            size_t used = 0;
            const unsigned long v = std::stoul(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            coords.push_back(static_cast<uint32_t>(v));
        } catch (...) {
            throw ConfigError("cannot parse element coordinate '" + part + "'");
        }
    }
    if (coords.size() != g.rank())
        throw ConfigError("element '" + text + "' has " + std::to_string(coords.size()) + " coordinates, expected " +
                          std::to_string(g.rank()));
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i] >= g.factors()[i]) throw ConfigError("element '" + text + "' has a coordinate out of range");
    return GroupElement(g, std::move(coords));
}

bool GroupElement::operator==(const GroupElement& other) const {
    return group == other.group && coords == other.coords;
}

namespace {

void require_same_group(const GroupElement& a, const GroupElement& b, const char* op) {
    if (!(a.group == b.group))
        throw std::invalid_argument(std::string(op) + ": elements of different groups");
}

} // namespace

GroupElement add(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b, "add");
    return GroupElement::from_index(a.group, a.group.add(a.index(), b.index()));
}

GroupElement neg(const GroupElement& a) { return GroupElement::from_index(a.group, a.group.neg(a.index())); }

std::complex<double> chi(const GroupElement& g, const GroupElement& h) {
    require_same_group(g, h, "chi");
    return g.group.character(g.index(), h.index());
}

Subgroup::Subgroup(AbelianGroup parent, std::vector<uint32_t> elements, std::vector<uint32_t> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(generators)) {
    mask_.assign(parent_.order(), false);
    for (uint32_t e : elements_) mask_[e] = true;
}

Subgroup Subgroup::span_indices(const AbelianGroup& parent, const std::vector<uint32_t>& generator_indices) {
    for (uint32_t g : generator_indices)
        if (g >= parent.order()) throw std::out_of_range("span: generator index out of range");
    // Closure under addition; inverses come for free in a finite group.
    std::vector<bool> seen(parent.order(), false);
    std::vector<uint32_t> queue{0};
    seen[0] = true;
    for (size_t head = 0; head < queue.size(); ++head) {
        for (uint32_t g : generator_indices) {
            uint32_t next = parent.add(queue[head], g);
            if (!seen[next]) {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return Subgroup(parent, std::move(queue), generator_indices);
}

Subgroup Subgroup::span(const AbelianGroup& parent, const std::vector<GroupElement>& generators) {
    std::vector<uint32_t> idx;
    idx.reserve(generators.size());
    for (const auto& g : generators) {
        if (!(g.group == parent)) throw std::invalid_argument("span: generator from a different group");
        idx.push_back(g.index());
    }
    return span_indices(parent, idx);
}

Subgroup Subgroup::from_indices(const AbelianGroup& parent, std::vector<uint32_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    Subgroup candidate = span_indices(parent, indices);
    if (candidate.element_indices() != indices)
        throw std::invalid_argument("from_indices: element set is not closed under the group operation");
    return candidate;
}

Subgroup Subgroup::trivial(const AbelianGroup& parent) { return span_indices(parent, {}); }

Subgroup Subgroup::full(const AbelianGroup& parent) {
    // The rank generators (0,..,1,..,0) span the whole group.
    std::vector<uint32_t> gens;
    for (size_t i = 0; i < parent.rank(); ++i) {
        std::vector<uint32_t> coords(parent.rank(), 0);
        coords[i] = 1;
        gens.push_back(parent.index_of(coords));
    }
    return span_indices(parent, gens);
}

std::vector<GroupElement> Subgroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(elements_.size());
    for (uint32_t idx : elements_) out.push_back(GroupElement::from_index(parent_, idx));
    return out;
}

bool Subgroup::contains(const GroupElement& g) const {
    if (!(g.group == parent_)) return false;
    return mask_[g.index()];
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
    if (!(parent_ == other.parent_)) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](uint32_t e) { return other.mask_[e]; });
}

uint32_t Subgroup::rank_of_index(uint32_t idx) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), idx);
    if (it == elements_.end() || *it != idx) throw std::out_of_range("rank_of_index: not a member");
    return static_cast<uint32_t>(it - elements_.begin());
}

std::string Subgroup::to_string() const {
    std::ostringstream out;
    out << '{';
    for (size_t i = 0; i < elements_.size(); ++i) {
        if (i) out << "; ";
        out << GroupElement::from_index(parent_, elements_[i]).to_string();
    }
    out << '}';
    return out.str();
}

bool Subgroup::operator==(const Subgroup& other) const {
    return parent_ == other.parent_ && elements_ == other.elements_;
}

CosetDecomposition coset_decompose(const GroupElement& g, const Subgroup& K) {
    if (!(g.group == K.parent())) throw std::invalid_argument("coset_decompose: group mismatch");
    const AbelianGroup& G = g.group;
    const uint32_t gi = g.index();
    // Lexicographically minimal coordinate tuple == minimal mixed-radix index.
    uint32_t rep = G.order();
    for (uint32_t k : K.element_indices()) rep = std::min(rep, G.add(gi, k));
    const uint32_t k = G.add(gi, G.neg(rep));
    return {GroupElement::from_index(G, rep), GroupElement::from_index(G, k)};
}

Subgroup orthogonal_subgroup(const Subgroup& H) {
    const AbelianGroup& G = H.parent();
    std::vector<uint32_t> members;
    for (uint32_t g = 0; g < G.order(); ++g) {
        bool ok = true;
        for (uint32_t h : H.element_indices()) {
            if (G.character_exponent(g, h) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) members.push_back(g);
    }
    return Subgroup::from_indices(G, std::move(members));
}

Subgroup reconstruct_subgroup_indices(const AbelianGroup& G, const std::vector<uint32_t>& sample_indices) {
    std::vector<uint32_t> members;
    for (uint32_t h = 0; h < G.order(); ++h) {
        bool ok = true;
        for (uint32_t s : sample_indices) {
            if (G.character_exponent(h, s) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) members.push_back(h);
    }
    return Subgroup::from_indices(G, std::move(members));
}

Subgroup reconstruct_subgroup(const AbelianGroup& G, const std::vector<GroupElement>& samples) {
    std::vector<uint32_t> idx;
    idx.reserve(samples.size());
    for (const auto& s : samples) {
        if (!(s.group == G)) throw std::invalid_argument("reconstruct_subgroup: sample from a different group");
        idx.push_back(s.index());
    }
    return reconstruct_subgroup_indices(G, idx);
}

uint32_t element_order(const AbelianGroup& G, uint32_t idx) {
    uint32_t order = 1;
    uint32_t acc = idx;
    while (acc != 0) {
        acc = G.add(acc, idx);
        ++order;
    }
    return order;
}

std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& G) {
    // Every subgroup of a rank-r group is generated by at most r elements, so
    // spans of r-tuples cover the lattice. Dedupe by element set.
    std::set<std::vector<uint32_t>> seen;
    std::vector<Subgroup> out;
    std::vector<uint32_t> gens(G.rank(), 0);
    const uint32_t n = G.order();
    uint64_t total = 1;
    for (size_t i = 0; i < G.rank(); ++i) total *= n;
    for (uint64_t combo = 0; combo < total; ++combo) {
        uint64_t c = combo;
        for (size_t i = 0; i < G.rank(); ++i) {
            gens[i] = static_cast<uint32_t>(c % n);
            c /= n;
        }
        Subgroup s = Subgroup::span_indices(G, gens);
        if (seen.insert(s.element_indices()).second) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a.element_indices() < b.element_indices();
    });
    return out;
}

std::vector<Subgroup> intermediate_subgroups(const Subgroup& H) {
    std::vector<Subgroup> out;
    for (auto& K : enumerate_subgroups(H.parent()))
        if (H.is_subgroup_of(K)) out.push_back(std::move(K));
    return out;
}

SubgroupBasis subgroup_basis(const Subgroup& K) {
    const AbelianGroup& G = K.parent();
    if (K.order() == 1)
        throw std::invalid_argument("subgroup_basis: trivial subgroup has no basis");

    // Greedy basis extraction for a finite abelian 2-group: repeatedly take a
    // maximal-order element whose cyclic span meets the current span trivially.
    std::vector<uint32_t> basis;
    Subgroup span_so_far = Subgroup::trivial(G);
    while (span_so_far.order() < K.order()) {
        uint32_t best = 0, best_order = 0;
        for (uint32_t e : K.element_indices()) {
            if (e == 0) continue;
            const uint32_t ord = element_order(G, e);
            if (ord <= best_order) continue;
            bool clean = true;
            uint32_t acc = e;
            while (acc != 0) {
                if (span_so_far.contains_index(acc)) {
                    clean = false;
                    break;
                }
                acc = G.add(acc, e);
            }
            if (clean) {
                best = e;
                best_order = ord;
            }
        }
        if (best_order == 0)
            throw std::logic_error("subgroup_basis: basis extraction failed");
        basis.push_back(best);
        std::vector<uint32_t> gens = basis;
        span_so_far = Subgroup::span_indices(G, gens);
    }

    std::stable_sort(basis.begin(), basis.end(),
                     [&](uint32_t a, uint32_t b) { return element_order(G, a) < element_order(G, b); });

    std::vector<uint32_t> orders;
    orders.reserve(basis.size());
    for (uint32_t b : basis) orders.push_back(element_order(G, b));

    SubgroupBasis result{K, basis, AbelianGroup(orders), {}, {}};
    const AbelianGroup& A = result.abstract_group;
    if (A.order() != K.order()) throw std::logic_error("subgroup_basis: order mismatch after extraction");

    result.abstract_to_parent.assign(A.order(), 0);
    result.rank_to_abstract.assign(K.order(), 0);
    std::vector<bool> hit(G.order(), false);
    for (uint32_t a = 0; a < A.order(); ++a) {
        auto t = A.coords_of(a);
        uint32_t elem = 0;
        for (size_t i = 0; i < basis.size(); ++i)
            for (uint32_t rep = 0; rep < t[i]; ++rep) elem = G.add(elem, basis[i]);
        if (hit[elem]) throw std::logic_error("subgroup_basis: combination map is not injective");
        hit[elem] = true;
        result.abstract_to_parent[a] = elem;
        result.rank_to_abstract[K.rank_of_index(elem)] = a;
    }
    return result;
}

} // namespace otg
