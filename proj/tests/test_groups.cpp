#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "otg/errors.hpp"
#include "otg/group.hpp"

using namespace otg;

namespace {

GroupElement elem(const AbelianGroup& g, std::vector<uint32_t> coords) { return GroupElement(g, std::move(coords)); }

const std::vector<AbelianGroup>& test_groups() {
    static const std::vector<AbelianGroup> groups{
        AbelianGroup({2}), AbelianGroup({4}), AbelianGroup({8}), AbelianGroup({2, 4}), AbelianGroup({8, 8})};
    return groups;
}

} // namespace

TEST_SUITE_BEGIN("groups");

TEST_CASE("group construction and parsing") {
    CHECK(AbelianGroup({8}).order() == 8);
    CHECK(AbelianGroup({8}).qubits() == 3);
    CHECK(AbelianGroup({2, 4}).order() == 8);
    CHECK(AbelianGroup::parse("Z8").factors() == std::vector<uint32_t>{8});
    CHECK(AbelianGroup::parse("Z2xZ4").factors() == std::vector<uint32_t>{2, 4});
    CHECK(AbelianGroup::parse("Z8xZ8").to_string() == "Z8xZ8");
    CHECK_THROWS_AS(AbelianGroup({6}), std::invalid_argument);      // not a power of two
    CHECK_THROWS_AS(AbelianGroup({4, 2}), std::invalid_argument);   // divisibility chain broken
    CHECK_THROWS_AS(AbelianGroup::parse("Z6"), ConfigError);
    CHECK_THROWS_AS(AbelianGroup::parse("8"), ConfigError);
    CHECK_THROWS_AS(AbelianGroup::parse(""), ConfigError);
}

TEST_CASE("index <-> coords round trip is the big-endian mixed radix") {
    AbelianGroup g({8, 8});
    CHECK(g.index_of({3, 1}) == 25);
    CHECK(g.coords_of(25) == std::vector<uint32_t>{3, 1});
    for (uint32_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.coords_of(i)) == i);
}

TEST_CASE("addition") {
    AbelianGroup z8({8});
    CHECK(add(elem(z8, {5}), elem(z8, {5})).coords == std::vector<uint32_t>{2});
    GroupElement g = elem(z8, {6});
    CHECK(add(g, GroupElement::zero(z8)) == g);

    AbelianGroup z88({8, 8});
    CHECK(add(elem(z88, {3, 1}), elem(z88, {5, 7})).is_zero());

    CHECK_THROWS_AS(add(elem(z8, {1}), GroupElement::zero(z88)), std::invalid_argument);
}

TEST_CASE("span enumerates the generated subgroup") {
    AbelianGroup z8({8});
    CHECK(Subgroup::span(z8, {elem(z8, {4})}).element_indices() == std::vector<uint32_t>{0, 4});
    CHECK(Subgroup::span(z8, {elem(z8, {2})}).element_indices() == std::vector<uint32_t>{0, 2, 4, 6});

    AbelianGroup z88({8, 8});
    Subgroup h = Subgroup::span(z88, {elem(z88, {3, 1})});
    CHECK(h.order() == 8);
    std::set<std::vector<uint32_t>> expect{{0, 0}, {3, 1}, {6, 2}, {1, 3}, {4, 4}, {7, 5}, {2, 6}, {5, 7}};
    std::set<std::vector<uint32_t>> got;
    for (const auto& e : h.elements()) got.insert(e.coords);
    CHECK(got == expect);
}

TEST_CASE("coset decomposition picks the lexicographically minimal representative") {
    AbelianGroup z8({8});
    Subgroup k1 = Subgroup::span(z8, {elem(z8, {4})});
    auto [rep, k] = coset_decompose(elem(z8, {6}), k1);
    CHECK(rep.coords == std::vector<uint32_t>{2});
    CHECK(k.coords == std::vector<uint32_t>{4});

    auto inside = coset_decompose(elem(z8, {4}), k1);
    CHECK(inside.representative.is_zero());
    CHECK(inside.k.coords == std::vector<uint32_t>{4});

    Subgroup k2 = Subgroup::span(z8, {elem(z8, {2})});
    auto odd = coset_decompose(elem(z8, {3}), k2);
    CHECK(odd.representative.coords == std::vector<uint32_t>{1});
    CHECK(odd.k.coords == std::vector<uint32_t>{2});
}

TEST_CASE("coset decomposition inverts by addition") {
    for (const auto& g : test_groups()) {
        for (const auto& sub : enumerate_subgroups(g)) {
            std::set<std::pair<uint32_t, uint32_t>> images;
            for (uint32_t x = 0; x < g.order(); ++x) {
                auto dec = coset_decompose(GroupElement::from_index(g, x), sub);
                CHECK(sub.contains(dec.k));
                CHECK(add(dec.representative, dec.k).index() == x);
                images.insert({dec.representative.index(), dec.k.index()});
            }
            CHECK(images.size() == g.order()); // bijection
        }
    }
}

TEST_CASE("characters") {
    AbelianGroup z8({8});
    CHECK(chi(elem(z8, {2}), elem(z8, {4})) == std::complex<double>{1.0, 0.0});
    const auto w8 = chi(elem(z8, {1}), elem(z8, {1}));
    CHECK(w8.real() == doctest::Approx(std::cos(std::numbers::pi / 4)).epsilon(1e-14));
    CHECK(w8.imag() == doctest::Approx(std::sin(std::numbers::pi / 4)).epsilon(1e-14));
    for (uint32_t x = 0; x < 8; ++x)
        CHECK(chi(GroupElement::zero(z8), GroupElement::from_index(z8, x)) == std::complex<double>{1.0, 0.0});

    AbelianGroup z88({8, 8});
    CHECK_THROWS_AS(chi(elem(z8, {1}), GroupElement::zero(z88)), std::invalid_argument);
}

TEST_CASE("character symmetry and multiplicativity") {
    AbelianGroup g({2, 4});
    for (uint32_t a = 0; a < g.order(); ++a)
        for (uint32_t b = 0; b < g.order(); ++b) {
            CHECK(g.character_exponent(a, b) == g.character_exponent(b, a));
            for (uint32_t c = 0; c < g.order(); ++c) {
                const auto lhs = g.character(a, g.add(b, c));
                const auto rhs = g.character(a, b) * g.character(a, c);
                CHECK(std::abs(lhs - rhs) < 1e-12);
            }
        }
}

TEST_CASE("first orthogonality relation, conjugated inner product") {
    for (const auto& g : test_groups()) {
        for (uint32_t a = 0; a < g.order(); ++a)
            for (uint32_t b = 0; b < g.order(); ++b) {
                std::complex<double> acc = 0.0;
                for (uint32_t h = 0; h < g.order(); ++h) acc += g.character(a, h) * std::conj(g.character(b, h));
                acc /= static_cast<double>(g.order());
                const double expect = a == b ? 1.0 : 0.0;
                CHECK(std::abs(acc - expect) < 1e-12);
            }
    }
}

TEST_CASE("orthogonal subgroup") {
    AbelianGroup z8({8});
    Subgroup h = Subgroup::span(z8, {elem(z8, {4})});
    CHECK(orthogonal_subgroup(h).element_indices() == std::vector<uint32_t>{0, 2, 4, 6});
    CHECK(orthogonal_subgroup(Subgroup::full(z8)).element_indices() == std::vector<uint32_t>{0});
    CHECK(orthogonal_subgroup(Subgroup::trivial(z8)).order() == 8);
}

TEST_CASE("|H_perp| * |H| = |G| across the subgroup lattice") {
    for (const auto& g : test_groups())
        for (const auto& sub : enumerate_subgroups(g))
            CHECK(orthogonal_subgroup(sub).order() * sub.order() == g.order());
}

TEST_CASE("reconstruct_subgroup") {
    AbelianGroup z8({8});
    CHECK(reconstruct_subgroup(z8, {elem(z8, {2})}).element_indices() == std::vector<uint32_t>{0, 4});
    CHECK(reconstruct_subgroup(z8, {GroupElement::zero(z8)}).order() == 8);
    CHECK(reconstruct_subgroup(z8, {elem(z8, {2}), elem(z8, {6})}).element_indices() == std::vector<uint32_t>{0, 4});
    CHECK(reconstruct_subgroup(z8, {}).order() == 8); // no constraint
}

TEST_CASE("reconstruction from the full dual enumeration recovers H exactly") {
    for (const auto& g : test_groups()) {
        for (const auto& sub : enumerate_subgroups(g)) {
            Subgroup perp = orthogonal_subgroup(sub);
            CHECK(reconstruct_subgroup_indices(g, perp.element_indices()) == sub);
        }
    }
}

TEST_CASE("subgroup closure check") {
    AbelianGroup z8({8});
    CHECK_THROWS_AS(Subgroup::from_indices(z8, {0, 3}), std::invalid_argument);
    CHECK(Subgroup::from_indices(z8, {0, 4}).order() == 2);
}

TEST_CASE("subgroup lattice sizes") {
    CHECK(enumerate_subgroups(AbelianGroup({8})).size() == 4);
    CHECK(enumerate_subgroups(AbelianGroup({2, 4})).size() == 8);

    AbelianGroup z8({8});
    Subgroup h = Subgroup::span(z8, {elem(z8, {4})});
    auto ks = intermediate_subgroups(h);
    CHECK(ks.size() == 3); // Z8, <2>, <4>
    CHECK(ks.front().order() == 8);
    CHECK(ks.back().order() == 2);
}

TEST_CASE("subgroup basis decomposition") {
    AbelianGroup z88({8, 8});
    SubgroupBasis kb = subgroup_basis(Subgroup::span(z88, {elem(z88, {3, 1})}));
    CHECK(kb.abstract_group.factors() == std::vector<uint32_t>{8});

    AbelianGroup z24({2, 4});
    SubgroupBasis full = subgroup_basis(Subgroup::full(z24));
    CHECK(full.abstract_group.factors() == std::vector<uint32_t>{2, 4});
    for (uint32_t a = 0; a < full.abstract_group.order(); ++a) CHECK(full.abstract_to_parent[a] == a);

    // Round trip: abstract index -> parent element -> rank -> abstract index.
    for (const auto& g : test_groups()) {
        for (const auto& sub : enumerate_subgroups(g)) {
            if (sub.order() == 1) continue;
            SubgroupBasis basis = subgroup_basis(sub);
            CHECK(basis.abstract_group.order() == sub.order());
            for (uint32_t a = 0; a < sub.order(); ++a) {
                const uint32_t parent = basis.abstract_to_parent[a];
                CHECK(sub.contains_index(parent));
                CHECK(basis.rank_to_abstract[sub.rank_of_index(parent)] == a);
            }
            // The map is a group isomorphism.
            const AbelianGroup& abs = basis.abstract_group;
            for (uint32_t a = 0; a < abs.order(); ++a)
                for (uint32_t b = 0; b < abs.order(); ++b)
                    CHECK(basis.abstract_to_parent[abs.add(a, b)] ==
                          g.add(basis.abstract_to_parent[a], basis.abstract_to_parent[b]));
        }
    }
}

TEST_CASE("element order") {
    AbelianGroup g({2, 4});
    CHECK(element_order(g, 0) == 1);
    CHECK(element_order(g, g.index_of({1, 0})) == 2);
    CHECK(element_order(g, g.index_of({1, 1})) == 4);
}

TEST_SUITE_END();
