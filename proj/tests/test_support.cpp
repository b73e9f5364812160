#include "doctest.h"

#include "thv/rng.hpp"
#include "thv/support.hpp"

using namespace thv;

namespace {

// Copy of g acting inside the chart K, identity elsewhere.
Element copy_into(const Element& g, const StdInterval& k) {
    std::vector<Element::Leg> legs;
    for (const auto& l : g.legs())
        legs.push_back({map_through(l.src, StdInterval::whole(), k),
                        map_through(l.dst, StdInterval::whole(), k)});
    DySet rest = DySet(Space::Line, {k}).complement();
    for (const auto& p : rest.parts()) legs.push_back({p, p});
    return reduce(Element(std::move(legs)));
}

} // namespace

TEST_CASE("moved examples") {
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        Dyadic x(rng.below(256), 8);
        CHECK_FALSE(moved(Element::identity(), x));
    }
    CHECK_FALSE(moved(generator(Gen::B), Dyadic(1, 2)));
    CHECK(moved(generator(Gen::A), Dyadic(1, 3)));
}

TEST_CASE("support covers of the generators") {
    CHECK(support_cover(Element::identity()).is_empty());
    CHECK(support_cover(generator(Gen::B)) == DySet(Space::Circle, {StdInterval(1, 1)}));
    CHECK(support_size(generator(Gen::B)) == Dyadic(1, 1));
    CHECK(support_cover(generator(Gen::P0)) == DySet(Space::Circle, {StdInterval(0, 1)}));
    CHECK(support_size(generator(Gen::A)) == Dyadic(1, 0));
    CHECK(support_size(Element::identity()) == Dyadic(0, 0));
}

TEST_CASE("support of a set of elements") {
    CHECK(support_cover_of_set({}).is_empty());
    CHECK(support_cover_of_set({generator(Gen::B), generator(Gen::P0)}).is_whole());
    Element b = generator(Gen::B);
    CHECK(support_cover_of_set({b}) == support_cover(b));
}

TEST_CASE("soundness: moved points lie in the cover") {
    Rng rng(43);
    for (int rep = 0; rep < 30; ++rep) {
        Element g = random_element(rng, ElementClass::V, 6);
        DySet cover = support_cover(g);
        for (std::int64_t j = 0; j < (1 << 9); j += 3) {
            Dyadic x(j, 9);
            if (moved(g, x)) CHECK(cover.contains_point(x));
        }
    }
}

TEST_CASE("pointwise conjugation equivariance") {
    Rng rng(47);
    for (int checks = 0; checks < 300; ++checks) {
        Element g = random_element(rng, ElementClass::V, 5);
        Element h = random_element(rng, ElementClass::V, 5);
        Element conj = compose(g, compose(h, invert(g)));
        Dyadic x(rng.below(1 << 9), 9);
        CHECK(moved(conj, evaluate(g, x)) == moved(h, x));
    }
}

TEST_CASE("disjoint covers force commutation") {
    Rng rng(53);
    for (int i = 0; i < 60; ++i) {
        Element g = copy_into(random_element(rng, ElementClass::V, 5), StdInterval(0, 2));
        Element h = copy_into(random_element(rng, ElementClass::V, 5), StdInterval(2, 2));
        REQUIRE(sets_disjoint(support_cover(g), support_cover(h)));
        CHECK(equals(compose(g, h), compose(h, g)));
    }
}

TEST_CASE("monotonicity of covers under composition") {
    Rng rng(61);
    for (int i = 0; i < 60; ++i) {
        Element g = random_element(rng, ElementClass::V, 5);
        Element h = random_element(rng, ElementClass::V, 5);
        DySet u = support_cover(g).unite(support_cover(h));
        CHECK(u.contains(support_cover(compose(g, h))));
    }
}
