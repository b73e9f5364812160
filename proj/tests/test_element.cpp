#include "doctest.h"

#include "thv/element.hpp"
#include "thv/rng.hpp"

using namespace thv;

namespace {

// Independent equality oracle: compare pointwise on 3 sample points per cell
// of the 2^-m grid, m = 2 + max leaf depth of both reduced pairs. An affine
// map on a cell is pinned by 2 points; 3 are conclusive.
bool pointwise_equal(const Element& g, const Element& h) {
    Element rg = reduce(g), rh = reduce(h);
    int m = 0;
    for (const auto& l : rg.legs()) m = std::max({m, l.src.b, l.dst.b});
    for (const auto& l : rh.legs()) m = std::max({m, l.src.b, l.dst.b});
    m += 2;
    for (std::int64_t j = 0; j < (1ll << m); ++j) {
        for (int s = 0; s < 3; ++s) {
            Dyadic x = Dyadic(j, m) + Dyadic(s, m + 2);
            if (evaluate(g, x) != evaluate(h, x)) return false;
        }
    }
    return true;
}

Element elem(std::initializer_list<std::pair<std::pair<std::int64_t, int>, std::pair<std::int64_t, int>>> legs) {
    std::vector<Element::Leg> ls;
    for (auto& [s, d] : legs) ls.push_back({StdInterval(s.first, s.second), StdInterval(d.first, d.second)});
    return Element(std::move(ls));
}

} // namespace

TEST_CASE("generator A matches its tree pair reading") {
    Element a = generator(Gen::A);
    REQUIRE(a.leaf_count() == 3);
    CHECK(a.legs()[0].src == StdInterval(0, 2));
    CHECK(a.legs()[0].dst == StdInterval(0, 1));
    CHECK(a.legs()[1].src == StdInterval(1, 2));
    CHECK(a.legs()[1].dst == StdInterval(2, 2));
    CHECK(a.legs()[2].src == StdInterval(1, 1));
    CHECK(a.legs()[2].dst == StdInterval(3, 2));
    CHECK(class_of(a) == ElementClass::F);
}

TEST_CASE("generator P0 swaps the first two quarters") {
    Element p = generator(Gen::P0);
    CHECK(evaluate(p, Dyadic(1, 3)) == Dyadic(3, 3));
    CHECK(evaluate(p, Dyadic(3, 3)) == Dyadic(1, 3));
    CHECK(evaluate(p, Dyadic(3, 2)) == Dyadic(3, 2));
    CHECK(class_of(p) == ElementClass::V);
    CHECK(equals(compose(p, p), Element::identity()));
}

TEST_CASE("generator C is a cyclic rotation of leaf blocks") {
    Element c = generator(Gen::C);
    CHECK(class_of(c) == ElementClass::T);
    auto perm = c.permutation();
    REQUIRE(perm.size() == 3);
    CHECK(perm[0] == 2);
    CHECK(perm[1] == 0);
    CHECK(perm[2] == 1);
    CHECK(evaluate(c, Dyadic(0, 0)) == Dyadic(3, 2));
    CHECK(class_of(generator(Gen::B)) == ElementClass::F);
}

TEST_CASE("evaluate examples") {
    CHECK(evaluate(generator(Gen::A), Dyadic(1, 3)) == Dyadic(1, 2));
    CHECK(evaluate(generator(Gen::P0), Dyadic(1, 3)) == Dyadic(3, 3));
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        Dyadic x(rng.below(1 << 8), 8);
        CHECK(evaluate(Element::identity(), x) == x);
    }
}

TEST_CASE("compose and invert") {
    Element a = generator(Gen::A);
    CHECK(equals(compose(a, invert(a)), Element::identity()));
    CHECK(equals(compose(Element::identity(), generator(Gen::B)), generator(Gen::B)));
    CHECK(evaluate(compose(a, a), Dyadic(1, 4)) == Dyadic(1, 2));
    CHECK(evaluate(invert(a), Dyadic(1, 2)) == Dyadic(1, 3));
    CHECK(equals(invert(invert(generator(Gen::B))), generator(Gen::B)));
    CHECK(equals(invert(Element::identity()), Element::identity()));
}

TEST_CASE("reduce cancels carets fully") {
    Element a = generator(Gen::A);
    Element e = compose(a, invert(a));
    CHECK(reduce(e).leaf_count() == 1);
    // an unreduced identity on a finer tree
    Element fine = elem({{{0, 2}, {0, 2}}, {{1, 2}, {1, 2}}, {{1, 1}, {1, 1}}});
    CHECK(reduce(fine).leaf_count() == 1);
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        Element g = random_element(rng, ElementClass::V, 8);
        CHECK(reduce(reduce(g)) == reduce(g));
    }
}

TEST_CASE("reduction is independent of refinement order") {
    Rng rng(19);
    for (int i = 0; i < 50; ++i) {
        Element g = random_element(rng, ElementClass::V, 6);
        // refine at random points in two different orders; reduce must agree
        Dyadic p1(1 + rng.below(15), 4), p2(1 + rng.below(15), 4);
        Element r1 = reduce(refine_at(refine_at(g, p1), p2));
        Element r2 = reduce(refine_at(refine_at(g, p2), p1));
        CHECK(r1 == r2);
        CHECK(r1 == reduce(g));
    }
}

TEST_CASE("equals structural vs pointwise oracle") {
    Element a = generator(Gen::A), b = generator(Gen::B);
    CHECK(equals(a, a));
    CHECK_FALSE(equals(compose(a, b), compose(b, a)));
    CHECK_FALSE(pointwise_equal(compose(a, b), compose(b, a)));
    CHECK(equals(compose(generator(Gen::P0), generator(Gen::P0)), Element::identity()));
    Rng rng(23);
    for (int i = 0; i < 60; ++i) {
        Element g = random_element(rng, ElementClass::V, 6);
        Element h = random_element(rng, ElementClass::V, 6);
        CHECK(equals(g, h) == pointwise_equal(g, h));
    }
}

TEST_CASE("evaluation is a homomorphism on the 2^-10 grid") {
    Rng rng(29);
    for (int rep = 0; rep < 8; ++rep) {
        Element g = random_element(rng, ElementClass::V, 6);
        Element h = random_element(rng, ElementClass::V, 6);
        Element gh = compose(g, h);
        for (std::int64_t j = 0; j < (1 << 10); j += 7) {
            Dyadic x(j, 10);
            CHECK(evaluate(gh, x) == evaluate(g, evaluate(h, x)));
        }
    }
}

TEST_CASE("image_of") {
    Element a = generator(Gen::A);
    DySet q(Space::Circle, {StdInterval(0, 2)});
    CHECK(image_of(a, q) == DySet(Space::Circle, {StdInterval(0, 1)}));
    Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        Element g = random_element(rng, ElementClass::V, 6);
        DySet all = DySet::whole(Space::Circle);
        CHECK(set_size(image_of(g, all)) == Dyadic(1, 0));
        CHECK(image_of(Element::identity(), all) == all);
    }
}

TEST_CASE("group axioms on random words") {
    Rng rng(37);
    for (int i = 0; i < 60; ++i) {
        Element x = random_element(rng, ElementClass::V, 6);
        Element y = random_element(rng, ElementClass::V, 6);
        Element z = random_element(rng, ElementClass::V, 6);
        CHECK(equals(compose(compose(x, y), z), compose(x, compose(y, z))));
        CHECK(equals(compose(x, Element::identity()), x));
        CHECK(equals(compose(x, invert(x)), Element::identity()));
        CHECK(equals(compose(invert(x), x), Element::identity()));
    }
}

TEST_CASE("class closure under compose, invert, reduce") {
    Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        Element g = random_element(rng, ElementClass::T, 6);
        Element h = random_element(rng, ElementClass::T, 6);
        CHECK(class_of(compose(g, h)) != ElementClass::V);
        CHECK(class_of(invert(g)) != ElementClass::V);
        Element f = random_element(rng, ElementClass::F, 6);
        Element f2 = random_element(rng, ElementClass::F, 6);
        CHECK(class_of(compose(f, f2)) == ElementClass::F);
    }
}

TEST_CASE("eval_word") {
    CHECK(equals(eval_word(Word{}), Element::identity()));
    CHECK(equals(eval_word(Word::parse("A A^-1")), Element::identity()));
    CHECK(equals(eval_word(Word::parse("P0^2")), Element::identity()));
    CHECK(equals(eval_word(Word::parse("A B")), compose(generator(Gen::A), generator(Gen::B))));
    CHECK_THROWS_AS(eval_word(Word::parse("C"), ElementClass::F), PreconditionError);
    CHECK_THROWS_AS(eval_word(Word::parse("P0"), ElementClass::T), PreconditionError);
    CHECK_THROWS_AS(Word::parse("Q"), UsageError);
}
