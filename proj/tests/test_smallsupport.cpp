#include "doctest.h"

#include "thv/rng.hpp"
#include "thv/smallsupport.hpp"

using namespace thv;

namespace {

void check_factor_list(const FactorList& fl, const Element& target, const Dyadic& eps) {
    CHECK(equals(fl.product(), target));
    for (const auto& f : fl.factors) CHECK(support_size(f) < eps);
}

} // namespace

TEST_CASE("chart transport round trip") {
    Rng rng(71);
    for (const Chart& c : {kU1, kU2, kU3, kU4}) {
        for (int i = 0; i < 12; ++i) {
            Element f = random_element(rng, ElementClass::V, 5);
            Element g = transport_from_chart(f, c);
            CHECK(equals(restrict_to_chart(g, c), reduce(f)));
            // transported support sits inside the carrier
            Element probe = transport_from_chart(f, c);
            DySet u4(Space::Circle, {StdInterval(3, 2), StdInterval(0, 2)});
            DySet arc = c.wraps() ? u4
                                  : DySet(Space::Circle, standard_cover(c.offset, c.offset + c.length()));
            CHECK(arc.contains(support_cover(probe)));
        }
    }
    CHECK_THROWS_AS(restrict_to_chart(generator(Gen::C), kU1), PreconditionError);
}

TEST_CASE("transport is a homomorphism") {
    Rng rng(73);
    for (int i = 0; i < 10; ++i) {
        Element f = random_element(rng, ElementClass::V, 5);
        Element g = random_element(rng, ElementClass::V, 5);
        CHECK(equals(transport_from_chart(compose(f, g), kU4),
                     compose(transport_from_chart(f, kU4), transport_from_chart(g, kU4))));
    }
}

TEST_CASE("point_mover") {
    Rng rng(79);
    for (int i = 0; i < 40; ++i) {
        Dyadic from(1 + rng.below(63), 6), to(1 + rng.below(63), 6);
        Element m = point_mover(from, to);
        CHECK(evaluate(m, from) == to);
        CHECK(class_of(m) == ElementClass::F);
    }
    CHECK_THROWS_AS(point_mover(Dyadic(0, 0), Dyadic(1, 1)), PreconditionError);
}

TEST_CASE("base factorization of A transcribes the three-factor chain") {
    FactorList fl = base_factorization(Gen::A);
    REQUIRE(fl.factors.size() == 3);
    CHECK(equals(fl.product(), generator(Gen::A)));
    CHECK(carrier_index(fl.factors[0]) == 3); // U3 factor leftmost
    CHECK(carrier_index(fl.factors[1]) == 2);
    CHECK(carrier_index(fl.factors[2]) == 1);
}

TEST_CASE("base factorization of C and P0") {
    FactorList fc = base_factorization(Gen::C);
    CHECK(equals(fc.product(), generator(Gen::C)));
    for (const auto& f : fc.factors) CHECK(carrier_index(f).has_value());
    FactorList fp = base_factorization(Gen::P0);
    CHECK(equals(fp.product(), generator(Gen::P0)));
    for (const auto& f : fp.factors) CHECK(carrier_index(f).has_value());
}

TEST_CASE("f_to_word round trips") {
    CHECK(f_to_word(Element::identity()).letters.empty());
    Word wa = f_to_word(generator(Gen::A));
    REQUIRE(wa.letters.size() == 1);
    CHECK(wa.letters[0] == std::pair<Gen, int>(Gen::A, 1));
    CHECK(equals(eval_word(f_to_word(generator(Gen::B))), generator(Gen::B)));
    Rng rng(83);
    for (int i = 0; i < 40; ++i) {
        Element g = random_element(rng, ElementClass::F, 6);
        Word w = f_to_word(g);
        for (auto [gen, e] : w.letters) {
            (void)e;
            CHECK((gen == Gen::A || gen == Gen::B));
        }
        CHECK(equals(eval_word(w), g));
    }
    CHECK_THROWS_AS(f_to_word(generator(Gen::C)), PreconditionError);
}

TEST_CASE("decompose_small on the named generators") {
    for (Dyadic eps : {Dyadic(1, 2), Dyadic(1, 3)}) {
        for (Gen g : {Gen::A, Gen::B, Gen::C, Gen::P0}) {
            FactorList fl = decompose_small(generator(g), eps);
            check_factor_list(fl, generator(g), eps);
        }
    }
    CHECK(decompose_small(Element::identity(), Dyadic(1, 2)).factors.empty());
    CHECK_THROWS_AS(decompose_small(generator(Gen::A), Dyadic(0, 0)), PreconditionError);
}

TEST_CASE("decompose_small on random F, T and V elements") {
    Rng rng(89);
    for (int i = 0; i < 25; ++i) {
        Element f = random_element(rng, ElementClass::F, 6);
        Element t = random_element(rng, ElementClass::T, 6);
        Element v = random_element(rng, ElementClass::V, 6);
        for (Dyadic eps : {Dyadic(1, 2), Dyadic(1, 3)}) {
            check_factor_list(decompose_small(f, eps), f, eps);
            check_factor_list(decompose_small(t, eps), t, eps);
            check_factor_list(decompose_small(v, eps), v, eps);
        }
    }
}

TEST_CASE("T decompositions stay inside T") {
    Rng rng(97);
    for (int i = 0; i < 15; ++i) {
        Element t = random_element(rng, ElementClass::T, 5);
        FactorList fl = decompose_small(t, Dyadic(1, 2));
        for (const auto& f : fl.factors) CHECK(class_of(f) != ElementClass::V);
    }
}

TEST_CASE("factor supports never cover the whole space at eps <= 1/4") {
    Rng rng(101);
    for (int i = 0; i < 10; ++i) {
        Element v = random_element(rng, ElementClass::V, 5);
        FactorList fl = decompose_small(v, Dyadic(1, 2));
        for (const auto& f : fl.factors) CHECK_FALSE(support_cover(f).is_whole());
    }
}
