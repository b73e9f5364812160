#include "doctest.h"

#include "thv/certificate.hpp"
#include "thv/rng.hpp"

using namespace thv;

namespace {

bool check_failed(const VerificationReport& rep, const std::string& id) {
    for (const auto& c : rep.checks)
        if (c.id == id) return !c.pass;
    return false;
}

} // namespace

TEST_CASE("canonical chain is strictly nested") {
    auto chain = canonical_chain(2);
    REQUIRE(chain.size() == 4);
    CHECK(chain[3].is_whole());
    CHECK(chain[2] == StdInterval(1, 2));          // [1/4,1/2]
    CHECK(chain[1] == StdInterval(1, 2).second_quarter());
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        if (chain[i + 1].is_whole()) continue;
        CHECK(chain[i + 1].contains(chain[i]));
        CHECK(chain[i + 1].left() < chain[i].left());
        CHECK(chain[i].right() < chain[i + 1].right());
    }
}

TEST_CASE("small_support_eps") {
    CHECK(small_support_eps(1) == Dyadic(1, 1));
    CHECK(small_support_eps(2) == Dyadic(1, 2));
    CHECK(small_support_eps(3) == Dyadic(1, 2));
    CHECK(small_support_eps(4) == Dyadic(1, 3));
}

TEST_CASE("build and verify for the basic seeds") {
    for (int k : {1, 2, 3}) {
        auto cp = build_certificate(generator(Gen::P0), k);
        CHECK(verify_certificate(cp).overall);
        auto cb = build_certificate(generator(Gen::B), k);
        CHECK(verify_certificate(cb).overall);
    }
    // full-cover seeds go through the decomposition preprocessing
    auto cc = build_certificate(generator(Gen::C), 2);
    CHECK(verify_certificate(cc).overall);
    auto ca = build_certificate(generator(Gen::A), 2);
    CHECK(verify_certificate(ca).overall);
    auto cid = build_certificate(Element::identity(), 1);
    CHECK(verify_certificate(cid).overall);
    CHECK_THROWS_AS(build_certificate(generator(Gen::B), 0), PreconditionError);
}

TEST_CASE("builder/verifier soundness loop on random elements") {
    Rng rng(113);
    for (int i = 0; i < 12; ++i) {
        Element t = random_element(rng, ElementClass::T, 8);
        Element v = random_element(rng, ElementClass::V, 8);
        for (int k : {1, 2, 3}) {
            CHECK(verify_certificate(build_certificate(t, k, ElementClass::T)).overall);
            CHECK(verify_certificate(build_certificate(v, k, ElementClass::V)).overall);
        }
    }
}

TEST_CASE("json round trip is byte-stable") {
    auto c = build_certificate(generator(Gen::P0), 2);
    std::string j1 = c.json();
    auto c2 = FixpointCertificate::from_json(j1);
    CHECK(c2.json() == j1);
    CHECK(verify_certificate(c2).overall);
}

TEST_CASE("mutation catalog is rejected with named checks") {
    auto base = build_certificate(generator(Gen::P0), 2);
    REQUIRE(verify_certificate(base).overall);

    auto m1 = base; // identity witness cannot displace I_1
    m1.witnesses[0] = Element::identity();
    CHECK(check_failed(verify_certificate(m1), "V3"));

    auto m2 = base; // collapse the chain
    m2.chain[0] = m2.chain[1];
    CHECK(check_failed(verify_certificate(m2), "V0"));

    auto m3 = base; // forget the conjugator
    m3.g0 = Element::identity();
    CHECK(check_failed(verify_certificate(m3), "V1"));

    auto m4 = base; // drop a fact record
    m4.facts.erase(m4.facts.begin());
    CHECK(check_failed(verify_certificate(m4), "V4"));

    auto m5 = base; // witness leaking outside I_{i+1}
    m5.witnesses[1] = block_swap(StdInterval(0, 2), StdInterval(3, 2));
    CHECK(check_failed(verify_certificate(m5), "V2"));

    auto m6 = base; // truncate the chain
    m6.chain.pop_back();
    CHECK(check_failed(verify_certificate(m6), "STRUCT"));

    auto m7 = base; // swap two chain intervals
    std::swap(m7.chain[0], m7.chain[1]);
    CHECK(check_failed(verify_certificate(m7), "V0"));

    auto m8 = base; // wrong citation class
    m8.facts[0].citation = "unrelated";
    CHECK(check_failed(verify_certificate(m8), "V4"));
}

TEST_CASE("displacement implies condition (ii) at cover granularity") {
    Rng rng(127);
    auto cert = build_certificate(generator(Gen::P0), 2);
    REQUIRE(verify_certificate(cert).overall);
    for (size_t i = 0; i < cert.witnesses.size(); ++i) {
        StdInterval cell = cert.chain[i + 1];
        for (int rep = 0; rep < 20; ++rep) {
            // random h supported inside I_i via the chart copy
            Element raw = random_element(rng, ElementClass::V, 4);
            std::vector<Element::Leg> legs;
            for (const auto& l : raw.legs())
                legs.push_back({map_through(l.src, StdInterval::whole(), cell),
                                map_through(l.dst, StdInterval::whole(), cell)});
            DySet rest = DySet(Space::Circle, {cell}).complement();
            for (const auto& p : rest.parts()) legs.push_back({p, p});
            Element h = reduce(Element(std::move(legs)));
            DySet hc = support_cover(h);
            if (hc.is_empty()) continue;
            CHECK(sets_disjoint(image_of(cert.witnesses[i], hc), hc));
        }
    }
}

TEST_CASE("commuting family build and verify") {
    auto cf = build_commuting_family({generator(Gen::B)}, 1);
    CHECK(verify_commuting_family(cf).overall);

    auto empty = build_commuting_family({}, 2);
    CHECK(verify_commuting_family(empty).overall);

    // per-factor grouping of a decomposition
    FactorList fl = decompose_small(generator(Gen::C), Dyadic(1, 2));
    for (const auto& f : fl.factors) {
        auto one = build_commuting_family({f}, 2);
        CHECK(verify_commuting_family(one).overall);
    }

    CHECK_THROWS_AS(build_commuting_family({generator(Gen::A)}, 1), PreconditionError);
}

TEST_CASE("commuting family mutations") {
    auto cf = build_commuting_family({generator(Gen::B)}, 2);
    REQUIRE(verify_commuting_family(cf).overall);

    auto m1 = cf; // overlapping targets
    m1.opens[1] = m1.opens[0];
    CHECK(check_failed(verify_commuting_family(m1), "W1"));

    auto m2 = cf; // mover that does not move
    m2.movers[0] = Element::identity();
    CHECK(check_failed(verify_commuting_family(m2), "W2"));

    auto m3 = cf;
    m3.movers.pop_back();
    CHECK(check_failed(verify_commuting_family(m3), "STRUCT"));

    std::string j = cf.json();
    CHECK(CommutingFamilyCertificate::from_json(j).json() == j);
}

TEST_CASE("W3 never contradicts W1+W2 on families from the builder") {
    Rng rng(131);
    for (int i = 0; i < 10; ++i) {
        FactorList fl = decompose_small(random_element(rng, ElementClass::T, 5), Dyadic(1, 2));
        if (fl.factors.empty()) continue;
        std::vector<Element> members{fl.factors.front()};
        if (fl.factors.size() > 1) members.push_back(fl.factors.back());
        DySet cover = support_cover_of_set(members);
        if (cover.is_whole()) continue;
        auto cf = build_commuting_family(members, 2);
        auto rep = verify_commuting_family(cf, 1234);
        CHECK(rep.overall);
    }
}
