#include "doctest.h"

#include "thv/qadic.hpp"
#include "thv/rng.hpp"

using namespace thv;

namespace {

QElement random_qelement(Rng& rng, const PermGroupSpec& g) {
    int q = g.q();
    auto random_division = [&](int splits) {
        std::vector<QWord> words{QWord{}};
        for (int i = 0; i < splits; ++i) {
            size_t pick = static_cast<size_t>(rng.below(static_cast<int>(words.size())));
            QWord base = words[pick];
            words.erase(words.begin() + static_cast<std::ptrdiff_t>(pick));
            for (int a = 0; a < q; ++a) {
                QWord c = base;
                c.push_back(static_cast<std::uint8_t>(a));
                words.push_back(c);
            }
        }
        return words;
    };
    int splits = 1 + rng.below(3);
    auto dom = random_division(splits);
    auto ran = random_division(splits);
    for (size_t i = dom.size(); i > 1; --i)
        std::swap(ran[i - 1], ran[static_cast<size_t>(rng.below(static_cast<int>(i)))]);
    QElement v;
    v.q = q;
    for (size_t i = 0; i < dom.size(); ++i) {
        const auto& closure = g.closure();
        Perm sigma = closure[static_cast<size_t>(rng.below(static_cast<int>(closure.size())))];
        v.rules.push_back({dom[i], ran[i], sigma});
    }
    return q_normalize(v);
}

} // namespace

TEST_CASE("permutations") {
    Perm id = perm_identity(3);
    CHECK(perm_str(id) == "id");
    Perm c = perm_parse("(0 1 2)", 3);
    CHECK(c[0] == 1);
    CHECK(c[1] == 2);
    CHECK(c[2] == 0);
    CHECK(perm_str(c) == "(0 1 2)");
    CHECK(perm_compose(c, perm_invert(c)) == id);
    CHECK(perm_parse(perm_str(perm_invert(c)), 3) == perm_invert(c));
    CHECK(PermGroupSpec::symmetric(3).closure().size() == 6);
    CHECK(PermGroupSpec::trivial(4).closure().size() == 1);
    CHECK_THROWS_AS(perm_parse("(0 0)", 3), UsageError);
}

TEST_CASE("divisions") {
    int q = 2;
    CHECK(is_division({QWord{}}, q));
    CHECK(is_division({{0}, {1}}, q));
    CHECK(is_division({{0}, {1, 0}, {1, 1}}, q));
    CHECK_FALSE(is_division({{0}}, q));
    CHECK_FALSE(is_division({{0}, {1}, {1, 0}}, q));
    CHECK(is_division({{0}, {1}, {2}}, 3));
}

TEST_CASE("q_apply examples") {
    QElement id2 = QElement::identity(2);
    CHECK(q_apply(id2, {0, 1, 1}) == QWord{0, 1, 1});

    QElement twist;
    twist.q = 3;
    twist.rules.push_back({{}, {}, perm_parse("(0 1 2)", 3)});
    CHECK(q_apply(twist, {0, 0, 2}) == QWord{1, 1, 0});

    QElement swap2;
    swap2.q = 2;
    swap2.rules.push_back({{0}, {1}, perm_identity(2)});
    swap2.rules.push_back({{1}, {0}, perm_identity(2)});
    CHECK(q_apply(swap2, {0, 1, 1}) == QWord{1, 1, 1});
    CHECK_THROWS_AS(q_apply(swap2, {}), PreconditionError);
}

TEST_CASE("normalize merges sibling families") {
    QElement split;
    split.q = 2;
    split.rules.push_back({{0}, {0}, perm_identity(2)});
    split.rules.push_back({{1}, {1}, perm_identity(2)});
    CHECK(q_normalize(split) == QElement::identity(2));

    QElement t;
    t.q = 2;
    Perm flip = perm_parse("(0 1)", 2);
    t.rules.push_back({{0}, {1}, flip});
    t.rules.push_back({{1}, {0}, flip});
    QElement merged = q_normalize(t);
    CHECK(merged.rules.size() == 1);
    CHECK(merged.rules[0].sigma == flip);

    Rng rng(151);
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);
    for (int i = 0; i < 40; ++i) {
        QElement v = random_qelement(rng, s3);
        QElement fine;
        fine.q = v.q;
        for (const auto& r : v.rules)
            for (int a = 0; a < v.q; ++a) {
                QRule f = r;
                f.w.push_back(static_cast<std::uint8_t>(a));
                f.wp.push_back(r.sigma[static_cast<size_t>(a)]);
                fine.rules.push_back(f);
            }
        CHECK(q_normalize(fine) == v);
    }
}

TEST_CASE("group laws via q_equals") {
    Rng rng(157);
    for (const PermGroupSpec& g : {PermGroupSpec::trivial(2), PermGroupSpec::symmetric(3)}) {
        for (int i = 0; i < 40; ++i) {
            QElement a = random_qelement(rng, g);
            QElement b = random_qelement(rng, g);
            QElement c = random_qelement(rng, g);
            CHECK(q_equals(q_compose(q_compose(a, b), c), q_compose(a, q_compose(b, c))));
            CHECK(q_equals(q_compose(a, q_invert(a)), QElement::identity(g.q())));
            CHECK(q_equals(q_compose(QElement::identity(g.q()), a), a));
            CHECK(q_equals(q_invert(q_invert(a)), a));
            q_validate(q_compose(a, b), g);
        }
    }
}

TEST_CASE("pointwise oracle agrees with structural equality") {
    Rng rng(163);
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);
    auto words_of_length = [](int q, size_t len) {
        std::vector<QWord> out{QWord{}};
        for (size_t i = 0; i < len; ++i) {
            std::vector<QWord> next;
            for (const auto& w : out)
                for (int a = 0; a < q; ++a) {
                    QWord c = w;
                    c.push_back(static_cast<std::uint8_t>(a));
                    next.push_back(c);
                }
            out = std::move(next);
        }
        return out;
    };
    for (int i = 0; i < 25; ++i) {
        QElement a = random_qelement(rng, s3);
        QElement b = random_qelement(rng, s3);
        size_t maxlen = 1;
        for (const auto& r : a.rules) maxlen = std::max(maxlen, r.w.size());
        for (const auto& r : b.rules) maxlen = std::max(maxlen, r.w.size());
        bool pointwise = true;
        for (const auto& u : words_of_length(3, maxlen + 1))
            pointwise = pointwise && q_apply(a, u) == q_apply(b, u);
        CHECK(pointwise == q_equals(a, b));
        CHECK(q_equals(a, a));
    }
}

TEST_CASE("kraft identity on produced divisions") {
    Rng rng(167);
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);
    for (int i = 0; i < 30; ++i) {
        QElement v = q_compose(random_qelement(rng, s3), random_qelement(rng, s3));
        std::vector<QWord> dom, ran;
        for (const auto& r : v.rules) {
            dom.push_back(r.w);
            ran.push_back(r.wp);
        }
        CHECK(is_division(dom, 3));
        CHECK(is_division(ran, 3));
    }
}

TEST_CASE("support covers") {
    CHECK(q_support_cover(QElement::identity(2)).empty());
    CHECK(q_support_size(QElement::identity(3)) == QFraction{0, 1});

    QElement swap2;
    swap2.q = 2;
    swap2.rules.push_back({{0}, {1}, perm_identity(2)});
    swap2.rules.push_back({{1}, {0}, perm_identity(2)});
    auto cover = q_support_cover(swap2);
    REQUIRE(cover.size() == 1);
    CHECK(cover[0].empty());
    CHECK(q_support_size(swap2) == QFraction{1, 1});

    QElement third;
    third.q = 3;
    Perm id3 = perm_identity(3);
    third.rules.push_back({{0}, {0}, id3});
    third.rules.push_back({{1}, {1}, id3});
    third.rules.push_back({{2}, {2}, perm_parse("(0 1)", 3)});
    CHECK(q_support_cover(third) == std::vector<QWord>{{2}});
    CHECK(q_support_size(third) == QFraction{1, 3});
}

TEST_CASE("disjoint cylinder supports commute") {
    Rng rng(173);
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);
    for (int i = 0; i < 30; ++i) {
        QElement a = random_qelement(rng, s3);
        QElement b = random_qelement(rng, s3);
        auto shift = [](const QElement& v, std::uint8_t prefix) {
            QElement out;
            out.q = v.q;
            Perm id = perm_identity(v.q);
            for (const auto& r : v.rules) {
                QWord w{prefix}, wp{prefix};
                w.insert(w.end(), r.w.begin(), r.w.end());
                wp.insert(wp.end(), r.wp.begin(), r.wp.end());
                out.rules.push_back({w, wp, r.sigma});
            }
            for (std::uint8_t d = 0; d < static_cast<std::uint8_t>(v.q); ++d)
                if (d != prefix) out.rules.push_back({{d}, {d}, id});
            return q_normalize(out);
        };
        QElement a0 = shift(a, 0), b2 = shift(b, 2);
        CHECK(q_equals(q_compose(a0, b2), q_compose(b2, a0)));
    }
}

TEST_CASE("q=2 trivial twist matches tree pairs") {
    Rng rng(179);
    for (int i = 0; i < 50; ++i) {
        Element g = random_element(rng, ElementClass::V, 6);
        Element h = random_element(rng, ElementClass::V, 6);
        QElement qg = qelement_from_element(g);
        QElement qh = qelement_from_element(h);
        CHECK(equals(element_from_qelement(qg), g));
        CHECK(q_equals(qelement_from_element(compose(g, h)), q_compose(qg, qh)));
        CHECK(q_equals(qelement_from_element(invert(g)), q_invert(qg)));
        Dyadic ds = support_size(g);
        QFraction qs = q_support_size(qg);
        CHECK(Dyadic(qs.num, 0) == ds * Dyadic(qs.den, 0));
    }
}

TEST_CASE("rule table text round trip") {
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);
    Rng rng(181);
    for (int i = 0; i < 30; ++i) {
        QElement v = random_qelement(rng, s3);
        CHECK(QElement::parse(v.str(), 3) == v);
    }
    QElement id2 = QElement::identity(2);
    CHECK(QElement::parse("- -> - ; id", 2) == id2);
}

TEST_CASE("q certificates build and verify") {
    PermGroupSpec triv2 = PermGroupSpec::trivial(2);
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);

    auto cid = q_build_certificate(QElement::identity(2), 2, triv2);
    CHECK(q_verify_certificate(cid).overall);

    QElement vs;
    vs.q = 3;
    vs.rules.push_back({{0}, {0}, perm_parse("(0 1 2)", 3)});
    vs.rules.push_back({{1}, {1}, perm_identity(3)});
    vs.rules.push_back({{2}, {2}, perm_identity(3)});
    auto c1 = q_build_certificate(vs, 2, s3);
    CHECK(q_verify_certificate(c1).overall);
    CHECK(QCertificate::from_json(c1.json()).json() == c1.json());

    Rng rng(191);
    for (int i = 0; i < 10; ++i) {
        QElement raw = random_qelement(rng, s3);
        QElement shifted;
        shifted.q = 3;
        Perm id = perm_identity(3);
        shifted.rules.push_back({{0}, {0}, id});
        shifted.rules.push_back({{2}, {2}, id});
        for (const auto& r : raw.rules) {
            QWord w{1}, wp{1};
            w.insert(w.end(), r.w.begin(), r.w.end());
            wp.insert(wp.end(), r.wp.begin(), r.wp.end());
            shifted.rules.push_back({w, wp, r.sigma});
        }
        shifted = q_normalize(shifted);
        if (q_support_cover(shifted).empty()) continue;
        auto cert = q_build_certificate(shifted, 2, s3);
        CHECK(q_verify_certificate(cert).overall);
    }

    QElement swap2;
    swap2.q = 2;
    swap2.rules.push_back({{0}, {1}, perm_identity(2)});
    swap2.rules.push_back({{1}, {0}, perm_identity(2)});
    CHECK_THROWS_AS(q_build_certificate(swap2, 2, triv2), PreconditionError);
}

TEST_CASE("q certificate mutations fail by name") {
    PermGroupSpec s3 = PermGroupSpec::symmetric(3);
    QElement vs;
    vs.q = 3;
    vs.rules.push_back({{0}, {0}, perm_parse("(0 1 2)", 3)});
    vs.rules.push_back({{1}, {1}, perm_identity(3)});
    vs.rules.push_back({{2}, {2}, perm_identity(3)});
    auto base = q_build_certificate(vs, 2, s3);
    REQUIRE(q_verify_certificate(base).overall);

    auto failed = [](const VerificationReport& rep, const std::string& id) {
        for (const auto& c : rep.checks)
            if (c.id == id) return !c.pass;
        return false;
    };

    auto m1 = base;
    m1.witnesses[0] = QElement::identity(3);
    CHECK(failed(q_verify_certificate(m1), "Q3"));

    auto m2 = base;
    m2.chain[0] = m2.chain[1];
    CHECK(failed(q_verify_certificate(m2), "Q0"));

    auto m3 = base;
    m3.g0 = QElement::identity(3);
    CHECK(failed(q_verify_certificate(m3), "Q1"));

    auto m4 = base;
    m4.facts.clear();
    CHECK(failed(q_verify_certificate(m4), "Q4"));
}

TEST_CASE("q certificates agree with tree pairs for q=2 trivial twists") {
    Element b = generator(Gen::B);
    QElement qb = qelement_from_element(b);
    auto tree_cert = build_certificate(b, 2, ElementClass::V);
    auto q_cert = q_build_certificate(qb, 2, PermGroupSpec::trivial(2));
    CHECK(verify_certificate(tree_cert).overall);
    CHECK(q_verify_certificate(q_cert).overall);
}
