#include "thv/certificate.hpp"

#include <algorithm>

#include "json.hpp"
#include "thv/rng.hpp"

namespace thv {

using ordered_json = nlohmann::ordered_json;

Fact commutator_simplicity_fact(ElementClass ambient) {
    if (ambient == ElementClass::V)
        return {"every homomorphism from V^I to the reals is trivial",
                "V^I is isomorphic to V, which is simple (Cannon-Floyd-Parry, Introductory notes)"};
    return {"every homomorphism from [G^I, G^I] to the reals is trivial",
            "[F,F] is simple and consists of the elements that are the identity near both "
            "endpoints (Cannon-Floyd-Parry, Introductory notes)"};
}

Fact criterion_fact() {
    return {"a subgroup chain with trivial real homomorphisms and displaced supports forces a "
            "fixed point for every semi-simple action on a complete CAT(0) space of dimension "
            "at most k",
            "fixed-point criterion for semi-simple actions on finite-dimensional CAT(0) spaces"};
}

Fact seed_replacement_fact() {
    return {"the requested element is a product of small-support factors and the certified seed "
            "is the leading factor",
            "small-support generating sets for T and V (Brin; Cannon-Floyd-Parry)"};
}

void VerificationReport::add(const std::string& id, bool pass, const std::string& detail) {
    checks.push_back({id, pass, detail});
    overall = overall && pass;
}

std::string VerificationReport::text() const {
    std::string out;
    for (const auto& c : checks)
        out += c.id + " " + (c.pass ? "PASS" : "FAIL") + (c.detail.empty() ? "" : " " + c.detail) + "\n";
    for (const auto& f : assumed_facts) out += "assumed: " + f.claim + " [" + f.citation + "]\n";
    out += std::string("overall: ") + (overall ? "PASS" : "FAIL") + "\n";
    return out;
}

std::vector<StdInterval> canonical_chain(int k) {
    std::vector<StdInterval> chain(static_cast<size_t>(k) + 2);
    chain[static_cast<size_t>(k) + 1] = StdInterval::whole();
    for (int i = k; i >= 0; --i)
        chain[static_cast<size_t>(i)] = chain[static_cast<size_t>(i) + 1].second_quarter();
    return chain;
}

Dyadic small_support_eps(int k) {
    int e = 0;
    while ((std::int64_t(1) << e) < k + 1) ++e;
    return Dyadic(1, e);
}

namespace {

StdInterval parse_interval(const std::string& text) {
    DySet s = DySet::parse("{" + text + "}", Space::Circle);
    if (s.parts().size() != 1) throw UsageError("expected a single interval: " + text);
    return s.parts()[0];
}

ElementClass parse_class(const std::string& s) {
    if (s == "F") return ElementClass::F;
    if (s == "T") return ElementClass::T;
    if (s == "V") return ElementClass::V;
    throw UsageError("unknown class: " + s);
}

bool cover_inside_interior(const DySet& cover, const StdInterval& iv) {
    for (const auto& p : cover.parts()) {
        if (!iv.contains(p)) return false;
        if (!(iv.left() < p.left()) || !(p.right() < iv.right())) return false;
    }
    return true;
}

Dyadic point_outside(const DySet& cover) {
    DySet comp = cover.complement();
    if (comp.is_empty()) throw PreconditionError("support cover fills the whole space");
    return comp.parts().front().mid();
}

ordered_json facts_json(const std::vector<Fact>& facts) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : facts) {
        ordered_json o;
        o["claim"] = f.claim;
        o["citation"] = f.citation;
        arr.push_back(o);
    }
    return arr;
}

std::vector<Fact> facts_from_json(const ordered_json& arr) {
    std::vector<Fact> out;
    for (const auto& o : arr) out.push_back({o.at("claim").get<std::string>(), o.at("citation").get<std::string>()});
    return out;
}

} // namespace

SubgroupDescriptor FixpointCertificate::subgroup(int i) const {
    if (i < 0 || i > k + 1) throw UsageError("subgroup index out of range");
    if (i == 0) return {SubgroupTemplate::Cyclic, {}, s.str()};
    if (i == k + 1) return {SubgroupTemplate::WholeGroup, {}, {}};
    return {SubgroupTemplate::CommutatorOfIntervalCopy, chain[static_cast<size_t>(i)], {}};
}

std::string FixpointCertificate::json() const {
    ordered_json j;
    j["class"] = class_name(cls);
    j["k"] = k;
    j["s"] = s.str();
    j["g0"] = g0.str();
    ordered_json ch = ordered_json::array();
    for (const auto& iv : chain) ch.push_back(iv.str());
    j["chain"] = ch;
    ordered_json ws = ordered_json::array();
    for (const auto& w : witnesses) ws.push_back(w.str());
    j["witnesses"] = ws;
    j["facts"] = facts_json(facts);
    return j.dump(2) + "\n";
}

FixpointCertificate FixpointCertificate::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad certificate JSON: ") + e.what());
    }
    try {
        FixpointCertificate c;
        c.cls = parse_class(j.at("class").get<std::string>());
        c.k = j.at("k").get<int>();
        c.s = Element::parse(j.at("s").get<std::string>());
        c.g0 = Element::parse(j.at("g0").get<std::string>());
        for (const auto& iv : j.at("chain")) c.chain.push_back(parse_interval(iv.get<std::string>()));
        for (const auto& w : j.at("witnesses")) c.witnesses.push_back(Element::parse(w.get<std::string>()));
        c.facts = facts_from_json(j.at("facts"));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad certificate JSON: ") + e.what());
    }
}

std::string CommutingFamilyCertificate::json() const {
    ordered_json j;
    j["class"] = class_name(cls);
    j["k"] = k;
    ordered_json ms = ordered_json::array();
    for (const auto& m : members) ms.push_back(m.str());
    j["S"] = ms;
    ordered_json os = ordered_json::array();
    for (const auto& o : opens) os.push_back(o.str());
    j["opens"] = os;
    ordered_json fs = ordered_json::array();
    for (const auto& f : movers) fs.push_back(f.str());
    j["movers"] = fs;
    return j.dump(2) + "\n";
}

CommutingFamilyCertificate CommutingFamilyCertificate::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad certificate JSON: ") + e.what());
    }
    try {
        CommutingFamilyCertificate c;
        c.cls = parse_class(j.at("class").get<std::string>());
        c.k = j.at("k").get<int>();
        for (const auto& m : j.at("S")) c.members.push_back(Element::parse(m.get<std::string>()));
        for (const auto& o : j.at("opens"))
            c.opens.push_back(DySet::parse(o.get<std::string>(), Space::Circle));
        for (const auto& f : j.at("movers")) c.movers.push_back(Element::parse(f.get<std::string>()));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad certificate JSON: ") + e.what());
    }
}

FixpointCertificate build_certificate(const Element& s, int k, std::optional<ElementClass> ambient) {
    if (k < 1) throw PreconditionError("build_certificate: k must be positive");
    Element seed = reduce(s);
    ElementClass cls = ambient.value_or(class_of(seed));
    if (cls == ElementClass::F) cls = ElementClass::T;

    FixpointCertificate cert;
    cert.cls = cls;
    cert.k = k;
    cert.chain = canonical_chain(k);

    bool replaced = false;
    if (support_cover(seed).is_whole()) {
        // The element itself cannot be displaced off a dyadic point; certify
        // its leading small-support factor instead, as the generating-set
        // argument does.
        FactorList fl = decompose_small(seed, small_support_eps(k));
        if (fl.factors.empty()) throw InternalError("build_certificate: empty decomposition");
        seed = fl.factors.front();
        replaced = true;
    }
    cert.s = seed;

    DySet cover = support_cover(seed);
    if (cover.is_empty()) {
        cert.g0 = Element::identity();
    } else {
        Dyadic x = point_outside(cover);
        DySet target(Space::Circle, {cert.chain[0].second_quarter()});
        cert.g0 = shrink_into(cls, cover, target, x);
    }

    for (int i = 1; i <= k; ++i) {
        const StdInterval& inner = cert.chain[static_cast<size_t>(i)];
        const StdInterval& outer = cert.chain[static_cast<size_t>(i) + 1];
        DySet u2(Space::Circle, {inner});
        DySet u1(Space::Circle, {outer.fourth_quarter()});
        cert.witnesses.push_back(shrink_within(cls, outer, u2, u1));
    }

    for (int i = 1; i <= k; ++i) cert.facts.push_back(commutator_simplicity_fact(cls));
    if (replaced) cert.facts.push_back(seed_replacement_fact());
    cert.facts.push_back(criterion_fact());
    return cert;
}

VerificationReport verify_certificate(const FixpointCertificate& c) {
    VerificationReport rep;
    size_t k = static_cast<size_t>(c.k);
    bool shape = c.k >= 1 && c.chain.size() == k + 2 && c.witnesses.size() == k &&
                 c.chain.back().is_whole();
    rep.add("STRUCT", shape, shape ? "chain and witness counts" : "malformed chain or witness list");
    if (!shape) return rep;

    bool nested = true;
    for (size_t i = 0; i + 1 < c.chain.size(); ++i) {
        const StdInterval& in = c.chain[i];
        const StdInterval& out = c.chain[i + 1];
        if (out.is_whole()) continue; // the whole circle is its own interior
        nested = nested && out.contains(in) && out.left() < in.left() && in.right() < out.right();
    }
    rep.add("V0", nested, "chain nesting I_i inside Int(I_{i+1})");

    Element conj = compose(c.g0, compose(c.s, invert(c.g0)));
    bool v1 = cover_inside_interior(support_cover(conj), c.chain[0]);
    rep.add("V1", v1, "conjugated seed supported inside Int(I_0)");

    bool v2 = true;
    for (size_t i = 0; i < k; ++i)
        v2 = v2 && identity_near_boundary(c.witnesses[i], c.chain[i + 2]);
    rep.add("V2", v2, "witness g_i is the identity near the boundary of I_{i+1}");

    bool v3 = true;
    for (size_t i = 0; i < k; ++i) {
        DySet cell(Space::Circle, {c.chain[i + 1]});
        v3 = v3 && sets_disjoint(image_of(c.witnesses[i], cell), cell);
    }
    rep.add("V3", v3, "witness displaces I_i off itself");

    Fact expected = commutator_simplicity_fact(c.cls);
    bool v4 = c.facts.size() >= k;
    for (size_t i = 0; i < k && v4; ++i)
        v4 = v4 && !c.facts[i].claim.empty() && c.facts[i].citation == expected.citation;
    rep.add("V4", v4, "each H_i carries its simplicity citation");

    rep.assumed_facts = c.facts;
    return rep;
}

CommutingFamilyCertificate build_commuting_family(const std::vector<Element>& members, int k) {
    if (k < 1) throw PreconditionError("build_commuting_family: k must be positive");
    CommutingFamilyCertificate cert;
    cert.k = k;
    cert.members.reserve(members.size());
    ElementClass cls = ElementClass::T;
    for (const auto& m : members) {
        cert.members.push_back(reduce(m));
        if (class_of(m) == ElementClass::V) cls = ElementClass::V;
    }
    cert.cls = cls;

    DySet cover = support_cover_of_set(cert.members);
    if (cover.is_whole())
        throw PreconditionError(
            "build_commuting_family: joint support covers the space; decompose the members first");

    int p = 1;
    while ((std::int64_t(1) << p) < 2 * (k + 1)) ++p;
    for (int i = 0; i < k + 1; ++i)
        cert.opens.emplace_back(Space::Circle, std::vector<StdInterval>{StdInterval(2 * i, p)});

    if (cover.is_empty()) {
        cert.movers.assign(static_cast<size_t>(k) + 1, Element::identity());
        return cert;
    }
    Dyadic x = point_outside(cover);
    for (int i = 0; i < k + 1; ++i)
        cert.movers.push_back(shrink_into(cls, cover, cert.opens[static_cast<size_t>(i)], x));
    return cert;
}

VerificationReport verify_commuting_family(const CommutingFamilyCertificate& c, std::uint64_t seed) {
    VerificationReport rep;
    size_t n = static_cast<size_t>(c.k) + 1;
    bool shape = c.k >= 1 && c.opens.size() == n && c.movers.size() == n;
    rep.add("STRUCT", shape, shape ? "k+1 opens and movers" : "malformed opens or mover list");
    if (!shape) return rep;

    bool w1 = true;
    for (size_t i = 0; i < n; ++i) {
        if (c.opens[i].is_empty()) w1 = false;
        for (size_t j = i + 1; j < n; ++j) w1 = w1 && sets_disjoint(c.opens[i], c.opens[j]);
    }
    rep.add("W1", w1, "targets J_i pairwise disjoint and nonempty");

    DySet cover = support_cover_of_set(c.members);
    bool w2 = true;
    for (size_t i = 0; i < n; ++i) w2 = w2 && c.opens[i].contains(image_of(c.movers[i], cover));
    rep.add("W2", w2, "f_i carries supp(S) into J_i");

    bool w3 = true;
    if (!c.members.empty()) {
        Rng rng(seed);
        for (int it = 0; it < 24; ++it) {
            size_t i = static_cast<size_t>(rng.below(static_cast<int>(n)));
            size_t j = static_cast<size_t>(rng.below(static_cast<int>(n)));
            if (i == j) continue;
            const Element& s1 = c.members[static_cast<size_t>(rng.below(static_cast<int>(c.members.size())))];
            const Element& s2 = c.members[static_cast<size_t>(rng.below(static_cast<int>(c.members.size())))];
            Element a = compose(c.movers[i], compose(s1, invert(c.movers[i])));
            Element b = compose(c.movers[j], compose(s2, invert(c.movers[j])));
            Element comm = compose(compose(a, b), compose(invert(a), invert(b)));
            w3 = w3 && equals(comm, Element::identity());
        }
    }
    rep.add("W3", w3, "sampled conjugate pairs commute");
    return rep;
}

} // namespace thv
