#ifndef THV_CERTIFICATE_HPP
#define THV_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "thv/element.hpp"
#include "thv/smallsupport.hpp"
#include "thv/support.hpp"
#include "thv/transporter.hpp"

namespace thv {

struct Fact {
    std::string claim;
    std::string citation;
    bool operator==(const Fact& o) const { return claim == o.claim && citation == o.citation; }
};

/// Citation catalog. Group facts that the verifier trusts rather than
/// re-proves; condition (i) of the criterion is carried by these records.
Fact commutator_simplicity_fact(ElementClass ambient);
Fact criterion_fact();
Fact seed_replacement_fact();

enum class SubgroupTemplate { WholeGroup, IntervalCopy, CommutatorOfIntervalCopy, Cyclic };

/// Descriptor of one H_i in the chain. Only the templates below are ever
/// produced or accepted; anything else is rejected rather than guessed.
struct SubgroupDescriptor {
    SubgroupTemplate tmpl = SubgroupTemplate::WholeGroup;
    StdInterval interval;  // for the interval templates
    std::string generator; // element text, for Cyclic
};

struct Check {
    std::string id;
    bool pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool overall = true;
    std::vector<Fact> assumed_facts;

    void add(const std::string& id, bool pass, const std::string& detail);
    std::string text() const;
};

/// The machine-checkable hypotheses of the fixed-point criterion for one
/// element: conjugator g0 placing the seed inside I_0, a strictly nested
/// interval chain I_0 .. I_{k+1} = [0,1], displacement witnesses g_1 .. g_k
/// living in the interval-copy commutator subgroups, and the cited group
/// facts covering the homomorphism condition.
struct FixpointCertificate {
    ElementClass cls = ElementClass::T;
    int k = 1;
    Element s;
    Element g0;
    std::vector<StdInterval> chain; // size k + 2, last = [0,1]
    std::vector<Element> witnesses; // size k
    std::vector<Fact> facts;        // facts[i-1] covers H_i, extras may follow

    /// The implied chain H_0 = <s>, H_i = [G^{I_i}, G^{I_i}], H_{k+1} = G.
    SubgroupDescriptor subgroup(int i) const;

    std::string json() const;
    static FixpointCertificate from_json(const std::string& text);
};

struct CommutingFamilyCertificate {
    ElementClass cls = ElementClass::T;
    int k = 1;
    std::vector<Element> members;   // S
    std::vector<DySet> opens;       // J_1 .. J_{k+1}
    std::vector<Element> movers;    // f_1 .. f_{k+1}

    std::string json() const;
    static CommutingFamilyCertificate from_json(const std::string& text);
};

/// Canonical chain: I_{k+1} = [0,1] and I_i the second quarter of I_{i+1}.
std::vector<StdInterval> canonical_chain(int k);

/// Largest power-of-two epsilon not exceeding 1/(k+1).
Dyadic small_support_eps(int k);

FixpointCertificate build_certificate(const Element& s, int k,
                                      std::optional<ElementClass> ambient = std::nullopt);
VerificationReport verify_certificate(const FixpointCertificate& c);

CommutingFamilyCertificate build_commuting_family(const std::vector<Element>& members, int k);
VerificationReport verify_commuting_family(const CommutingFamilyCertificate& c,
                                           std::uint64_t seed = 0);

} // namespace thv

#endif
