#ifndef THV_QADIC_HPP
#define THV_QADIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "thv/certificate.hpp"
#include "thv/element.hpp"

namespace thv {

/// Permutation of {0..q-1}, stored as the image table.
using Perm = std::vector<std::uint8_t>;

Perm perm_identity(int q);
bool perm_is_identity(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b); // apply b first
Perm perm_invert(const Perm& p);
std::string perm_str(const Perm& p);                 // cycle notation or "id"
Perm perm_parse(const std::string& text, int q);

/// Subgroup of the symmetric group S_q given by generators; membership is
/// decided by closure enumeration (q is small).
class PermGroupSpec {
public:
    PermGroupSpec(int q, std::vector<Perm> generators);

    static PermGroupSpec trivial(int q) { return PermGroupSpec(q, {}); }
    static PermGroupSpec symmetric(int q);

    int q() const { return q_; }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<Perm>& closure() const { return closure_; }
    bool contains(const Perm& p) const;

private:
    int q_;
    std::vector<Perm> gens_;
    std::vector<Perm> closure_;
};

using QWord = std::vector<std::uint8_t>;

std::string qword_str(const QWord& w); // "-" for the empty word
QWord qword_parse(const std::string& text, int q);
bool qword_is_prefix(const QWord& p, const QWord& w);

/// Complete prefix code test: cylinders are mutually disjoint and cover C_q.
bool is_division(const std::vector<QWord>& words, int q);

struct QRule {
    QWord w, wp;
    Perm sigma;
    bool operator==(const QRule& o) const { return w == o.w && wp == o.wp && sigma == o.sigma; }
};

/// Prefix-replacement table v(w_i u) = w'_i sigma_i(u), the twist acting
/// letterwise on the suffix. Kept normalized: complete sibling families
/// merged, rules sorted by domain word.
struct QElement {
    int q = 2;
    std::vector<QRule> rules;

    static QElement identity(int q);
    bool is_identity() const;
    bool operator==(const QElement& o) const { return q == o.q && rules == o.rules; }

    std::string str() const; // one rule per line: "w -> w' ; sigma"
    static QElement parse(const std::string& text, int q);
};

void q_validate(const QElement& v, const PermGroupSpec& g);
QElement q_normalize(const QElement& v);
QWord q_apply(const QElement& v, const QWord& u);
QElement q_compose(const QElement& a, const QElement& b); // a∘b, b applied first
QElement q_invert(const QElement& v);
bool q_equals(const QElement& a, const QElement& b);

std::vector<QWord> q_support_cover(const QElement& v);
struct QFraction {
    std::int64_t num = 0, den = 1;
    bool operator==(const QFraction& o) const { return num == o.num && den == o.den; }
};
QFraction q_support_size(const QElement& v);

/// Image of the cylinder I(w) as a merged list of cylinders.
std::vector<QWord> q_image_of_cylinder(const QElement& v, const QWord& w);

/// The q=2, trivial-twist dictionary with tree pairs.
QElement qelement_from_element(const Element& g);
Element element_from_qelement(const QElement& v);

/// Fixed-point certificate in cylinder flavor: chain I(w_0) c ... c I(w_{k+1}),
/// w_i a run of zeros, with conjugator and branch-swap witnesses.
struct QCertificate {
    int q = 2;
    std::vector<Perm> group_gens;
    int k = 1;
    QElement s;
    QElement g0;
    std::vector<QWord> chain; // size k+2, last empty
    std::vector<QElement> witnesses;
    std::vector<Fact> facts;

    std::string json() const;
    static QCertificate from_json(const std::string& text);
};

Fact vq_simplicity_fact();

QCertificate q_build_certificate(const QElement& v, int k, const PermGroupSpec& g);
VerificationReport q_verify_certificate(const QCertificate& c);

} // namespace thv

#endif
