#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thv/certificate.hpp"
#include "thv/qadic.hpp"
#include "json.hpp"
#include "thv/render.hpp"

namespace py = pybind11;
using namespace thv;

namespace {

ElementClass class_from(const std::string& s) {
    if (s == "F") return ElementClass::F;
    if (s == "T") return ElementClass::T;
    if (s == "V") return ElementClass::V;
    throw UsageError("unknown class: " + s);
}

Element elem_from(const std::string& text, const std::string& cls) {
    if (text.find("->") != std::string::npos) return Element::parse(text);
    Word w = Word::parse(text);
    return cls.empty() ? eval_word(w) : eval_word(w, class_from(cls));
}

PermGroupSpec group_from(int q, const std::vector<std::string>& gens) {
    if (gens.size() == 1 && gens[0] == "sym") return PermGroupSpec::symmetric(q);
    std::vector<Perm> ps;
    for (const auto& g : gens)
        if (g != "id") ps.push_back(perm_parse(g, q));
    return PermGroupSpec(q, std::move(ps));
}

py::dict report_dict(const VerificationReport& rep) {
    py::dict d;
    py::list checks;
    for (const auto& c : rep.checks) {
        py::dict ch;
        ch["id"] = c.id;
        ch["pass"] = c.pass;
        ch["detail"] = c.detail;
        checks.append(ch);
    }
    d["checks"] = checks;
    d["overall"] = rep.overall;
    py::list facts;
    for (const auto& f : rep.assumed_facts) {
        py::dict fd;
        fd["claim"] = f.claim;
        fd["citation"] = f.citation;
        facts.append(fd);
    }
    d["assumed_facts"] = facts;
    return d;
}

} // namespace

PYBIND11_MODULE(_thv, m) {
    m.doc() = "exact tree-pair arithmetic and fixed-point certificates for Thompson's groups";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def("eval", [](const std::string& w, const std::string& x, const std::string& cls) {
        return evaluate(elem_from(w, cls), Dyadic::parse(x)).str();
    }, py::arg("word"), py::arg("point"), py::arg("cls") = "");

    m.def("compose", [](const std::string& a, const std::string& b, const std::string& cls) {
        return compose(elem_from(a, cls), elem_from(b, cls)).str();
    }, py::arg("lhs"), py::arg("rhs"), py::arg("cls") = "");

    m.def("inv", [](const std::string& a, const std::string& cls) {
        return invert(elem_from(a, cls)).str();
    }, py::arg("word"), py::arg("cls") = "");

    m.def("reduce", [](const std::string& a, const std::string& cls) {
        return reduce(elem_from(a, cls)).str();
    }, py::arg("word"), py::arg("cls") = "");

    m.def("eq", [](const std::string& a, const std::string& b, const std::string& cls) {
        return equals(elem_from(a, cls), elem_from(b, cls));
    }, py::arg("lhs"), py::arg("rhs"), py::arg("cls") = "");

    m.def("element_class", [](const std::string& a) {
        return class_name(class_of(elem_from(a, "")));
    }, py::arg("word"));

    m.def("support", [](const std::string& a) {
        Element g = elem_from(a, "");
        return py::make_tuple(support_cover(g).str(), support_size(g).str());
    }, py::arg("word"));

    m.def("decompose", [](const std::string& a, const std::string& eps) {
        FactorList fl = decompose_small(elem_from(a, ""), Dyadic::parse(eps));
        std::vector<std::string> out;
        for (const auto& f : fl.factors) out.push_back(f.str());
        return out;
    }, py::arg("word"), py::arg("eps"));

    m.def("f_to_word", [](const std::string& a) { return f_to_word(elem_from(a, "")).str(); },
          py::arg("word"));

    m.def("shrink_into", [](const std::string& cls, const std::string& u2, const std::string& u1,
                            const std::string& x) {
        return shrink_into(class_from(cls), DySet::parse(u2, Space::Circle),
                           DySet::parse(u1, Space::Circle), Dyadic::parse(x)).str();
    }, py::arg("cls"), py::arg("u2"), py::arg("u1"), py::arg("x"));

    m.def("shrink_within", [](const std::string& cls, const std::string& interval,
                              const std::string& u2, const std::string& u1) {
        DySet iv = DySet::parse("{" + interval + "}", Space::Circle);
        return shrink_within(class_from(cls), iv.parts()[0], DySet::parse(u2, Space::Circle),
                             DySet::parse(u1, Space::Circle)).str();
    }, py::arg("cls"), py::arg("interval"), py::arg("u2"), py::arg("u1"));

    m.def("identity_near_boundary", [](const std::string& a, const std::string& interval) {
        DySet iv = DySet::parse("{" + interval + "}", Space::Circle);
        return identity_near_boundary(elem_from(a, ""), iv.parts()[0]);
    }, py::arg("word"), py::arg("interval"));

    m.def("certify", [](const std::string& w, int dim, const std::string& cls) {
        std::optional<ElementClass> ambient;
        if (!cls.empty()) ambient = class_from(cls);
        return build_certificate(elem_from(w, cls), dim, ambient).json();
    }, py::arg("word"), py::arg("dim"), py::arg("cls") = "");

    m.def("commuting_family", [](const std::vector<std::string>& members, int dim) {
        std::vector<Element> elems;
        for (const auto& s : members) elems.push_back(elem_from(s, ""));
        return build_commuting_family(elems, dim).json();
    }, py::arg("members"), py::arg("dim"));

    m.def("verify", [](const std::string& json_text, std::uint64_t seed) {
        auto j = nlohmann::ordered_json::parse(json_text, nullptr, false);
        if (j.is_discarded()) throw UsageError("bad certificate JSON");
        if (j.contains("movers"))
            return report_dict(verify_commuting_family(CommutingFamilyCertificate::from_json(json_text), seed));
        if (j.value("class", "") == "Vq")
            return report_dict(q_verify_certificate(QCertificate::from_json(json_text)));
        return report_dict(verify_certificate(FixpointCertificate::from_json(json_text)));
    }, py::arg("json_text"), py::arg("seed") = 0);

    m.def("render_dot", [](const std::string& a) { return render_dot(elem_from(a, "")); },
          py::arg("word"));

    m.def("q_apply", [](const std::string& table, int q, const std::string& word) {
        return qword_str(q_apply(QElement::parse(table, q), qword_parse(word, q)));
    }, py::arg("table"), py::arg("q"), py::arg("word"));

    m.def("q_compose", [](const std::string& a, const std::string& b, int q) {
        return q_compose(QElement::parse(a, q), QElement::parse(b, q)).str();
    }, py::arg("lhs"), py::arg("rhs"), py::arg("q"));

    m.def("q_invert", [](const std::string& a, int q) {
        return q_invert(QElement::parse(a, q)).str();
    }, py::arg("table"), py::arg("q"));

    m.def("q_support", [](const std::string& a, int q) {
        QElement v = QElement::parse(a, q);
        std::vector<std::string> words;
        for (const auto& w : q_support_cover(v)) words.push_back(qword_str(w));
        QFraction s = q_support_size(v);
        return py::make_tuple(words, std::to_string(s.num) + "/" + std::to_string(s.den));
    }, py::arg("table"), py::arg("q"));

    m.def("q_certify", [](const std::string& table, int q, int dim,
                          const std::vector<std::string>& gens) {
        PermGroupSpec spec = group_from(q, gens);
        QElement v = QElement::parse(table, q);
        q_validate(v, spec);
        return q_build_certificate(v, dim, spec).json();
    }, py::arg("table"), py::arg("q"), py::arg("dim"), py::arg("gens") = std::vector<std::string>{});
}
