#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thv/certificate.hpp"
#include "thv/qadic.hpp"
#include "thv/render.hpp"
#include "thv/rng.hpp"

using namespace thv;

namespace {

ElementClass parse_class_flag(const std::string& s) {
    if (s == "F") return ElementClass::F;
    if (s == "T") return ElementClass::T;
    if (s == "V") return ElementClass::V;
    throw UsageError("unknown class: " + s + " (use F, T or V)");
}

Element parse_element_or_word(const std::string& text, const std::string& cls) {
    if (text.find("->") != std::string::npos) return Element::parse(text);
    Word w = Word::parse(text);
    if (cls.empty()) return eval_word(w);
    return eval_word(w, parse_class_flag(cls));
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << text;
}

int report_exit(const VerificationReport& rep, const std::string& out_path) {
    emit(rep.text(), out_path);
    return rep.overall ? 0 : 1;
}

PermGroupSpec group_from_flags(int q, const std::vector<std::string>& gens) {
    if (gens.size() == 1 && gens[0] == "sym") return PermGroupSpec::symmetric(q);
    std::vector<Perm> ps;
    for (const auto& g : gens)
        if (g != "id") ps.push_back(perm_parse(g, q));
    return PermGroupSpec(q, std::move(ps));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tree-pair arithmetic and fixed-point certificates for Thompson's groups F, T, V and V_q(G)"};
    app.require_subcommand(1);

    std::string cls, out_path, in_path, format = "text";
    std::uint64_t seed = 0;
    app.add_option("--class", cls, "ambient class: F, T or V")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--in", in_path, "input file ('-' for stdin)");
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--seed", seed, "seed for sampled checks")->capture_default_str();

    // eval
    std::string eval_word_text, eval_at;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate an element at a dyadic point");
    cmd_eval->add_option("word", eval_word_text, "word or element text")->required();
    cmd_eval->add_option("point", eval_at, "dyadic point a/2^b")->required();

    // compose / inv / reduce / eq / support / render
    std::string lhs, rhs;
    auto* cmd_compose = app.add_subcommand("compose", "compose two elements (right one applied first)");
    cmd_compose->add_option("lhs", lhs)->required();
    cmd_compose->add_option("rhs", rhs)->required();
    auto* cmd_inv = app.add_subcommand("inv", "invert an element");
    cmd_inv->add_option("word", lhs)->required();
    auto* cmd_reduce = app.add_subcommand("reduce", "reduce a tree pair to canonical form");
    cmd_reduce->add_option("word", lhs)->required();
    auto* cmd_eq = app.add_subcommand("eq", "decide equality of two elements");
    cmd_eq->add_option("lhs", lhs)->required();
    cmd_eq->add_option("rhs", rhs)->required();
    auto* cmd_support = app.add_subcommand("support", "support cover and its size");
    cmd_support->add_option("word", lhs)->required();
    auto* cmd_render = app.add_subcommand("render", "emit the tree pair as a DOT graph");
    cmd_render->add_option("word", lhs)->required();

    // decompose
    std::string eps_text = "1/2^2";
    auto* cmd_decompose = app.add_subcommand("decompose", "factor into elements of small support");
    cmd_decompose->add_option("word", lhs)->required();
    cmd_decompose->add_option("--eps", eps_text, "support size bound a/2^b")->capture_default_str();

    // transport
    std::string u1_text, u2_text, x_text, interval_text;
    auto* cmd_transport = app.add_subcommand("transport", "move one dyadic set into another");
    auto* cmd_into = cmd_transport->add_subcommand("into", "circle transport avoiding a point");
    cmd_into->add_option("--u2", u2_text, "moving set")->required();
    cmd_into->add_option("--u1", u1_text, "target set")->required();
    cmd_into->add_option("--x", x_text, "excluded dyadic point")->required();
    auto* cmd_within = cmd_transport->add_subcommand("within", "relative transport, identity near the boundary");
    cmd_within->add_option("--interval", interval_text, "ambient standard interval")->required();
    cmd_within->add_option("--u2", u2_text, "moving set")->required();
    cmd_within->add_option("--u1", u1_text, "target set")->required();

    // certify / verify
    int dim = 1;
    std::string word_text;
    auto* cmd_certify = app.add_subcommand("certify", "build a fixed-point certificate");
    cmd_certify->add_option("--dim", dim, "dimension bound k")->required();
    cmd_certify->add_option("--word", word_text, "seed element or word")->required();
    auto* cmd_verify = app.add_subcommand("verify", "verify a certificate file");

    // bridson
    auto* cmd_bridson = app.add_subcommand("bridson", "commuting-family pipeline for a small-support generating set");
    cmd_bridson->add_option("--dim", dim, "dimension bound k")->required();
    cmd_bridson->add_option("--eps", eps_text, "support size bound for the generating set");
    int families = 8;
    cmd_bridson->add_option("--families", families, "number of sampled (k+1)-subsets")->capture_default_str();

    // qop
    int q = 2;
    std::vector<std::string> gens;
    std::string table2_path, qword_text;
    auto* cmd_qop = app.add_subcommand("qop", "prefix-replacement tables over a q-letter alphabet");
    cmd_qop->add_option("--q", q, "alphabet size")->capture_default_str();
    cmd_qop->add_option("--gens", gens, "twist group generators in cycle notation, or 'sym'");
    auto* cmd_qapply = cmd_qop->add_subcommand("apply", "apply the table to a finite word");
    cmd_qapply->add_option("word", qword_text, "finite word over 0..q-1")->required();
    auto* cmd_qcompose = cmd_qop->add_subcommand("compose", "compose two tables (--in, --rhs)");
    cmd_qcompose->add_option("--rhs", table2_path, "second table file")->required();
    cmd_qop->add_subcommand("inv", "invert the table from --in");
    cmd_qop->add_subcommand("support", "support cylinders and size");
    auto* cmd_qcertify = cmd_qop->add_subcommand("certify", "build a cylinder-flavor certificate");
    cmd_qcertify->add_option("--dim", dim, "dimension bound k")->required();

    // global flags may follow the subcommand
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
        sc->fallthrough();
        for (auto* nested : sc->get_subcommands([](const CLI::App*) { return true; }))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cmd_eval) {
            Element g = parse_element_or_word(eval_word_text, cls);
            Dyadic x = Dyadic::parse(eval_at);
            Dyadic y = evaluate(g, x);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["value"] = y.str();
                emit(j.dump(2), out_path);
            } else emit(y.str(), out_path);
            return 0;
        }
        if (*cmd_compose) {
            Element g = compose(parse_element_or_word(lhs, cls), parse_element_or_word(rhs, cls));
            emit(g.str(), out_path);
            return 0;
        }
        if (*cmd_inv) {
            emit(invert(parse_element_or_word(lhs, cls)).str(), out_path);
            return 0;
        }
        if (*cmd_reduce) {
            emit(reduce(parse_element_or_word(lhs, cls)).str(), out_path);
            return 0;
        }
        if (*cmd_eq) {
            bool same = equals(parse_element_or_word(lhs, cls), parse_element_or_word(rhs, cls));
            emit(same ? "true" : "false", out_path);
            return 0;
        }
        if (*cmd_support) {
            Element g = parse_element_or_word(lhs, cls);
            DySet cover = support_cover(g);
            emit(cover.str() + "\nsize " + support_size(g).str(), out_path);
            return 0;
        }
        if (*cmd_render) {
            emit(render_dot(parse_element_or_word(lhs, cls)), out_path);
            return 0;
        }
        if (*cmd_decompose) {
            Element g = parse_element_or_word(lhs, cls);
            Dyadic eps = Dyadic::parse(eps_text);
            FactorList fl = decompose_small(g, eps);
            if (!equals(fl.product(), fl.target)) throw InternalError("factor product mismatch");
            std::string text;
            for (const auto& f : fl.factors) {
                if (support_size(f) >= eps) throw InternalError("factor support too large");
                text += f.str() + "\n";
            }
            emit(text, out_path);
            return 0;
        }
        if (*cmd_into) {
            DySet u2 = DySet::parse(u2_text, Space::Circle);
            DySet u1 = DySet::parse(u1_text, Space::Circle);
            ElementClass c = cls.empty() ? ElementClass::T : parse_class_flag(cls);
            emit(shrink_into(c, u2, u1, Dyadic::parse(x_text)).str(), out_path);
            return 0;
        }
        if (*cmd_within) {
            DySet u2 = DySet::parse(u2_text, Space::Circle);
            DySet u1 = DySet::parse(u1_text, Space::Circle);
            DySet ambient = DySet::parse("{" + interval_text + "}", Space::Circle);
            ElementClass c = cls.empty() ? ElementClass::F : parse_class_flag(cls);
            emit(shrink_within(c, ambient.parts()[0], u2, u1).str(), out_path);
            return 0;
        }
        if (*cmd_certify) {
            Element g = parse_element_or_word(word_text, cls);
            std::optional<ElementClass> ambient;
            if (!cls.empty()) ambient = parse_class_flag(cls);
            auto cert = build_certificate(g, dim, ambient);
            emit(cert.json(), out_path);
            return 0;
        }
        if (*cmd_verify) {
            if (in_path.empty()) throw UsageError("verify needs --in");
            std::string text = slurp(in_path);
            nlohmann::ordered_json j;
            try {
                j = nlohmann::ordered_json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(std::string("bad certificate JSON: ") + e.what());
            }
            if (j.contains("movers"))
                return report_exit(verify_commuting_family(CommutingFamilyCertificate::from_json(text), seed), out_path);
            if (j.value("class", "") == "Vq")
                return report_exit(q_verify_certificate(QCertificate::from_json(text)), out_path);
            return report_exit(verify_certificate(FixpointCertificate::from_json(text)), out_path);
        }
        if (*cmd_bridson) {
            ElementClass c = cls.empty() ? ElementClass::T : parse_class_flag(cls);
            if (c == ElementClass::F) throw PreconditionError("bridson: class must be T or V");
            Dyadic eps = Dyadic::parse(eps_text);
            std::vector<Gen> gens_for{Gen::A, Gen::B, Gen::C};
            if (c == ElementClass::V) gens_for.push_back(Gen::P0);
            std::vector<Element> pool;
            for (Gen g : gens_for)
                for (const auto& f : decompose_small(generator(g), eps).factors) pool.push_back(f);
            std::string text = "generating multiset size " + std::to_string(pool.size()) + "\n";
            Rng rng(seed);
            bool all = true;
            std::string first_json;
            for (int fam = 0; fam < families; ++fam) {
                std::vector<Element> subset;
                for (int j = 0; j < dim + 1; ++j)
                    subset.push_back(pool[static_cast<size_t>(rng.below(static_cast<int>(pool.size())))]);
                auto cf = build_commuting_family(subset, dim);
                auto rep = verify_commuting_family(cf, seed);
                all = all && rep.overall;
                text += "family " + std::to_string(fam) + ": " + (rep.overall ? "PASS" : "FAIL") + "\n";
                if (fam == 0) first_json = cf.json();
            }
            text += std::string("overall: ") + (all ? "PASS" : "FAIL") + "\n";
            if (!out_path.empty()) emit(first_json, out_path);
            std::cout << text;
            return all ? 0 : 1;
        }
        if (*cmd_qop) {
            PermGroupSpec spec = group_from_flags(q, gens);
            auto load_table = [&](const std::string& path) {
                QElement v = QElement::parse(slurp(path), q);
                q_validate(v, spec);
                return v;
            };
            if (*cmd_qapply) {
                QElement v = load_table(in_path.empty() ? "-" : in_path);
                emit(qword_str(q_apply(v, qword_parse(qword_text, q))), out_path);
                return 0;
            }
            if (*cmd_qcompose) {
                QElement a = load_table(in_path.empty() ? "-" : in_path);
                QElement b = load_table(table2_path);
                emit(q_compose(a, b).str(), out_path);
                return 0;
            }
            if (cmd_qop->got_subcommand("inv")) {
                emit(q_invert(load_table(in_path.empty() ? "-" : in_path)).str(), out_path);
                return 0;
            }
            if (cmd_qop->got_subcommand("support")) {
                QElement v = load_table(in_path.empty() ? "-" : in_path);
                std::string text;
                for (const auto& w : q_support_cover(v)) text += qword_str(w) + "\n";
                QFraction s = q_support_size(v);
                text += "size " + std::to_string(s.num) + "/" + std::to_string(s.den) + "\n";
                emit(text, out_path);
                return 0;
            }
            if (*cmd_qcertify) {
                QElement v = load_table(in_path.empty() ? "-" : in_path);
                emit(q_build_certificate(v, dim, spec).json(), out_path);
                return 0;
            }
            throw UsageError("qop needs a subcommand");
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
