#include "thv/qadic.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "json.hpp"

namespace thv {

using ordered_json = nlohmann::ordered_json;

Perm perm_identity(int q) {
    Perm p(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) p[static_cast<size_t>(i)] = static_cast<std::uint8_t>(i);
    return p;
}

bool perm_is_identity(const Perm& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw UsageError("permutation size mismatch");
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_invert(const Perm& p) {
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint8_t>(i);
    return r;
}

std::string perm_str(const Perm& p) {
    if (perm_is_identity(p)) return "id";
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        out += "(";
        size_t c = i;
        bool first = true;
        while (!seen[c]) {
            seen[c] = true;
            if (!first) out += " ";
            out += std::to_string(c);
            first = false;
            c = p[c];
        }
        out += ")";
    }
    return out;
}

Perm perm_parse(const std::string& text, int q) {
    std::string t;
    for (char c : text) t += isspace(static_cast<unsigned char>(c)) ? ' ' : c;
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t == "id" || t.empty()) return perm_identity(q);
    Perm p = perm_identity(q);
    std::vector<bool> used(static_cast<size_t>(q), false);
    size_t pos = 0;
    while (pos < t.size()) {
        while (pos < t.size() && t[pos] == ' ') ++pos;
        if (pos >= t.size()) break;
        if (t[pos] != '(') throw UsageError("bad permutation: " + text);
        auto close = t.find(')', pos);
        if (close == std::string::npos) throw UsageError("bad permutation: " + text);
        std::string body = t.substr(pos + 1, close - pos - 1);
        std::vector<int> cyc;
        std::string tok;
        for (char c : body + " ") {
            if (c == ' ' || c == ',') {
                if (!tok.empty()) {
                    cyc.push_back(std::stoi(tok));
                    tok.clear();
                }
            } else tok += c;
        }
        if (cyc.size() < 2) throw UsageError("bad cycle: " + body);
        for (int v : cyc) {
            if (v < 0 || v >= q) throw UsageError("cycle entry out of range: " + body);
            if (used[static_cast<size_t>(v)]) throw UsageError("repeated cycle entry: " + body);
            used[static_cast<size_t>(v)] = true;
        }
        for (size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            p[static_cast<size_t>(from)] = static_cast<std::uint8_t>(to);
        }
        pos = close + 1;
    }
    // validate bijection
    Perm check = p;
    std::sort(check.begin(), check.end());
    for (size_t i = 0; i < check.size(); ++i)
        if (check[i] != i) throw UsageError("not a permutation: " + text);
    return p;
}

PermGroupSpec::PermGroupSpec(int q, std::vector<Perm> generators) : q_(q), gens_(std::move(generators)) {
    if (q < 2 || q > 10) throw UsageError("alphabet size must be between 2 and 10");
    for (const auto& g : gens_) {
        if (static_cast<int>(g.size()) != q) throw UsageError("generator size mismatch");
        Perm check = g;
        std::sort(check.begin(), check.end());
        for (size_t i = 0; i < check.size(); ++i)
            if (check[i] != i) throw UsageError("generator is not a permutation");
    }
    std::set<Perm> seen{perm_identity(q)};
    std::deque<Perm> work{perm_identity(q)};
    while (!work.empty()) {
        Perm cur = work.front();
        work.pop_front();
        for (const auto& g : gens_) {
            Perm nxt = perm_compose(g, cur);
            if (seen.insert(nxt).second) work.push_back(nxt);
        }
    }
    closure_.assign(seen.begin(), seen.end());
}

PermGroupSpec PermGroupSpec::symmetric(int q) {
    std::vector<Perm> gens;
    Perm swap01 = perm_identity(q);
    std::swap(swap01[0], swap01[1]);
    gens.push_back(swap01);
    Perm cycle = perm_identity(q);
    for (int i = 0; i < q; ++i) cycle[static_cast<size_t>(i)] = static_cast<std::uint8_t>((i + 1) % q);
    gens.push_back(cycle);
    return PermGroupSpec(q, std::move(gens));
}

bool PermGroupSpec::contains(const Perm& p) const {
    return std::find(closure_.begin(), closure_.end(), p) != closure_.end();
}

std::string qword_str(const QWord& w) {
    if (w.empty()) return "-";
    std::string s;
    for (auto d : w) s += static_cast<char>('0' + d);
    return s;
}

QWord qword_parse(const std::string& text, int q) {
    if (text == "-" || text.empty()) return {};
    QWord w;
    for (char c : text) {
        if (c < '0' || c >= '0' + q) throw UsageError("bad word digit: " + text);
        w.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

bool qword_is_prefix(const QWord& p, const QWord& w) {
    if (p.size() > w.size()) return false;
    return std::equal(p.begin(), p.end(), w.begin());
}

namespace {

bool division_rec(const std::vector<QWord>& sorted, size_t lo, size_t hi, size_t depth, int q) {
    if (hi - lo == 1 && sorted[lo].size() == depth) return true;
    if (hi - lo < 1) return false;
    size_t pos = lo;
    for (int a = 0; a < q; ++a) {
        size_t start = pos;
        while (pos < hi && sorted[pos].size() > depth && sorted[pos][depth] == a) ++pos;
        if (pos == start) return false;
        if (!division_rec(sorted, start, pos, depth + 1, q)) return false;
    }
    return pos == hi;
}

} // namespace

bool is_division(const std::vector<QWord>& words, int q) {
    std::vector<QWord> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty()) return false;
    for (const auto& w : sorted)
        for (auto d : w)
            if (d >= q) return false;
    return division_rec(sorted, 0, sorted.size(), 0, q);
}

QElement QElement::identity(int q) {
    QElement v;
    v.q = q;
    v.rules.push_back({{}, {}, perm_identity(q)});
    return v;
}

bool QElement::is_identity() const {
    for (const auto& r : rules)
        if (r.w != r.wp || !perm_is_identity(r.sigma)) return false;
    return true;
}

std::string QElement::str() const {
    std::string out;
    for (const auto& r : rules)
        out += qword_str(r.w) + " -> " + qword_str(r.wp) + " ; " + perm_str(r.sigma) + "\n";
    return out;
}

QElement QElement::parse(const std::string& text, int q) {
    QElement v;
    v.q = q;
    std::string line;
    auto flush = [&](const std::string& ln) {
        std::string s;
        for (char c : ln)
            if (!isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) return;
        auto arrow = s.find("->");
        if (arrow == std::string::npos) throw UsageError("rule needs '->': " + ln);
        auto semi = s.find(';', arrow);
        if (semi == std::string::npos) throw UsageError("rule needs '; sigma': " + ln);
        QRule r;
        r.w = qword_parse(s.substr(0, arrow), q);
        r.wp = qword_parse(s.substr(arrow + 2, semi - arrow - 2), q);
        // keep original spacing for the permutation part
        auto semi_orig = ln.find(';');
        r.sigma = perm_parse(ln.substr(semi_orig + 1), q);
        v.rules.push_back(r);
    };
    for (char c : text + "\n") {
        if (c == '\n') {
            flush(line);
            line.clear();
        } else line += c;
    }
    if (v.rules.empty()) throw UsageError("empty rule table");
    return q_normalize(v);
}

void q_validate(const QElement& v, const PermGroupSpec& g) {
    if (v.q != g.q()) throw UsageError("alphabet size mismatch");
    std::vector<QWord> dom, ran;
    for (const auto& r : v.rules) {
        dom.push_back(r.w);
        ran.push_back(r.wp);
        if (!g.contains(r.sigma))
            throw PreconditionError("twist outside the permutation group: " + perm_str(r.sigma));
    }
    if (!is_division(dom, v.q)) throw PreconditionError("domain words do not form a division");
    if (!is_division(ran, v.q)) throw PreconditionError("range words do not form a division");
}

QElement q_normalize(const QElement& v) {
    std::vector<QRule> rules = v.rules;
    int q = v.q;
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(rules.begin(), rules.end(),
                  [](const QRule& a, const QRule& b) { return a.w < b.w; });
        for (size_t i = 0; i + static_cast<size_t>(q) <= rules.size(); ++i) {
            // try to merge the family rules[i .. i+q-1]
            const QRule& first = rules[i];
            if (first.w.empty() || first.w.back() != 0) continue;
            QWord parent(first.w.begin(), first.w.end() - 1);
            QWord parentRange;
            bool ok = !first.wp.empty();
            if (ok) parentRange.assign(first.wp.begin(), first.wp.end() - 1);
            for (int a = 0; ok && a < q; ++a) {
                const QRule& r = rules[i + static_cast<size_t>(a)];
                ok = r.sigma == first.sigma && r.w.size() == first.w.size() &&
                     qword_is_prefix(parent, r.w) && r.w.back() == a && !r.wp.empty() &&
                     r.wp.size() == first.wp.size() &&
                     std::equal(parentRange.begin(), parentRange.end(), r.wp.begin()) &&
                     r.wp.back() == first.sigma[static_cast<size_t>(a)];
            }
            if (ok) {
                QRule merged{parent, parentRange, first.sigma};
                rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(i),
                            rules.begin() + static_cast<std::ptrdiff_t>(i) + q);
                rules.insert(rules.begin() + static_cast<std::ptrdiff_t>(i), merged);
                changed = true;
                break;
            }
        }
    }
    QElement out;
    out.q = q;
    out.rules = std::move(rules);
    return out;
}

QWord q_apply(const QElement& v, const QWord& u) {
    for (const auto& r : v.rules) {
        if (!qword_is_prefix(r.w, u)) continue;
        QWord out = r.wp;
        for (size_t i = r.w.size(); i < u.size(); ++i) out.push_back(r.sigma[u[i]]);
        return out;
    }
    throw PreconditionError("q_apply: word too short to select a rule; extend it");
}

QElement q_compose(const QElement& a, const QElement& b) {
    if (a.q != b.q) throw UsageError("q_compose: alphabet mismatch");
    int q = a.q;
    std::vector<QRule> out;
    std::deque<QRule> work(b.rules.begin(), b.rules.end());
    while (!work.empty()) {
        QRule r = work.front();
        work.pop_front();
        bool matched = false;
        for (const auto& u : a.rules) {
            if (!qword_is_prefix(u.w, r.wp)) continue;
            QWord range = u.wp;
            for (size_t i = u.w.size(); i < r.wp.size(); ++i) range.push_back(u.sigma[r.wp[i]]);
            out.push_back({r.w, range, perm_compose(u.sigma, r.sigma)});
            matched = true;
            break;
        }
        if (matched) continue;
        // r.wp is a proper prefix of some domain word of a: refine r
        for (int letter = 0; letter < q; ++letter) {
            QRule finer = r;
            finer.w.push_back(static_cast<std::uint8_t>(letter));
            finer.wp.push_back(r.sigma[static_cast<size_t>(letter)]);
            work.push_back(finer);
        }
    }
    QElement res;
    res.q = q;
    res.rules = std::move(out);
    return q_normalize(res);
}

QElement q_invert(const QElement& v) {
    QElement res;
    res.q = v.q;
    for (const auto& r : v.rules) res.rules.push_back({r.wp, r.w, perm_invert(r.sigma)});
    return q_normalize(res);
}

bool q_equals(const QElement& a, const QElement& b) {
    return q_normalize(a) == q_normalize(b);
}

std::vector<QWord> q_support_cover(const QElement& v) {
    QElement n = q_normalize(v);
    std::vector<QWord> words;
    for (const auto& r : n.rules)
        if (!(r.w == r.wp && perm_is_identity(r.sigma))) words.push_back(r.w);
    std::sort(words.begin(), words.end());
    // merge complete sibling families
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + static_cast<size_t>(n.q) <= words.size(); ++i) {
            if (words[i].empty() || words[i].back() != 0) continue;
            QWord parent(words[i].begin(), words[i].end() - 1);
            bool ok = true;
            for (int a = 0; ok && a < n.q; ++a) {
                const QWord& w = words[i + static_cast<size_t>(a)];
                ok = w.size() == words[i].size() && qword_is_prefix(parent, w) && w.back() == a;
            }
            if (ok) {
                words.erase(words.begin() + static_cast<std::ptrdiff_t>(i),
                            words.begin() + static_cast<std::ptrdiff_t>(i) + n.q);
                words.insert(words.begin() + static_cast<std::ptrdiff_t>(i), parent);
                changed = true;
                break;
            }
        }
    }
    return words;
}

QFraction q_support_size(const QElement& v) {
    auto words = q_support_cover(v);
    if (words.empty()) return {0, 1};
    size_t maxlen = 0;
    for (const auto& w : words) maxlen = std::max(maxlen, w.size());
    __int128 den = 1;
    for (size_t i = 0; i < maxlen; ++i) {
        den *= v.q;
        if (den > (static_cast<__int128>(1) << 62)) throw InternalError("support size denominator overflow");
    }
    __int128 num = 0;
    for (const auto& w : words) {
        __int128 scale = 1;
        for (size_t i = w.size(); i < maxlen; ++i) scale *= v.q;
        num += scale;
    }
    std::int64_t n64 = static_cast<std::int64_t>(num), d64 = static_cast<std::int64_t>(den);
    std::int64_t g = std::gcd(n64, d64);
    return {n64 / g, d64 / g};
}

std::vector<QWord> q_image_of_cylinder(const QElement& v, const QWord& w) {
    std::vector<QWord> out;
    for (const auto& r : v.rules) {
        if (qword_is_prefix(w, r.w)) {
            out.push_back(r.wp);
        } else if (qword_is_prefix(r.w, w) && r.w.size() < w.size()) {
            QWord img = r.wp;
            for (size_t i = r.w.size(); i < w.size(); ++i) img.push_back(r.sigma[w[i]]);
            out.push_back(img);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

QElement qelement_from_element(const Element& g) {
    QElement v;
    v.q = 2;
    Element r = reduce(g);
    for (const auto& l : r.legs()) {
        QWord w, wp;
        for (int i = l.src.b - 1; i >= 0; --i) w.push_back(static_cast<std::uint8_t>((l.src.a >> i) & 1));
        for (int i = l.dst.b - 1; i >= 0; --i) wp.push_back(static_cast<std::uint8_t>((l.dst.a >> i) & 1));
        v.rules.push_back({w, wp, perm_identity(2)});
    }
    return q_normalize(v);
}

Element element_from_qelement(const QElement& v) {
    if (v.q != 2) throw PreconditionError("element_from_qelement: q must be 2");
    std::vector<Element::Leg> legs;
    for (const auto& r : v.rules) {
        if (!perm_is_identity(r.sigma))
            throw PreconditionError("element_from_qelement: nontrivial twist has no tree-pair form");
        auto to_iv = [](const QWord& w) {
            std::int64_t a = 0;
            for (auto d : w) a = 2 * a + d;
            return StdInterval(a, static_cast<int>(w.size()));
        };
        legs.push_back({to_iv(r.w), to_iv(r.wp)});
    }
    return reduce(Element(std::move(legs)));
}

Fact vq_simplicity_fact() {
    return {"every homomorphism from the cylinder copy of V_q(G) to the reals is trivial",
            "V_q(G) is finitely generated and virtually simple (Farley-Hindman; Nekrashevych)"};
}

namespace {

std::vector<QWord> complement_words(const std::vector<QWord>& cover, int q) {
    // maximal cylinders disjoint from every cover word
    std::vector<QWord> out;
    std::deque<QWord> work{QWord{}};
    while (!work.empty()) {
        QWord cell = work.front();
        work.pop_front();
        bool covered = false, meets = false;
        for (const auto& c : cover) {
            if (qword_is_prefix(c, cell)) covered = true;
            if (qword_is_prefix(c, cell) || qword_is_prefix(cell, c)) meets = true;
        }
        if (covered) continue;
        if (!meets) {
            out.push_back(cell);
            continue;
        }
        for (int a = 0; a < q; ++a) {
            QWord child = cell;
            child.push_back(static_cast<std::uint8_t>(a));
            work.push_back(child);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QWord> spine_siblings(const QWord& w, int q) {
    std::vector<QWord> out;
    for (size_t i = 0; i < w.size(); ++i) {
        for (int a = 0; a < q; ++a) {
            if (a == w[i]) continue;
            QWord s(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            s.push_back(static_cast<std::uint8_t>(a));
            out.push_back(s);
        }
    }
    return out;
}

QElement branch_swap_under(const QWord& w, int q) {
    QElement v;
    v.q = q;
    Perm id = perm_identity(q);
    QWord w0 = w, w1 = w;
    w0.push_back(0);
    w1.push_back(1);
    v.rules.push_back({w0, w1, id});
    v.rules.push_back({w1, w0, id});
    for (int a = 2; a < q; ++a) {
        QWord wa = w;
        wa.push_back(static_cast<std::uint8_t>(a));
        v.rules.push_back({wa, wa, id});
    }
    for (const auto& s : spine_siblings(w, q)) v.rules.push_back({s, s, id});
    return q_normalize(v);
}

QWord zeros(int n) { return QWord(static_cast<size_t>(n), 0); }

} // namespace

std::string QCertificate::json() const {
    ordered_json j;
    j["class"] = "Vq";
    j["q"] = q;
    ordered_json gens = ordered_json::array();
    for (const auto& g : group_gens) gens.push_back(perm_str(g));
    j["G"] = gens;
    j["k"] = k;
    j["s"] = s.str();
    j["g0"] = g0.str();
    ordered_json ch = ordered_json::array();
    for (const auto& w : chain) ch.push_back(qword_str(w));
    j["chain"] = ch;
    ordered_json ws = ordered_json::array();
    for (const auto& w : witnesses) ws.push_back(w.str());
    j["witnesses"] = ws;
    ordered_json fs = ordered_json::array();
    for (const auto& f : facts) {
        ordered_json o;
        o["claim"] = f.claim;
        o["citation"] = f.citation;
        fs.push_back(o);
    }
    j["facts"] = fs;
    return j.dump(2) + "\n";
}

QCertificate QCertificate::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad certificate JSON: ") + e.what());
    }
    try {
        QCertificate c;
        if (j.at("class").get<std::string>() != "Vq") throw UsageError("not a Vq certificate");
        c.q = j.at("q").get<int>();
        for (const auto& g : j.at("G")) c.group_gens.push_back(perm_parse(g.get<std::string>(), c.q));
        c.k = j.at("k").get<int>();
        c.s = QElement::parse(j.at("s").get<std::string>(), c.q);
        c.g0 = QElement::parse(j.at("g0").get<std::string>(), c.q);
        for (const auto& w : j.at("chain")) c.chain.push_back(qword_parse(w.get<std::string>(), c.q));
        for (const auto& w : j.at("witnesses"))
            c.witnesses.push_back(QElement::parse(w.get<std::string>(), c.q));
        for (const auto& f : j.at("facts"))
            c.facts.push_back({f.at("claim").get<std::string>(), f.at("citation").get<std::string>()});
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad certificate JSON: ") + e.what());
    }
}

QCertificate q_build_certificate(const QElement& v, int k, const PermGroupSpec& g) {
    if (k < 1) throw PreconditionError("q_build_certificate: k must be positive");
    q_validate(v, g);
    QElement s = q_normalize(v);
    auto cover = q_support_cover(s);
    if (cover.size() == 1 && cover[0].empty())
        throw PreconditionError(
            "q_build_certificate: support covers the Cantor space; preprocessing required "
            "(decompose into small-support factors first)");

    QCertificate cert;
    cert.q = v.q;
    cert.group_gens = g.generators();
    cert.k = k;
    cert.s = s;
    for (int i = 0; i <= k + 1; ++i) cert.chain.push_back(zeros(k + 1 - i));

    if (cover.empty()) {
        cert.g0 = QElement::identity(v.q);
    } else {
        // map each cover cylinder to a slot deep inside I(w_0)
        int q = v.q;
        int slotLen = 0;
        std::int64_t cap = 1;
        while (cap < static_cast<std::int64_t>(cover.size())) {
            cap *= q;
            ++slotLen;
        }
        QWord base = zeros(k + 1);
        std::vector<QWord> slots, restRange;
        for (std::int64_t j = 0; j < cap; ++j) {
            QWord slot = base;
            std::int64_t x = j;
            QWord digits(static_cast<size_t>(slotLen), 0);
            for (int d = slotLen - 1; d >= 0; --d) {
                digits[static_cast<size_t>(d)] = static_cast<std::uint8_t>(x % q);
                x /= q;
            }
            slot.insert(slot.end(), digits.begin(), digits.end());
            if (j < static_cast<std::int64_t>(cover.size())) slots.push_back(slot);
            else restRange.push_back(slot);
        }
        for (const auto& sib : spine_siblings(base, q)) restRange.push_back(sib);
        std::vector<QWord> restDomain = complement_words(cover, q);
        while (restDomain.size() < restRange.size()) {
            QWord last = restDomain.back();
            restDomain.pop_back();
            for (int a = 0; a < q; ++a) {
                QWord c = last;
                c.push_back(static_cast<std::uint8_t>(a));
                restDomain.push_back(c);
            }
        }
        while (restRange.size() < restDomain.size()) {
            QWord last = restRange.back();
            restRange.pop_back();
            for (int a = 0; a < q; ++a) {
                QWord c = last;
                c.push_back(static_cast<std::uint8_t>(a));
                restRange.push_back(c);
            }
        }
        QElement g0;
        g0.q = q;
        Perm id = perm_identity(q);
        for (size_t i = 0; i < cover.size(); ++i) g0.rules.push_back({cover[i], slots[i], id});
        for (size_t i = 0; i < restDomain.size(); ++i)
            g0.rules.push_back({restDomain[i], restRange[i], id});
        cert.g0 = q_normalize(g0);
    }

    for (int i = 1; i <= k; ++i) cert.witnesses.push_back(branch_swap_under(zeros(k - i), v.q));
    for (int i = 1; i <= k; ++i) cert.facts.push_back(vq_simplicity_fact());
    cert.facts.push_back(criterion_fact());
    return cert;
}

VerificationReport q_verify_certificate(const QCertificate& c) {
    VerificationReport rep;
    size_t k = static_cast<size_t>(c.k);
    bool shape = c.k >= 1 && c.chain.size() == k + 2 && c.witnesses.size() == k && c.chain.back().empty();
    rep.add("STRUCT", shape, shape ? "chain and witness counts" : "malformed chain or witness list");
    if (!shape) return rep;

    bool nested = true;
    for (size_t i = 0; i + 1 < c.chain.size(); ++i)
        nested = nested && qword_is_prefix(c.chain[i + 1], c.chain[i]) &&
                 c.chain[i + 1].size() < c.chain[i].size();
    rep.add("Q0", nested, "cylinder chain strictly nested");

    QElement conj = q_compose(c.g0, q_compose(c.s, q_invert(c.g0)));
    bool q1 = true;
    for (const auto& w : q_support_cover(conj)) q1 = q1 && qword_is_prefix(c.chain[0], w);
    rep.add("Q1", q1, "conjugated seed supported inside I(w_0)");

    bool q2 = true;
    for (size_t i = 0; i < k; ++i)
        for (const auto& w : q_support_cover(c.witnesses[i]))
            q2 = q2 && qword_is_prefix(c.chain[i + 2], w);
    rep.add("Q2", q2, "witness supported in the clopen cylinder I(w_{i+1})");

    bool q3 = true;
    for (size_t i = 0; i < k; ++i) {
        auto img = q_image_of_cylinder(c.witnesses[i], c.chain[i + 1]);
        for (const auto& w : img)
            q3 = q3 && !qword_is_prefix(w, c.chain[i + 1]) && !qword_is_prefix(c.chain[i + 1], w);
    }
    rep.add("Q3", q3, "witness displaces I(w_i) off itself");

    Fact expected = vq_simplicity_fact();
    bool q4 = c.facts.size() >= k;
    for (size_t i = 0; i < k && q4; ++i)
        q4 = q4 && !c.facts[i].claim.empty() && c.facts[i].citation == expected.citation;
    rep.add("Q4", q4, "each cylinder subgroup carries its citation");

    rep.assumed_facts = c.facts;
    return rep;
}

} // namespace thv
