#include "thv/element.hpp"

#include <algorithm>
#include <map>

namespace thv {

namespace {
const Tree kLeaf = std::make_shared<const TreeNode>();
}

Tree tree_leaf() { return kLeaf; }
Tree tree_node(Tree l, Tree r) {
    auto n = std::make_shared<TreeNode>();
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}
bool tree_is_leaf(const Tree& t) { return !t->left; }

int tree_leaf_count(const Tree& t) {
    if (tree_is_leaf(t)) return 1;
    return tree_leaf_count(t->left) + tree_leaf_count(t->right);
}

namespace {
void collect_cells(const Tree& t, StdInterval span, std::vector<StdInterval>& out) {
    if (tree_is_leaf(t)) {
        out.push_back(span);
        return;
    }
    collect_cells(t->left, span.child(0), out);
    collect_cells(t->right, span.child(1), out);
}

Tree build_tree(const std::vector<StdInterval>& cells, size_t lo, size_t hi, StdInterval span) {
    if (hi - lo == 1) {
        if (cells[lo] != span) throw InternalError("partition does not match span");
        return tree_leaf();
    }
    Dyadic mid = span.mid();
    size_t split = lo;
    while (split < hi && cells[split].right() <= mid) ++split;
    if (split == lo || split == hi) throw InternalError("cells do not split at midpoint");
    return tree_node(build_tree(cells, lo, split, span.child(0)),
                     build_tree(cells, split, hi, span.child(1)));
}
} // namespace

std::vector<StdInterval> tree_partition(const Tree& t) {
    std::vector<StdInterval> out;
    collect_cells(t, StdInterval::whole(), out);
    return out;
}

Tree tree_from_partition(const std::vector<StdInterval>& cells) {
    if (cells.empty()) throw InternalError("empty partition");
    return build_tree(cells, 0, cells.size(), StdInterval::whole());
}

std::string tree_str(const Tree& t) {
    if (tree_is_leaf(t)) return "*";
    return "(" + tree_str(t->left) + tree_str(t->right) + ")";
}

Tree tree_parse(const std::string& text, size_t& pos) {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) throw UsageError("unexpected end of tree text");
    char c = text[pos];
    if (c == '*') {
        ++pos;
        return tree_leaf();
    }
    if (c == '(') {
        ++pos;
        Tree l = tree_parse(text, pos);
        Tree r = tree_parse(text, pos);
        while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size() || text[pos] != ')') throw UsageError("missing ')' in tree text");
        ++pos;
        return tree_node(std::move(l), std::move(r));
    }
    throw UsageError(std::string("bad tree character '") + c + "'");
}

std::string class_name(ElementClass c) {
    switch (c) {
        case ElementClass::F: return "F";
        case ElementClass::T: return "T";
        case ElementClass::V: return "V";
    }
    return "?";
}

Element::Element() : legs_{{StdInterval::whole(), StdInterval::whole()}} {}

Element::Element(std::vector<Leg> legs) : legs_(std::move(legs)) {
    std::sort(legs_.begin(), legs_.end(),
              [](const Leg& x, const Leg& y) { return interval_less(x.src, y.src); });
    if (legs_.empty()) throw InternalError("element needs at least one leg");
    Dyadic cursor(0, 0);
    for (const auto& l : legs_) {
        if (l.src.left() != cursor) throw InternalError("domain cells do not tile [0,1]");
        cursor = l.src.right();
    }
    if (cursor != Dyadic(1, 0)) throw InternalError("domain cells do not tile [0,1]");
    auto dsts = legs_;
    std::sort(dsts.begin(), dsts.end(),
              [](const Leg& x, const Leg& y) { return interval_less(x.dst, y.dst); });
    cursor = Dyadic(0, 0);
    for (const auto& l : dsts) {
        if (l.dst.left() != cursor) throw InternalError("range cells do not tile [0,1]");
        cursor = l.dst.right();
    }
    if (cursor != Dyadic(1, 0)) throw InternalError("range cells do not tile [0,1]");
}

bool Element::is_identity() const {
    return legs_.size() == 1 || std::all_of(legs_.begin(), legs_.end(),
                                            [](const Leg& l) { return l.src == l.dst; });
}

Tree Element::domain_tree() const {
    std::vector<StdInterval> cells;
    for (const auto& l : legs_) cells.push_back(l.src);
    return tree_from_partition(cells);
}

Tree Element::range_tree() const {
    std::vector<StdInterval> cells;
    for (const auto& l : legs_) cells.push_back(l.dst);
    std::sort(cells.begin(), cells.end(), interval_less);
    return tree_from_partition(cells);
}

std::vector<int> Element::permutation() const {
    std::vector<StdInterval> dsts;
    for (const auto& l : legs_) dsts.push_back(l.dst);
    std::sort(dsts.begin(), dsts.end(), interval_less);
    std::vector<int> perm(legs_.size());
    for (size_t i = 0; i < legs_.size(); ++i) {
        auto it = std::find(dsts.begin(), dsts.end(), legs_[i].dst);
        perm[i] = static_cast<int>(it - dsts.begin());
    }
    return perm;
}

Element Element::from_trees(const Tree& domain, const Tree& range, const std::vector<int>& perm_1based) {
    auto dcells = tree_partition(domain);
    auto rcells = tree_partition(range);
    if (dcells.size() != rcells.size()) throw UsageError("tree pair: leaf counts differ");
    size_t n = dcells.size();
    std::vector<int> perm;
    if (perm_1based.empty()) {
        for (size_t i = 0; i < n; ++i) perm.push_back(static_cast<int>(i));
    } else {
        if (perm_1based.size() != n) throw UsageError("tree pair: permutation length mismatch");
        std::vector<bool> seen(n, false);
        for (int p : perm_1based) {
            if (p < 1 || p > static_cast<int>(n) || seen[static_cast<size_t>(p - 1)])
                throw UsageError("tree pair: not a permutation");
            seen[static_cast<size_t>(p - 1)] = true;
            perm.push_back(p - 1);
        }
    }
    std::vector<Leg> legs;
    for (size_t i = 0; i < n; ++i) legs.push_back({dcells[i], rcells[static_cast<size_t>(perm[i])]});
    return Element(std::move(legs));
}

std::string Element::str() const {
    auto perm = permutation();
    bool id = true;
    for (size_t i = 0; i < perm.size(); ++i) id = id && perm[i] == static_cast<int>(i);
    std::string s = tree_str(domain_tree()) + " -> " + tree_str(range_tree());
    if (!id) {
        s += " ; [";
        for (size_t i = 0; i < perm.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(perm[i] + 1);
        }
        s += "]";
    }
    return s;
}

Element Element::parse(const std::string& text) {
    auto arrow = text.find("->");
    if (arrow == std::string::npos) throw UsageError("element text needs '->'");
    size_t pos = 0;
    std::string dpart = text.substr(0, arrow);
    Tree domain = tree_parse(dpart, pos);
    while (pos < dpart.size() && isspace(static_cast<unsigned char>(dpart[pos]))) ++pos;
    if (pos != dpart.size()) throw UsageError("trailing characters after domain tree");
    std::string rest = text.substr(arrow + 2);
    pos = 0;
    Tree range = tree_parse(rest, pos);
    while (pos < rest.size() && isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
    std::vector<int> perm;
    if (pos < rest.size()) {
        if (rest[pos] != ';') throw UsageError("expected ';' before permutation");
        ++pos;
        while (pos < rest.size() && isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos >= rest.size() || rest[pos] != '[') throw UsageError("expected '[' in permutation");
        ++pos;
        std::string body;
        while (pos < rest.size() && rest[pos] != ']') body += rest[pos++];
        if (pos >= rest.size()) throw UsageError("missing ']' in permutation");
        ++pos;
        if (body != "id") {
            std::string tok;
            for (char c : body + " ") {
                if (isspace(static_cast<unsigned char>(c))) {
                    if (!tok.empty()) {
                        try {
                            perm.push_back(std::stoi(tok));
                        } catch (const std::logic_error&) {
                            throw UsageError("bad permutation entry: " + tok);
                        }
                        tok.clear();
                    }
                } else {
                    tok += c;
                }
            }
        }
        while (pos < rest.size() && isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos != rest.size()) throw UsageError("trailing characters after permutation");
    }
    return from_trees(domain, range, perm);
}

ElementClass class_of(const Element& g) {
    Element r = reduce(g);
    auto perm = r.permutation();
    int n = static_cast<int>(perm.size());
    bool id = true;
    for (int i = 0; i < n; ++i) id = id && perm[static_cast<size_t>(i)] == i;
    if (id) return ElementClass::F;
    int c = (perm[0] - 0 + n) % n;
    bool cyclic = true;
    for (int i = 0; i < n; ++i) cyclic = cyclic && perm[static_cast<size_t>(i)] == (i + c) % n;
    return cyclic ? ElementClass::T : ElementClass::V;
}

Dyadic evaluate(const Element& g, const Dyadic& x) {
    if (x == Dyadic(1, 0)) return x; // fixed endpoint in the F reading of [0,1]
    if (!x.in_unit_half_open()) throw UsageError("evaluate: point outside [0,1]");
    for (const auto& l : g.legs()) {
        if (l.src.left() <= x && x < l.src.right()) {
            int slope = l.src.b - l.dst.b;
            return l.dst.left() + (x - l.src.left()).mul_pow2(slope);
        }
    }
    throw InternalError("evaluate: no cell contains point");
}

Element reduce(const Element& g) {
    std::vector<Element::Leg> legs = g.legs();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < legs.size(); ++i) {
            const auto& x = legs[i];
            const auto& y = legs[i + 1];
            bool src_sib = x.src.b == y.src.b && x.src.b > 0 && x.src.a % 2 == 0 && y.src.a == x.src.a + 1;
            bool dst_sib = x.dst.b == y.dst.b && x.dst.b > 0 && x.dst.a % 2 == 0 && y.dst.a == x.dst.a + 1;
            if (src_sib && dst_sib) {
                legs[i] = {x.src.parent(), x.dst.parent()};
                legs.erase(legs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    return Element(std::move(legs));
}

Element compose(const Element& g, const Element& h) {
    std::vector<Element::Leg> legs;
    for (const auto& hl : h.legs()) {
        for (const auto& gl : g.legs()) {
            StdInterval mid;
            if (gl.src.contains(hl.dst)) mid = hl.dst;
            else if (hl.dst.contains(gl.src)) mid = gl.src;
            else continue;
            StdInterval src = map_through(mid, hl.dst, hl.src);
            StdInterval dst = map_through(mid, gl.src, gl.dst);
            legs.push_back({src, dst});
        }
    }
    return reduce(Element(std::move(legs)));
}

Element invert(const Element& g) {
    std::vector<Element::Leg> legs;
    for (const auto& l : g.legs()) legs.push_back({l.dst, l.src});
    return Element(std::move(legs));
}

bool equals(const Element& g, const Element& h) { return reduce(g) == reduce(h); }

DySet image_of(const Element& g, const DySet& a) {
    std::vector<StdInterval> out;
    for (const auto& p : a.parts()) {
        for (const auto& l : g.legs()) {
            StdInterval piece;
            if (l.src.contains(p)) piece = p;
            else if (p.contains(l.src)) piece = l.src;
            else continue;
            out.push_back(map_through(piece, l.src, l.dst));
        }
    }
    return DySet(a.space(), std::move(out));
}

Element refine_at(const Element& g, const Dyadic& x) {
    if (x <= Dyadic(0, 0) || Dyadic(1, 0) <= x) return g;
    std::vector<Element::Leg> legs;
    for (const auto& l : g.legs()) {
        if (!l.src.contains_interior(x)) {
            legs.push_back(l);
            continue;
        }
        // Split the leg at x; descend until x is a cell boundary.
        std::vector<StdInterval> stack{l.src};
        while (!stack.empty()) {
            StdInterval cell = stack.back();
            stack.pop_back();
            if (cell.contains_interior(x)) {
                stack.push_back(cell.child(0));
                stack.push_back(cell.child(1));
            } else {
                legs.push_back({cell, map_through(cell, l.src, l.dst)});
            }
        }
    }
    return Element(std::move(legs));
}

Element block_swap(const StdInterval& i1, const StdInterval& i2) {
    if (i1.interiors_overlap(i2)) throw UsageError("block_swap: intervals overlap");
    std::vector<Element::Leg> legs{{i1, i2}, {i2, i1}};
    DySet rest = DySet(Space::Line, {i1, i2}).complement();
    for (const auto& p : rest.parts()) legs.push_back({p, p});
    return reduce(Element(std::move(legs)));
}

Element order_map(const std::vector<StdInterval>& from, const std::vector<StdInterval>& to) {
    if (from.size() != to.size()) throw InternalError("order_map: cell counts differ");
    std::vector<Element::Leg> legs;
    for (size_t i = 0; i < from.size(); ++i) legs.push_back({from[i], to[i]});
    return reduce(Element(std::move(legs)));
}

std::string gen_name(Gen g) {
    switch (g) {
        case Gen::A: return "A";
        case Gen::B: return "B";
        case Gen::C: return "C";
        case Gen::P0: return "P0";
    }
    return "?";
}

Element generator(Gen name) {
    auto iv = [](std::int64_t a, int b) { return StdInterval(a, b); };
    switch (name) {
        case Gen::A:
            return Element({{iv(0, 2), iv(0, 1)}, {iv(1, 2), iv(2, 2)}, {iv(1, 1), iv(3, 2)}});
        case Gen::B:
            return Element({{iv(0, 1), iv(0, 1)},
                            {iv(4, 3), iv(2, 2)},
                            {iv(5, 3), iv(6, 3)},
                            {iv(3, 2), iv(7, 3)}});
        case Gen::C:
            return Element({{iv(0, 1), iv(3, 2)}, {iv(2, 2), iv(0, 1)}, {iv(3, 2), iv(2, 2)}});
        case Gen::P0:
            return Element({{iv(0, 2), iv(1, 2)}, {iv(1, 2), iv(0, 2)}, {iv(1, 1), iv(1, 1)}});
    }
    throw UsageError("unknown generator");
}

std::string Word::str() const {
    if (letters.empty()) return "ID";
    std::string s;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) s += " ";
        s += gen_name(letters[i].first);
        if (letters[i].second != 1) s += "^" + std::to_string(letters[i].second);
    }
    return s;
}

Word Word::parse(const std::string& text) {
    Word w;
    std::string tok;
    auto flush = [&]() {
        if (tok.empty()) return;
        if (tok == "ID" || tok == "id" || tok == "1") {
            tok.clear();
            return;
        }
        std::string base = tok;
        int e = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            try {
                e = std::stoi(tok.substr(caret + 1));
            } catch (const std::logic_error&) {
                throw UsageError("bad exponent in word token: " + tok);
            }
        }
        Gen g;
        if (base == "A") g = Gen::A;
        else if (base == "B") g = Gen::B;
        else if (base == "C") g = Gen::C;
        else if (base == "P0" || base == "pi0") g = Gen::P0;
        else throw UsageError("unknown generator: " + base);
        if (e != 0) w.letters.emplace_back(g, e);
        tok.clear();
    };
    for (char c : text + " ") {
        if (isspace(static_cast<unsigned char>(c))) flush();
        else tok += c;
    }
    return w;
}

Element eval_word(const Word& w) {
    Element acc = Element::identity();
    // Leftmost factor applied last: fold from the right.
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        Element base = generator(it->first);
        Element pow = Element::identity();
        int e = it->second;
        Element factor = e > 0 ? base : invert(base);
        for (int i = 0; i < std::abs(e); ++i) pow = compose(factor, pow);
        acc = compose(pow, acc);
    }
    return reduce(acc);
}

Element eval_word(const Word& w, ElementClass ambient) {
    for (const auto& [g, e] : w.letters) {
        (void)e;
        if (ambient == ElementClass::F && (g == Gen::C || g == Gen::P0))
            throw PreconditionError("generator " + gen_name(g) + " is not in class F");
        if (ambient == ElementClass::T && g == Gen::P0)
            throw PreconditionError("generator P0 is not in class T");
    }
    return eval_word(w);
}

} // namespace thv
