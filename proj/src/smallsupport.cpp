#include "thv/smallsupport.hpp"

#include <algorithm>

namespace thv {

const Chart kWholeChart{Dyadic(0, 0), 0};
const Chart kU1{Dyadic(0, 0), 1};
const Chart kU2{Dyadic(1, 2), 1};
const Chart kU3{Dyadic(1, 1), 1};
const Chart kU4{Dyadic(3, 2), 1};

namespace {

StdInterval chart_cell(const StdInterval& cell, const Chart& chart) {
    if (cell.b < 1) throw InternalError("chart_cell: cell too coarse for chart transport");
    Dyadic lo = (chart.offset + cell.left().mul_pow2(-chart.depth)).mod1();
    int b = cell.b + chart.depth;
    Dyadic idx = lo.mul_pow2(b);
    if (!idx.is_integer()) throw InternalError("chart_cell: image not standard");
    return StdInterval(idx.num, b);
}

StdInterval unchart_cell(const StdInterval& cell, const Chart& chart) {
    Dyadic lo = chart.to_local(cell.left());
    int b = cell.b - chart.depth;
    if (b < 0) throw InternalError("unchart_cell: cell coarser than chart");
    Dyadic idx = lo.mul_pow2(b);
    if (!idx.is_integer()) throw InternalError("unchart_cell: preimage not standard");
    return StdInterval(idx.num, b);
}

std::vector<StdInterval> chart_complement(const Chart& chart) {
    if (chart.depth == 0) return {};
    Dyadic end = chart.offset + chart.length();
    if (chart.wraps()) return standard_cover(end.mod1(), chart.offset);
    std::vector<StdInterval> out;
    if (Dyadic(0, 0) < chart.offset)
        for (const auto& p : standard_cover(Dyadic(0, 0), chart.offset)) out.push_back(p);
    if (end < Dyadic(1, 0))
        for (const auto& p : standard_cover(end, Dyadic(1, 0))) out.push_back(p);
    return out;
}

} // namespace

Element transport_from_chart(const Element& f, const Chart& chart) {
    if (chart.depth == 0) return f;
    Element g = reduce(f);
    if (g.is_identity()) return Element::identity();
    if (chart.wraps()) {
        Dyadic t0 = chart.to_local(Dyadic(0, 0));
        g = refine_at(g, t0);
        g = refine_at(g, evaluate(invert(g), t0));
    }
    std::vector<Element::Leg> legs;
    for (const auto& l : g.legs()) legs.push_back({chart_cell(l.src, chart), chart_cell(l.dst, chart)});
    for (const auto& p : chart_complement(chart)) legs.push_back({p, p});
    return reduce(Element(std::move(legs)));
}

Element restrict_to_chart(const Element& g, const Chart& chart) {
    if (chart.depth == 0) return reduce(g);
    Element r = reduce(g);
    Dyadic start = chart.offset;
    Dyadic end = (chart.offset + chart.length()).mod1();
    r = refine_at(r, start);
    r = refine_at(r, end);
    auto inside = [&chart](const StdInterval& cell) {
        Dyadic lo = chart.to_local(cell.left());
        return lo < Dyadic(1, 0) && lo + cell.length().mul_pow2(chart.depth) <= Dyadic(1, 0);
    };
    std::vector<Element::Leg> legs;
    for (const auto& l : r.legs()) {
        bool src_in = inside(l.src), dst_in = inside(l.dst);
        if (!src_in || !dst_in) {
            if (l.src != l.dst)
                throw PreconditionError("restrict_to_chart: support leaks outside the chart");
            continue;
        }
        legs.push_back({unchart_cell(l.src, chart), unchart_cell(l.dst, chart)});
    }
    if (legs.empty()) return Element::identity();
    return reduce(Element(std::move(legs)));
}

Element point_mover(const Dyadic& from, const Dyadic& to) {
    if (!(Dyadic(0, 0) < from && from < Dyadic(1, 0) && Dyadic(0, 0) < to && to < Dyadic(1, 0)))
        throw PreconditionError("point_mover: endpoints must be interior dyadics");
    if (from == to) return Element::identity();
    auto halves = [](const Dyadic& x) {
        std::pair<std::vector<StdInterval>, std::vector<StdInterval>> out;
        out.first = standard_cover(Dyadic(0, 0), x);
        out.second = standard_cover(x, Dyadic(1, 0));
        return out;
    };
    auto [dl, dr] = halves(from);
    auto [rl, rr] = halves(to);
    auto pad = [](std::vector<StdInterval>& v, size_t n) {
        while (v.size() < n) {
            StdInterval first = v.front();
            v.erase(v.begin());
            v.insert(v.begin(), {first.child(0), first.child(1)});
        }
    };
    pad(dl, rl.size());
    pad(rl, dl.size());
    pad(dr, rr.size());
    pad(rr, dr.size());
    std::vector<StdInterval> from_cells = dl, to_cells = rl;
    from_cells.insert(from_cells.end(), dr.begin(), dr.end());
    to_cells.insert(to_cells.end(), rr.begin(), rr.end());
    return order_map(from_cells, to_cells);
}

Element FactorList::product() const {
    Element acc = Element::identity();
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) acc = compose(*it, acc);
    return reduce(acc);
}

std::optional<int> carrier_index(const Element& g) {
    DySet cover = support_cover(g);
    const DySet u1(Space::Circle, {StdInterval(0, 1)});
    const DySet u2(Space::Circle, {StdInterval(1, 2), StdInterval(2, 2)});
    const DySet u3(Space::Circle, {StdInterval(1, 1)});
    const DySet u4(Space::Circle, {StdInterval(3, 2), StdInterval(0, 2)});
    if (u1.contains(cover)) return 1;
    if (u2.contains(cover)) return 2;
    if (u3.contains(cover)) return 3;
    if (u4.contains(cover)) return 4;
    return std::nullopt;
}

namespace {

Element pm_in(const Chart& chart, const Dyadic& from, const Dyadic& to) {
    return transport_from_chart(point_mover(chart.to_local(from), chart.to_local(to)), chart);
}

/// Movers (applied left to right) carrying y to the circle point 0, each
/// supported in a single carrier arc U_i, paired with those arcs.
std::vector<std::pair<Element, Chart>> movers_to_zero(const Dyadic& y) {
    std::vector<std::pair<Element, Chart>> ms;
    if (y.is_zero()) return ms;
    Dyadic q1(1, 2), q2(1, 1), q3(3, 2);
    if (y < q1 || q3 < y) {
        ms.push_back({pm_in(kU4, y, Dyadic(0, 0)), kU4});
    } else if (y < q2) { // [1/4, 1/2)
        ms.push_back({pm_in(kU1, y, Dyadic(1, 3)), kU1});
        ms.push_back({pm_in(kU4, Dyadic(1, 3), Dyadic(0, 0)), kU4});
    } else if (y == q2) {
        ms.push_back({pm_in(kU2, y, Dyadic(3, 3)), kU2});
        ms.push_back({pm_in(kU1, Dyadic(3, 3), Dyadic(1, 3)), kU1});
        ms.push_back({pm_in(kU4, Dyadic(1, 3), Dyadic(0, 0)), kU4});
    } else { // (1/2, 3/4]
        ms.push_back({pm_in(kU3, y, Dyadic(7, 3)), kU3});
        ms.push_back({pm_in(kU4, Dyadic(7, 3), Dyadic(0, 0)), kU4});
    }
    return ms;
}

/// Movers (in [0,1] coordinates) carrying d to 1/2, supported in single
/// half-length charts of [0,1].
std::vector<std::pair<Element, Chart>> movers_to_half(const Dyadic& d) {
    std::vector<std::pair<Element, Chart>> ms;
    Dyadic half(1, 1), q1(1, 2), q3(3, 2);
    if (d == half) return ms;
    if (q1 < d && d < q3) {
        ms.push_back({pm_in(kU2, d, half), kU2});
    } else if (d <= q1) {
        ms.push_back({pm_in(kU1, d, Dyadic(3, 3)), kU1});
        ms.push_back({pm_in(kU2, Dyadic(3, 3), half), kU2});
    } else {
        ms.push_back({pm_in(kU3, d, Dyadic(5, 3)), kU3});
        ms.push_back({pm_in(kU2, Dyadic(5, 3), half), kU2});
    }
    return ms;
}

std::pair<Element, Element> split_at_half(const Element& h) {
    Element r = refine_at(reduce(h), Dyadic(1, 1));
    std::vector<Element::Leg> left{{StdInterval(1, 1), StdInterval(1, 1)}};
    std::vector<Element::Leg> right{{StdInterval(0, 1), StdInterval(0, 1)}};
    for (const auto& l : r.legs()) {
        if (l.src.right() <= Dyadic(1, 1)) left.push_back(l);
        else right.push_back(l);
    }
    return {reduce(Element(std::move(left))), reduce(Element(std::move(right)))};
}

void decompose_f_rec(const Element& f, const Chart& chart, const Dyadic& eps,
                     std::vector<Element>& out) {
    Element g = reduce(f);
    if (g.is_identity()) return;
    if (support_size(g).mul_pow2(-chart.depth) < eps) {
        out.push_back(transport_from_chart(g, chart));
        return;
    }
    Dyadic d = evaluate(g, Dyadic(1, 1));
    auto movers = movers_to_half(d);
    Element h = g;
    for (const auto& [m, c] : movers) {
        (void)c;
        h = compose(m, h);
    }
    auto [hl, hr] = split_at_half(h);
    for (const auto& [m, c] : movers)
        decompose_f_rec(restrict_to_chart(invert(m), c), chart.sub(c), eps, out);
    decompose_f_rec(restrict_to_chart(hl, kU1), chart.sub(kU1), eps, out);
    decompose_f_rec(restrict_to_chart(hr, kU3), chart.sub(kU3), eps, out);
}

void decompose_f(const Element& g, const Dyadic& eps, std::vector<Element>& out) {
    decompose_f_rec(g, kWholeChart, eps, out);
}

void decompose_t(const Element& g, const Dyadic& eps, std::vector<Element>& out) {
    Dyadic y = evaluate(g, Dyadic(0, 0));
    auto movers = movers_to_zero(y);
    Element h = g;
    for (const auto& [m, c] : movers) {
        (void)c;
        h = compose(m, h);
    }
    if (class_of(h) != ElementClass::F)
        throw InternalError("decompose_t: remainder after routing 0 is not F-class");
    for (const auto& [m, c] : movers)
        decompose_f_rec(restrict_to_chart(invert(m), c), c, eps, out);
    decompose_f(h, eps, out);
}

void decompose_v(const Element& g, const Dyadic& eps, std::vector<Element>& out) {
    // Refine until every domain and range cell is shorter than eps/2.
    std::vector<Element::Leg> legs = reduce(g).legs();
    Dyadic halfEps = eps.mul_pow2(-1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < legs.size(); ++i) {
            if (halfEps <= legs[i].src.length() || halfEps <= legs[i].dst.length()) {
                Element::Leg l = legs[i];
                legs[i] = {l.src.child(0), l.dst.child(0)};
                legs.insert(legs.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            {l.src.child(1), l.dst.child(1)});
                changed = true;
            }
        }
    }
    std::sort(legs.begin(), legs.end(),
              [](const Element::Leg& x, const Element::Leg& y) { return interval_less(x.src, y.src); });
    std::vector<StdInterval> srcs, dsts_sorted;
    for (const auto& l : legs) srcs.push_back(l.src);
    for (const auto& l : legs) dsts_sorted.push_back(l.dst);
    std::sort(dsts_sorted.begin(), dsts_sorted.end(), interval_less);
    size_t n = legs.size();
    std::vector<size_t> rho(n);
    for (size_t i = 0; i < n; ++i) {
        auto it = std::find(dsts_sorted.begin(), dsts_sorted.end(), legs[i].dst);
        rho[i] = static_cast<size_t>(it - dsts_sorted.begin());
    }
    Element f0 = order_map(srcs, dsts_sorted);
    // g = sigma . f0 with sigma permuting the sorted range cells by rho.
    std::vector<bool> seen(n, false);
    std::vector<std::pair<size_t, size_t>> swaps;
    for (size_t start = 0; start < n; ++start) {
        if (seen[start] || rho[start] == start) continue;
        size_t c = start;
        std::vector<size_t> cycle;
        while (!seen[c]) {
            seen[c] = true;
            cycle.push_back(c);
            c = rho[c];
        }
        for (size_t j = 0; j + 1 < cycle.size(); ++j) swaps.emplace_back(cycle[j], cycle[j + 1]);
    }
    for (const auto& [a, b] : swaps) out.push_back(block_swap(dsts_sorted[a], dsts_sorted[b]));
    decompose_f(f0, eps, out);
}

} // namespace

FactorList decompose_small(const Element& g, const Dyadic& eps) {
    if (eps <= Dyadic(0, 0)) throw PreconditionError("decompose_small: eps must be positive");
    FactorList fl;
    fl.target = reduce(g);
    fl.epsilon = eps;
    if (fl.target.is_identity()) return fl;
    switch (class_of(fl.target)) {
        case ElementClass::F: decompose_f(fl.target, eps, fl.factors); break;
        case ElementClass::T: decompose_t(fl.target, eps, fl.factors); break;
        case ElementClass::V: decompose_v(fl.target, eps, fl.factors); break;
    }
    return fl;
}

FactorList base_factorization(Gen name) {
    FactorList fl;
    fl.epsilon = Dyadic(5, 3);
    auto iv = [](std::int64_t a, int b) { return StdInterval(a, b); };
    switch (name) {
        case Gen::A: {
            // The three-factor chain through the partitions
            //   {1/8,1/4,1/2}  ->  {1/4,3/8,1/2}  ->  {1/4,1/2,5/8,3/4}  ->  {1/2,3/4,7/8}
            Element g1({{iv(0, 3), iv(0, 2)}, {iv(1, 3), iv(2, 3)}, // [1/8,1/4]->[1/4,3/8]
                        {iv(1, 2), iv(3, 3)}, {iv(1, 1), iv(1, 1)}});
            Element g2({{iv(0, 2), iv(0, 2)}, {iv(2, 3), iv(1, 2)}, {iv(3, 3), iv(4, 3)},
                        {iv(2, 2), iv(5, 3)}, {iv(3, 2), iv(3, 2)}});
            Element g3({{iv(0, 1), iv(0, 1)}, {iv(4, 3), iv(2, 2)}, {iv(5, 3), iv(6, 3)},
                        {iv(3, 2), iv(7, 3)}});
            fl.target = generator(Gen::A);
            fl.factors = {g3, g2, g1};
            return fl;
        }
        case Gen::C: {
            Element c = generator(Gen::C);
            fl.target = c;
            auto movers = movers_to_zero(evaluate(c, Dyadic(0, 0)));
            Element h = c;
            for (const auto& [m, ch] : movers) {
                (void)ch;
                h = compose(m, h);
            }
            auto fmovers = movers_to_half(evaluate(h, Dyadic(1, 1)));
            Element h2 = h;
            for (const auto& [m, ch] : fmovers) {
                (void)ch;
                h2 = compose(m, h2);
            }
            auto [hl, hr] = split_at_half(h2);
            for (const auto& [m, ch] : movers) {
                (void)ch;
                fl.factors.push_back(invert(m));
            }
            for (const auto& [m, ch] : fmovers) {
                (void)ch;
                fl.factors.push_back(invert(m));
            }
            if (!hl.is_identity()) fl.factors.push_back(hl);
            if (!hr.is_identity()) fl.factors.push_back(hr);
            return fl;
        }
        case Gen::P0:
            fl.target = generator(Gen::P0);
            fl.factors = {generator(Gen::P0)};
            return fl;
        default:
            throw UsageError("base_factorization: expected A, C or P0");
    }
}

namespace {

Tree rotate_right(const Tree& t, int k) {
    if (k == 0) {
        if (tree_is_leaf(t) || tree_is_leaf(t->left))
            throw InternalError("rotate_right: no caret to rotate");
        return tree_node(t->left->left, tree_node(t->left->right, t->right));
    }
    if (tree_is_leaf(t)) throw InternalError("rotate_right: spine too short");
    return tree_node(t->left, rotate_right(t->right, k - 1));
}

std::vector<int> rotations_to_comb(Tree t) {
    std::vector<int> ks;
    for (;;) {
        int k = 0;
        Tree node = t;
        int found = -1;
        while (!tree_is_leaf(node)) {
            if (!tree_is_leaf(node->left)) {
                found = k;
                break;
            }
            node = node->right;
            ++k;
        }
        if (found < 0) return ks;
        t = rotate_right(t, found);
        ks.push_back(found);
    }
}

void push_letter(Word& w, Gen g, int e) {
    if (e == 0) return;
    if (!w.letters.empty() && w.letters.back().first == g) {
        w.letters.back().second += e;
        if (w.letters.back().second == 0) w.letters.pop_back();
        return;
    }
    w.letters.emplace_back(g, e);
}

void push_y(Word& w, int k, int e) {
    // y_0 = A, y_k = A^(k-1) B A^-(k-1) for k >= 1
    if (k == 0) {
        push_letter(w, Gen::A, e);
        return;
    }
    push_letter(w, Gen::A, k - 1);
    push_letter(w, Gen::B, e);
    push_letter(w, Gen::A, -(k - 1));
}

} // namespace

Word f_to_word(const Element& g) {
    Element r = reduce(g);
    if (class_of(r) != ElementClass::F) throw PreconditionError("f_to_word: element is not F-class");
    auto rot_d = rotations_to_comb(r.domain_tree());
    auto rot_r = rotations_to_comb(r.range_tree());
    Word w;
    // g = M_R^-1 . M_D where M_T = y_{k_m} ... y_{k_1} for T's rotation list.
    for (int k : rot_r) push_y(w, k, -1);
    for (auto it = rot_d.rbegin(); it != rot_d.rend(); ++it) push_y(w, *it, 1);
    return w;
}

} // namespace thv
