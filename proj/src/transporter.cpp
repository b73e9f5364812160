#include "thv/transporter.hpp"

#include <algorithm>

namespace thv {

namespace {

int ceil_log2(std::int64_t n) {
    int t = 0;
    while ((std::int64_t(1) << t) < n) ++t;
    return t;
}

// Right-comb subdivision of `cell` into n standard pieces.
std::vector<StdInterval> comb_split(StdInterval cell, size_t n) {
    std::vector<StdInterval> out;
    while (out.size() + 1 < n) {
        out.push_back(cell.child(0));
        cell = cell.child(1);
    }
    out.push_back(cell);
    return out;
}

// One leg per target piece; the source cell is comb-subdivided to match.
void map_onto_chain(const StdInterval& src, const std::vector<StdInterval>& chain,
                    std::vector<Element::Leg>& legs) {
    auto pieces = comb_split(src, chain.size());
    for (size_t i = 0; i < pieces.size(); ++i) legs.push_back({pieces[i], chain[i]});
}

std::vector<StdInterval> split_part_at(const StdInterval& part, const Dyadic& x) {
    if (!part.contains_interior(x)) return {part};
    std::vector<StdInterval> out;
    for (const auto& c : standard_cover(part.left(), x)) out.push_back(c);
    for (const auto& c : standard_cover(x, part.right())) out.push_back(c);
    return out;
}

std::vector<StdInterval> uniform_slots(const StdInterval& k, int t) {
    std::vector<StdInterval> slots;
    for (std::int64_t j = 0; j < (std::int64_t(1) << t); ++j)
        slots.push_back(StdInterval((k.a << t) + j, k.b + t));
    return slots;
}

} // namespace

StdInterval largest_standard_inside(const DySet& u) {
    if (u.is_empty()) throw PreconditionError("largest_standard_inside: empty set");
    bool have = false;
    StdInterval best;
    auto consider = [&](const StdInterval& k) {
        if (!have || k.b < best.b || (k.b == best.b && interval_less(k, best))) {
            best = k;
            have = true;
        }
    };
    for (const auto& p : u.parts()) {
        StdInterval k = p;
        consider(k);
        while (k.b > 0 && u.contains(k.parent())) {
            k = k.parent();
            consider(k);
        }
    }
    return best;
}

Element shrink_into(ElementClass cls, const DySet& u2, const DySet& u1, const Dyadic& x) {
    if (cls == ElementClass::F) throw PreconditionError("shrink_into: class must be T or V");
    if (u1.is_empty()) throw PreconditionError("shrink_into: target set is empty");
    if (u2.space() != Space::Circle || u1.space() != Space::Circle)
        throw UsageError("shrink_into: circle sets expected");
    Dyadic x0 = x.mod1();
    if (u2.contains_point(x0)) throw PreconditionError("shrink_into: excluded point meets the moving set");
    if (u2.is_empty()) return Element::identity();

    StdInterval k = largest_standard_inside(u1);

    struct Piece {
        StdInterval cell;
        bool moving;
    };
    std::vector<Piece> pieces;
    for (const auto& p : u2.parts()) pieces.push_back({p, true});
    DySet rest = u2.complement();
    for (const auto& p : rest.parts())
        for (const auto& q : split_part_at(p, x0)) pieces.push_back({q, false});
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return interval_less(a.cell, b.cell); });

    // Cyclic order starting at x; x is a boundary of two complement pieces.
    size_t start = 0;
    bool found = false;
    for (size_t i = 0; i < pieces.size(); ++i)
        if (pieces[i].cell.left() == x0) {
            start = i;
            found = true;
        }
    if (!found) throw InternalError("shrink_into: x is not a piece boundary");
    std::rotate(pieces.begin(), pieces.begin() + static_cast<std::ptrdiff_t>(start), pieces.end());

    size_t s = pieces.size();
    auto slots = uniform_slots(k, ceil_log2(static_cast<std::int64_t>(s)));

    // Pieces 1..s-1 take one tiny slot each, in cyclic order from k's left
    // end; the final piece wraps through the remaining slots and the
    // complement of k, closing the circle.
    std::vector<Element::Leg> legs;
    for (size_t j = 0; j + 1 < s; ++j) legs.push_back({pieces[j].cell, slots[j]});
    std::vector<StdInterval> tailChain(slots.begin() + static_cast<std::ptrdiff_t>(s) - 1, slots.end());
    DySet kComp = DySet(Space::Circle, {k}).complement();
    std::vector<StdInterval> compParts = kComp.parts();
    std::stable_partition(compParts.begin(), compParts.end(),
                          [&](const StdInterval& p) { return !(p.left() < k.right()); });
    for (const auto& p : compParts) tailChain.push_back(p);
    map_onto_chain(pieces[s - 1].cell, tailChain, legs);

    return reduce(Element(std::move(legs)));
}

bool identity_near_boundary(const Element& g, const StdInterval& i) {
    DySet cover = support_cover(g);
    for (const auto& p : cover.parts()) {
        if (!i.contains(p)) return false;
        if (!(i.left() < p.left())) return false;
        if (!(p.right() < i.right())) return false;
    }
    return true;
}

Element shrink_within(ElementClass cls, const StdInterval& i, const DySet& u2, const DySet& u1) {
    (void)cls; // the order-preserving construction lands in F, inside every class
    if (u1.is_empty() || !std::all_of(u1.parts().begin(), u1.parts().end(),
                                      [&](const StdInterval& p) { return i.contains(p); }))
        throw PreconditionError("shrink_within: target must be a nonempty subset of the interval");
    for (const auto& p : u2.parts())
        if (!i.contains(p) || !(i.left() < p.left()) || !(p.right() < i.right()))
            throw PreconditionError("shrink_within: moving set must avoid the boundary of the interval");
    if (u2.is_empty()) return Element::identity();

    StdInterval k = largest_standard_inside(u1);
    while (k.left() == i.left() || k.right() == i.right()) {
        if (k.left() == i.left()) k = k.child(1);
        else k = k.child(0);
    }

    Dyadic lo = u2.parts().front().left();
    if (k.left() < lo) lo = k.left();
    Dyadic hi = u2.parts().back().right();
    if (hi < k.right()) hi = k.right();
    Dyadic lo2 = midpoint(i.left(), lo);
    Dyadic hi2 = midpoint(hi, i.right());

    struct Piece {
        StdInterval cell;
        bool moving;
    };
    std::vector<Piece> pieces;
    for (const auto& p : u2.parts()) pieces.push_back({p, true});
    {
        DySet span(Space::Line, standard_cover(lo2, hi2));
        DySet gaps = span.intersect(u2.complement().retag(Space::Line));
        for (const auto& p : gaps.parts()) pieces.push_back({p, false});
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return interval_less(a.cell, b.cell); });

    size_t s = pieces.size();
    if (s < 3 || pieces.front().moving || pieces.back().moving)
        throw InternalError("shrink_within: padding pieces missing");
    auto slots = uniform_slots(k, ceil_log2(static_cast<std::int64_t>(s)));

    std::vector<Element::Leg> legs;
    for (const auto& p : standard_cover(Dyadic(0, 0), lo2)) legs.push_back({p, p});
    for (const auto& p : standard_cover(hi2, Dyadic(1, 0))) legs.push_back({p, p});
    // Leading gap piece absorbs [lo2, end of slot 0]; interior pieces take one
    // slot each; the trailing gap piece absorbs the rest up to hi2.
    std::vector<StdInterval> headChain = standard_cover(lo2, k.left());
    headChain.push_back(slots[0]);
    map_onto_chain(pieces[0].cell, headChain, legs);
    for (size_t j = 1; j + 1 < s; ++j) legs.push_back({pieces[j].cell, slots[j]});
    std::vector<StdInterval> tailChain(slots.begin() + static_cast<std::ptrdiff_t>(s) - 1, slots.end());
    for (const auto& p : standard_cover(k.right(), hi2)) tailChain.push_back(p);
    map_onto_chain(pieces[s - 1].cell, tailChain, legs);

    return reduce(Element(std::move(legs)));
}

} // namespace thv
