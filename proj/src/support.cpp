#include "thv/support.hpp"

namespace thv {

bool moved(const Element& g, const Dyadic& x) { return evaluate(g, x) != x; }

DySet support_cover(const Element& g) {
    Element r = reduce(g);
    std::vector<StdInterval> parts;
    for (const auto& l : r.legs())
        if (l.src != l.dst) parts.push_back(l.src);
    return DySet(Space::Circle, std::move(parts));
}

Dyadic support_size(const Element& g) { return set_size(support_cover(g)); }

DySet support_cover_of_set(const std::vector<Element>& elements) {
    DySet acc = DySet::empty(Space::Circle);
    for (const auto& g : elements) acc = acc.unite(support_cover(g));
    return acc;
}

} // namespace thv
