#ifndef THV_SUPPORT_HPP
#define THV_SUPPORT_HPP

#include "thv/element.hpp"

namespace thv {

bool moved(const Element& g, const Dyadic& x);

/// Union of the domain leaf cells of reduce(g) that do not map onto
/// themselves. Sound leaf-granular cover: every moved point lies inside;
/// the excess is at most finitely many points. Circle-tagged.
DySet support_cover(const Element& g);
Dyadic support_size(const Element& g);
DySet support_cover_of_set(const std::vector<Element>& elements);

} // namespace thv

#endif
