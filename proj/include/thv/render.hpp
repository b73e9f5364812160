#ifndef THV_RENDER_HPP
#define THV_RENDER_HPP

#include "thv/element.hpp"

namespace thv {

/// Two-cluster DOT graph of the reduced tree pair; range leaves carry the
/// index of the domain leaf mapping onto them, so the permutation is visible
/// in the picture. Node names are stable preorder ids.
std::string render_dot(const Element& g);

} // namespace thv

#endif
