#ifndef THV_TRANSPORTER_HPP
#define THV_TRANSPORTER_HPP

#include "thv/element.hpp"
#include "thv/support.hpp"

namespace thv {

/// Builds g of the requested class (T or V) on the circle with
/// image_of(g, u2) contained in u1. The excluded dyadic point x must lie
/// outside u2; the cyclic order of u2's components is preserved, so T-class
/// requests yield T-class outputs.
Element shrink_into(ElementClass cls, const DySet& u2, const DySet& u1, const Dyadic& x);

/// Builds g supported strictly inside the interval i with
/// image_of(g, u2) contained in u1; g is the identity on neighborhoods of
/// both boundary points of i. Requires u2 strictly interior to i and
/// u1 a nonempty subset of i. The output is order preserving (F-class).
Element shrink_within(ElementClass cls, const StdInterval& i, const DySet& u2, const DySet& u1);

/// True iff the support cover of g stays inside i and avoids both of its
/// endpoints.
bool identity_near_boundary(const Element& g, const StdInterval& i);

/// Largest standard dyadic interval contained in the set (leftmost on ties).
StdInterval largest_standard_inside(const DySet& u);

} // namespace thv

#endif
