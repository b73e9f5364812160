#ifndef THV_SMALLSUPPORT_HPP
#define THV_SMALLSUPPORT_HPP

#include <optional>

#include "thv/element.hpp"
#include "thv/support.hpp"

namespace thv {

/// Affine copy of [0,1] sitting on the circle at [offset, offset + 2^-depth]
/// (mod 1). The identification carries standard dyadic intervals to standard
/// dyadic intervals; offsets stay multiples of 2^-(depth+1) throughout.
struct Chart {
    Dyadic offset;
    int depth = 0;

    Dyadic length() const { return Dyadic(1, depth); }
    bool wraps() const { return Dyadic(1, 0) < offset + length(); }
    Dyadic to_local(const Dyadic& p) const { return (p - offset).mod1().mul_pow2(depth); }
    Dyadic to_global(const Dyadic& t) const { return (offset + t.mul_pow2(-depth)).mod1(); }
    Chart sub(const Chart& inner) const {
        return Chart{(offset + inner.offset.mul_pow2(-depth)).mod1(), depth + inner.depth};
    }
};

extern const Chart kWholeChart; // {0, 0}
extern const Chart kU1;         // [0,1/2]
extern const Chart kU2;         // [1/4,3/4]
extern const Chart kU3;         // [1/2,1]
extern const Chart kU4;         // [3/4,1] u [0,1/4]

/// Element acting as f (given in chart coordinates) inside the chart arc,
/// identity outside.
Element transport_from_chart(const Element& f, const Chart& chart);

/// Inverse of transport_from_chart; g must be supported in the chart arc.
Element restrict_to_chart(const Element& g, const Chart& chart);

/// The F element supported in [0,1] carrying `from` to `to` (both interior
/// dyadics); two-sided padding of breakpoint trees.
Element point_mover(const Dyadic& from, const Dyadic& to);

struct FactorList {
    std::vector<Element> factors; // rightmost applied first
    Element target;
    Dyadic epsilon;

    Element product() const;
};

/// 1..4 when the support cover lies in the carrier U_i, smallest such i.
std::optional<int> carrier_index(const Element& g);

/// Seed factorizations of the standard generators into carrier-supported
/// factors; the A case is the transcribed three-factor chain.
FactorList base_factorization(Gen name);

Word f_to_word(const Element& g); // class F only; word over {A, B}

FactorList decompose_small(const Element& g, const Dyadic& eps);

} // namespace thv

#endif
