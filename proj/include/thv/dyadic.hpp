#ifndef THV_DYADIC_HPP
#define THV_DYADIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "thv/errors.hpp"

namespace thv {

/// Exact dyadic rational num / 2^exp, canonical when exp == 0 or num is odd.
struct Dyadic {
    std::int64_t num = 0;
    int exp = 0;

    Dyadic() = default;
    Dyadic(std::int64_t n, int e);

    static Dyadic zero() { return Dyadic(0, 0); }
    static Dyadic one() { return Dyadic(1, 0); }
    static Dyadic half(int e) { return Dyadic(1, e); } // 2^-e

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return exp == 0; }

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator-() const { return Dyadic(-num, exp); }
    Dyadic operator*(const Dyadic& o) const;
    Dyadic mul_pow2(int k) const; // value * 2^k

    bool operator==(const Dyadic& o) const { return num == o.num && exp == o.exp; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const;
    bool operator<=(const Dyadic& o) const { return *this < o || *this == o; }
    bool operator>(const Dyadic& o) const { return o < *this; }
    bool operator>=(const Dyadic& o) const { return o <= *this; }

    bool in_unit_closed() const;  // 0 <= x <= 1
    bool in_unit_half_open() const; // 0 <= x < 1

    Dyadic mod1() const; // representative in [0,1)

    std::string str() const; // "a/2^b", integers printed bare
    static Dyadic parse(const std::string& text);
};

inline Dyadic midpoint(const Dyadic& a, const Dyadic& b) {
    return (a + b).mul_pow2(-1);
}

/// Standard dyadic interval [a/2^b, (a+1)/2^b] in [0,1], 0 <= a < 2^b.
struct StdInterval {
    std::int64_t a = 0;
    int b = 0;

    StdInterval() = default;
    StdInterval(std::int64_t a_, int b_);

    static StdInterval whole() { return StdInterval(0, 0); }

    Dyadic left() const { return Dyadic(a, b); }
    Dyadic right() const { return Dyadic(a + 1, b); }
    Dyadic length() const { return Dyadic(1, b); }
    Dyadic mid() const { return Dyadic(2 * a + 1, b + 1); }
    bool is_whole() const { return b == 0; }

    StdInterval parent() const;
    StdInterval child(int bit) const; // 0 = left half, 1 = right half
    StdInterval left_half() const { return child(0); }
    StdInterval right_half() const { return child(1); }
    StdInterval second_quarter() const { return StdInterval(4 * a + 1, b + 2); }
    StdInterval fourth_quarter() const { return StdInterval(4 * a + 3, b + 2); }

    bool operator==(const StdInterval& o) const { return a == o.a && b == o.b; }
    bool operator!=(const StdInterval& o) const { return !(*this == o); }

    bool contains(const StdInterval& o) const; // as sets, this >= o
    bool contains_closed(const Dyadic& x) const;
    bool contains_interior(const Dyadic& x) const;
    bool interiors_overlap(const StdInterval& o) const;
    bool touches(const StdInterval& o) const; // share exactly an endpoint (line sense)

    std::string str() const;
};

/// Ordering by left endpoint, finer first on ties.
bool interval_less(const StdInterval& x, const StdInterval& y);

/// P must be contained in `from`; returns the corresponding subinterval of `to`
/// under the affine orientation-preserving bijection from -> to.
StdInterval map_through(const StdInterval& p, const StdInterval& from, const StdInterval& to);

/// Minimal standard-interval partition of [lo, hi] (dyadic endpoints, lo < hi).
std::vector<StdInterval> standard_cover(const Dyadic& lo, const Dyadic& hi);

enum class Space { Line, Circle };

/// Canonical finite union of standard dyadic intervals on [0,1] (line) or
/// the circle [0,1]/{0=1}. Parts are sorted, interiors disjoint, and no two
/// mergeable siblings are kept unmerged.
class DySet {
public:
    DySet() : space_(Space::Line) {}
    explicit DySet(Space s) : space_(s) {}
    DySet(Space s, std::vector<StdInterval> parts);

    static DySet whole(Space s) { return DySet(s, {StdInterval::whole()}); }
    static DySet empty(Space s) { return DySet(s); }

    Space space() const { return space_; }
    const std::vector<StdInterval>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }
    bool is_whole() const { return parts_.size() == 1 && parts_[0].is_whole(); }

    bool contains_point(const Dyadic& x) const; // closed semantics
    bool contains(const StdInterval& iv) const;
    bool contains(const DySet& other) const;

    DySet retag(Space s) const { return DySet(s, parts_); }
    DySet unite(const DySet& other) const;
    DySet intersect(const DySet& other) const;
    DySet complement() const;

    bool operator==(const DySet& o) const { return space_ == o.space_ && parts_ == o.parts_; }
    bool operator!=(const DySet& o) const { return !(*this == o); }

    std::string str() const;
    static DySet parse(const std::string& text, Space s);

private:
    Space space_;
    std::vector<StdInterval> parts_;
};

StdInterval make_interval(std::int64_t a, int b);
bool sets_disjoint(const DySet& a, const DySet& b);
Dyadic set_size(const DySet& a);
StdInterval image_under_affine(const StdInterval& iv, int slope_exp, const Dyadic& offset);

} // namespace thv

#endif
