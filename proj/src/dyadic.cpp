#include "thv/dyadic.hpp"

#include <algorithm>
#include <sstream>

namespace thv {

namespace {

constexpr int kMaxExp = 62;

void check_exp(int e) {
    if (e < 0 || e > kMaxExp) throw InternalError("dyadic exponent out of range: " + std::to_string(e));
}

std::int64_t shl_checked(std::int64_t v, int k) {
    if (k < 0 || k > kMaxExp) throw InternalError("dyadic shift out of range");
    std::int64_t r = v;
    for (int i = 0; i < k; ++i) {
        if (r > (INT64_MAX >> 1) || r < (INT64_MIN >> 1)) throw InternalError("dyadic overflow");
        r <<= 1;
    }
    return r;
}

} // namespace

Dyadic::Dyadic(std::int64_t n, int e) : num(n), exp(e) {
    check_exp(e);
    while (exp > 0 && num % 2 == 0) {
        num /= 2;
        --exp;
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    int e = std::max(exp, o.exp);
    return Dyadic(shl_checked(num, e - exp) + shl_checked(o.num, e - o.exp), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + Dyadic(-o.num, o.exp); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
    __int128 p = static_cast<__int128>(num) * o.num;
    if (p > INT64_MAX || p < INT64_MIN) throw InternalError("dyadic overflow");
    return Dyadic(static_cast<std::int64_t>(p), exp + o.exp);
}

Dyadic Dyadic::mul_pow2(int k) const {
    if (k >= 0) return Dyadic(shl_checked(num, k), exp);
    return Dyadic(num, exp - k);
}

bool Dyadic::operator<(const Dyadic& o) const {
    int e = std::max(exp, o.exp);
    return shl_checked(num, e - exp) < shl_checked(o.num, e - o.exp);
}

bool Dyadic::in_unit_closed() const { return Dyadic(0, 0) <= *this && *this <= Dyadic(1, 0); }
bool Dyadic::in_unit_half_open() const { return Dyadic(0, 0) <= *this && *this < Dyadic(1, 0); }

Dyadic Dyadic::mod1() const {
    std::int64_t unit = shl_checked(1, exp);
    std::int64_t r = num % unit;
    if (r < 0) r += unit;
    return Dyadic(r, exp);
}

std::string Dyadic::str() const {
    if (exp == 0) return std::to_string(num);
    return std::to_string(num) + "/2^" + std::to_string(exp);
}

Dyadic Dyadic::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw UsageError("empty dyadic");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Dyadic(std::stoll(t), 0);
        std::string den = t.substr(slash + 1);
        if (den.rfind("2^", 0) != 0) throw UsageError("dyadic denominator must be 2^b: " + text);
        return Dyadic(std::stoll(t.substr(0, slash)), std::stoi(den.substr(2)));
    } catch (const std::logic_error&) {
        throw UsageError("bad dyadic: " + text);
    }
}

StdInterval::StdInterval(std::int64_t a_, int b_) : a(a_), b(b_) {
    check_exp(b);
    if (a < 0 || a >= shl_checked(1, b)) throw UsageError("standard interval out of range: a=" + std::to_string(a_) + " b=" + std::to_string(b_));
}

StdInterval StdInterval::parent() const {
    if (b == 0) throw InternalError("whole interval has no parent");
    return StdInterval(a / 2, b - 1);
}

StdInterval StdInterval::child(int bit) const { return StdInterval(2 * a + bit, b + 1); }

bool StdInterval::contains(const StdInterval& o) const {
    if (o.b < b) return false;
    return (o.a >> (o.b - b)) == a;
}

bool StdInterval::contains_closed(const Dyadic& x) const { return left() <= x && x <= right(); }
bool StdInterval::contains_interior(const Dyadic& x) const { return left() < x && x < right(); }

bool StdInterval::interiors_overlap(const StdInterval& o) const {
    return contains(o) || o.contains(*this);
}

bool StdInterval::touches(const StdInterval& o) const {
    return right() == o.left() || o.right() == left();
}

std::string StdInterval::str() const {
    return "[" + left().str() + "," + right().str() + "]";
}

bool interval_less(const StdInterval& x, const StdInterval& y) {
    if (x.left() != y.left()) return x.left() < y.left();
    return x.b > y.b;
}

StdInterval map_through(const StdInterval& p, const StdInterval& from, const StdInterval& to) {
    if (!from.contains(p)) throw InternalError("map_through: piece not inside source");
    int d = p.b - from.b;
    std::int64_t index = p.a - shl_checked(from.a, d);
    return StdInterval(shl_checked(to.a, d) + index, to.b + d);
}

std::vector<StdInterval> standard_cover(const Dyadic& lo, const Dyadic& hi) {
    if (!(Dyadic(0, 0) <= lo && lo < hi && hi <= Dyadic(1, 0)))
        throw InternalError("standard_cover: bad range " + lo.str() + ".." + hi.str());
    std::vector<StdInterval> out;
    // Walk the binary tree, emitting maximal cells inside [lo, hi].
    std::vector<StdInterval> stack{StdInterval::whole()};
    while (!stack.empty()) {
        StdInterval cell = stack.back();
        stack.pop_back();
        if (cell.right() <= lo || hi <= cell.left()) continue;
        if (lo <= cell.left() && cell.right() <= hi) {
            out.push_back(cell);
            continue;
        }
        stack.push_back(cell.child(1));
        stack.push_back(cell.child(0));
    }
    std::sort(out.begin(), out.end(), interval_less);
    return out;
}

DySet::DySet(Space s, std::vector<StdInterval> parts) : space_(s) {
    std::sort(parts.begin(), parts.end(), interval_less);
    // Drop intervals nested inside an earlier one.
    for (const auto& iv : parts) {
        if (!parts_.empty() && parts_.back().contains(iv)) continue;
        if (!parts_.empty() && iv.contains(parts_.back())) {
            while (!parts_.empty() && iv.contains(parts_.back())) parts_.pop_back();
        }
        parts_.push_back(iv);
    }
    for (size_t i = 0; i + 1 < parts_.size(); ++i)
        if (parts_[i].right() > parts_[i + 1].left())
            throw InternalError("DySet: straddling intervals cannot arise from standard parts");
    // Merge sibling pairs until canonical.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < parts_.size(); ++i) {
            const auto& x = parts_[i];
            const auto& y = parts_[i + 1];
            if (x.b == y.b && x.b > 0 && x.a % 2 == 0 && y.a == x.a + 1) {
                parts_[i] = x.parent();
                parts_.erase(parts_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                changed = true;
                break;
            }
        }
    }
}

bool DySet::contains_point(const Dyadic& x) const {
    Dyadic p = x;
    if (space_ == Space::Circle) p = x.mod1();
    for (const auto& iv : parts_) {
        if (iv.contains_closed(p)) return true;
        if (space_ == Space::Circle && p.is_zero() && iv.right() == Dyadic(1, 0)) return true;
    }
    return false;
}

bool DySet::contains(const StdInterval& iv) const {
    Dyadic total(0, 0);
    for (const auto& p : parts_) {
        if (p.contains(iv)) return true;
        if (iv.contains(p)) total = total + p.length();
    }
    return total == iv.length();
}

bool DySet::contains(const DySet& other) const {
    for (const auto& iv : other.parts_)
        if (!contains(iv)) return false;
    return true;
}

DySet DySet::unite(const DySet& other) const {
    if (space_ != other.space_) throw UsageError("DySet space mismatch");
    std::vector<StdInterval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return DySet(space_, std::move(all));
}

DySet DySet::intersect(const DySet& other) const {
    if (space_ != other.space_) throw UsageError("DySet space mismatch");
    std::vector<StdInterval> out;
    for (const auto& x : parts_)
        for (const auto& y : other.parts_) {
            if (x.contains(y)) out.push_back(y);
            else if (y.contains(x)) out.push_back(x);
        }
    return DySet(space_, std::move(out));
}

DySet DySet::complement() const {
    std::vector<StdInterval> out;
    std::vector<StdInterval> stack{StdInterval::whole()};
    while (!stack.empty()) {
        StdInterval cell = stack.back();
        stack.pop_back();
        bool inside = false, meets = false;
        for (const auto& p : parts_) {
            if (p.contains(cell)) inside = true;
            if (p.contains(cell) || cell.contains(p)) meets = true;
        }
        if (inside) continue;
        if (!meets) {
            out.push_back(cell);
            continue;
        }
        stack.push_back(cell.child(1));
        stack.push_back(cell.child(0));
    }
    return DySet(space_, std::move(out));
}

std::string DySet::str() const {
    std::string s = "{";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += parts_[i].str();
    }
    return s + "}";
}

DySet DySet::parse(const std::string& text, Space s) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw UsageError("bad set: " + text);
    t = t.substr(1, t.size() - 2);
    std::vector<StdInterval> parts;
    size_t pos = 0;
    while (pos < t.size()) {
        if (t[pos] != '[') throw UsageError("bad set: " + text);
        auto close = t.find(']', pos);
        if (close == std::string::npos) throw UsageError("bad set: " + text);
        std::string body = t.substr(pos + 1, close - pos - 1);
        auto comma = body.find(',');
        if (comma == std::string::npos) throw UsageError("bad interval: " + body);
        Dyadic lo = Dyadic::parse(body.substr(0, comma));
        Dyadic hi = Dyadic::parse(body.substr(comma + 1));
        Dyadic len = hi - lo;
        if (len.num != 1) throw UsageError("not a standard dyadic interval: [" + body + "]");
        Dyadic idx = lo.mul_pow2(len.exp);
        if (!idx.is_integer()) throw UsageError("not a standard dyadic interval: [" + body + "]");
        parts.emplace_back(idx.num, len.exp);
        pos = close + 1;
        if (pos < t.size() && t[pos] == ',') ++pos;
    }
    return DySet(s, std::move(parts));
}

StdInterval make_interval(std::int64_t a, int b) {
    if (b < 0) throw UsageError("make_interval: negative exponent");
    return StdInterval(a, b);
}

bool sets_disjoint(const DySet& a, const DySet& b) {
    if (a.space() != b.space()) throw UsageError("sets_disjoint: space mismatch");
    for (const auto& x : a.parts())
        for (const auto& y : b.parts()) {
            if (x.interiors_overlap(y)) return false;
            if (x.touches(y)) return false;
            if (a.space() == Space::Circle) {
                bool xw = x.left().is_zero() || x.right() == Dyadic(1, 0);
                bool yw = y.left().is_zero() || y.right() == Dyadic(1, 0);
                if (xw && yw && (x.left().is_zero() != y.left().is_zero())) return false;
            }
        }
    return true;
}

Dyadic set_size(const DySet& a) {
    Dyadic total(0, 0);
    for (const auto& p : a.parts()) total = total + p.length();
    return total;
}

StdInterval image_under_affine(const StdInterval& iv, int slope_exp, const Dyadic& offset) {
    Dyadic lo = iv.left().mul_pow2(slope_exp) + offset;
    int b = iv.b - slope_exp;
    if (b < 0) throw InternalError("image_under_affine: image longer than [0,1]");
    Dyadic idx = lo.mul_pow2(b);
    if (!idx.is_integer()) throw InternalError("image_under_affine: image not standard");
    return StdInterval(idx.num, b);
}

} // namespace thv
