#ifndef THV_RNG_HPP
#define THV_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "thv/element.hpp"

namespace thv {

/// Seeded generator with platform-independent bounded draws
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    bool flip() { return next() & 1u; }

private:
    std::mt19937_64 eng_;
};

Word random_word(Rng& rng, ElementClass ambient, int max_len);
Element random_element(Rng& rng, ElementClass ambient, int max_len);

} // namespace thv

#endif
