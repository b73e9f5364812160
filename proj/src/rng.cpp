#include "thv/rng.hpp"

namespace thv {

Word random_word(Rng& rng, ElementClass ambient, int max_len) {
    std::vector<Gen> pool{Gen::A, Gen::B};
    if (ambient != ElementClass::F) pool.push_back(Gen::C);
    if (ambient == ElementClass::V) pool.push_back(Gen::P0);
    Word w;
    int len = rng.below(max_len + 1);
    for (int i = 0; i < len; ++i) {
        Gen g = pool[static_cast<size_t>(rng.below(static_cast<int>(pool.size())))];
        int e = rng.flip() ? 1 : -1;
        w.letters.emplace_back(g, e);
    }
    return w;
}

Element random_element(Rng& rng, ElementClass ambient, int max_len) {
    return eval_word(random_word(rng, ambient, max_len));
}

} // namespace thv
