#pragma once

#include <random>
#include <set>
#include <vector>

#include "patchlab/f2_linalg.hpp"

namespace testutil {

inline patchlab::BitVec random_vec(std::mt19937_64& g, std::size_t n) {
    patchlab::BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, g() & 1);
    return v;
}

inline patchlab::F2Matrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c) {
    patchlab::F2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, g() & 1);
    return m;
}

// Every vector of the span, as bit strings; exponential, for oracles only.
inline std::set<std::vector<int>> enumerate_span(const std::vector<patchlab::BitVec>& gens, std::size_t n) {
    std::set<std::vector<int>> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << gens.size()); ++mask) {
        patchlab::BitVec v(n);
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (mask >> i & 1) v ^= gens[i];
        out.insert(v.to_bits());
    }
    return out;
}

}  // namespace testutil
