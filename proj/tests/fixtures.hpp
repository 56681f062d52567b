#pragma once

#include "locus/conv.hpp"

#include <utility>
#include <vector>

namespace fixtures {

// (4,2) code over GF(7) with g_{i,l}(D) = (1 + D^4) w_{i,l}(D); period-8
// tailbiting, (1,2) row locality with groups {t, t+4}.
inline locus::ConvGenerator shifted_pair_code()
{
    static const std::vector<std::vector<std::vector<locus::elem>>> w = {
        {{3, 3, 2, 0}, {5, 1, 3, 0}, {1, 5, 2, 6}, {0, 6, 1, 5}},
        {{5, 5, 2, 1}, {2, 1, 3, 1}, {5, 0, 3, 3}, {1, 5, 6, 1}}};
    locus::ConvGenerator g;
    g.field = locus::Field::create(7, 1);
    g.k = 2;
    g.n = 4;
    g.polys.resize(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t l = 0; l < 4; ++l) {
            auto p = w[i][l];
            p.insert(p.end(), w[i][l].begin(), w[i][l].end());
            g.polys[i].push_back(p);
        }
    return g;
}

// 16 erasures: rows 0 and 2 lose times {0,2,4,6}, rows 1 and 3 lose {0,2,5,6}
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> staircase_pattern()
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    const std::vector<std::vector<std::uint32_t>> cols = {{0, 2, 4, 6}, {0, 2, 5, 6}, {0, 2, 4, 6}, {0, 2, 5, 6}};
    for (std::uint32_t row = 0; row < 4; ++row)
        for (auto c : cols[row]) out.emplace_back(row, c);
    return out;
}

} // namespace fixtures
