#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace besov {

/// pairwise sum with a fixed split order; bit-identical for identical input
inline double pairwise_sum(std::span<const double> x) {
    constexpr std::size_t kLeaf = 32;
    if (x.size() <= kLeaf) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

/// pairwise sum of f(x[i])
template <class T, class F>
double pairwise_sum(std::span<const T> x, F&& f) {
    constexpr std::size_t kLeaf = 32;
    if (x.size() <= kLeaf) {
        double s = 0.0;
        for (const T& v : x) s += f(v);
        return s;
    }
    std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half), f) + pairwise_sum(x.subspan(half), f);
}

}  // namespace besov
