#pragma once

#include "scalar.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace besov {

/**
 * @brief Uniform periodic box [-R,R)^d with n samples per axis.
 *
 * Frequencies live on the lattice (pi/R) Z^d restricted to [-N, N), N = n pi/(2R).
 * Lattice index b in [0,n) maps to the signed integer m = b (b < n/2) or b - n.
 */
struct FrequencyGrid {
    int d = 1;
    std::size_t n = 2;
    double R = std::numbers::pi;

    FrequencyGrid() = default;
    FrequencyGrid(int d_, std::size_t n_, double R_) : d(d_), n(n_), R(R_) { validate(); }

    void validate() const {
        if (d < 1 || d > 16) throw domain_error("grid dimension must be in [1, 16]");
        if (n < 2 || (n & (n - 1)) != 0) throw domain_error("grid size must be a power of two >= 2");
        if (!(R > 0.0) || !std::isfinite(R)) throw domain_error("box half-width must be positive");
        double total = std::pow(double(n), d);
        if (total > 1e10) throw domain_error("grid too large");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= n;
        return s;
    }
    double spacing() const { return std::numbers::pi / R; }       ///< frequency lattice step
    double step() const { return 2.0 * R / double(n); }              ///< spatial step h
    double nyquist() const { return double(n) * std::numbers::pi / (2.0 * R); }
    double cell_volume() const { return std::pow(step(), d); }
    double frequency_cell_volume() const { return std::pow(spacing(), d); }

    std::int64_t signed_index(std::size_t b) const {
        return b < n / 2 ? std::int64_t(b) : std::int64_t(b) - std::int64_t(n);
    }
    double frequency(std::size_t b) const { return double(signed_index(b)) * spacing(); }
    double coordinate(std::size_t a) const { return -R + double(a) * step(); }

    /// row-major multi-index of linear position idx (axis 0 slowest)
    void unravel(std::size_t idx, std::size_t* out) const {
        for (int i = d - 1; i >= 0; --i) {
            out[i] = idx % n;
            idx /= n;
        }
    }

    friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
        return a.d == b.d && a.n == b.n && a.R == b.R;
    }

    std::string str() const {
        return "grid(d=" + std::to_string(d) + ", n=" + std::to_string(n) + ", R=" + std::to_string(R) + ")";
    }
};

/// highest level J whose cube band 3*2^(J-1) (or 3/2 at J=0) fits under the grid's Nyquist
inline int max_level_for(const FrequencyGrid& g) {
    double N = g.nyquist();
    if (1.5 > N) return -1;
    int J = 0;
    while (3.0 * std::ldexp(1.0, J) <= N) ++J;  // 3*2^((J+1)-1) <= N
    return J;
}

}  // namespace besov
