#pragma once

#include "fft.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "partition.hpp"
#include "reduce.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

namespace besov {

namespace detail {

// (2 pi)^{-d/2} Delta^d: continuous-FT samples -> Fourier-series coefficients
inline double synthesis_scale(const FrequencyGrid& g) {
    return std::pow(2.0 * std::numbers::pi, -0.5 * g.d) * g.frequency_cell_volume();
}

// multiply by (-1)^{b_0 + ... + b_{d-1}} and a constant
inline void checkerboard(CVec& v, const FrequencyGrid& g, double scale) {
    const std::size_t n = g.n;
    std::size_t idx[16];
    for (std::size_t o = 0, rows = v.size() / n; o < rows; ++o) {
        g.unravel(o * n, idx);
        std::size_t par = 0;
        for (int i = 0; i + 1 < g.d; ++i) par += idx[i];
        cplx* row = v.data() + o * n;
        double s = (par & 1) ? -scale : scale;
        for (std::size_t b = 0; b < n; ++b, s = -s) row[b] *= s;
    }
}

}  // namespace detail

/// continuous-FT samples on the lattice -> spatial samples on [-R,R)^d (in place)
inline void spectrum_to_samples(CVec& v, const FrequencyGrid& g) {
    detail::checkerboard(v, g, detail::synthesis_scale(g));
    fft::transform(v, g.d, g.n, fft::Sign::Backward);
}

/// spatial samples -> continuous-FT samples on the lattice (in place)
inline void samples_to_spectrum(CVec& v, const FrequencyGrid& g) {
    fft::transform(v, g.d, g.n, fft::Sign::Forward);
    detail::checkerboard(v, g, 1.0 / (double(g.size()) * detail::synthesis_scale(g)));
}

/**
 * @brief Complex samples of a function on a periodic box, with the spectrum
 * (continuous-FT values at lattice frequencies) computed on first use.
 *
 * Immutable; copies share storage.
 */
class GridFunction {
  public:
    GridFunction() = default;

    static GridFunction from_samples(const FrequencyGrid& g, CVec samples) {
        return GridFunction(g, std::move(samples), true);
    }
    static GridFunction from_spectrum(const FrequencyGrid& g, CVec spectrum) {
        return GridFunction(g, std::move(spectrum), false);
    }

    bool empty() const { return !st_; }
    const FrequencyGrid& grid() const { return st_->grid; }

    const CVec& samples() const {
        std::call_once(st_->s_once, [this] {
            st_->samples = st_->spectrum;
            spectrum_to_samples(st_->samples, st_->grid);
        });
        return st_->samples;
    }
    const CVec& spectrum() const {
        std::call_once(st_->f_once, [this] {
            st_->spectrum = st_->samples;
            samples_to_spectrum(st_->spectrum, st_->grid);
        });
        return st_->spectrum;
    }

  private:
    struct State {
        FrequencyGrid grid;
        std::once_flag s_once, f_once;
        CVec samples, spectrum;
    };

    GridFunction(const FrequencyGrid& g, CVec data, bool are_samples) : st_(std::make_shared<State>()) {
        g.validate();
        if (data.size() != g.size()) throw domain_error("data size does not match " + g.str());
        st_->grid = g;
        if (are_samples) {
            st_->samples = std::move(data);
            std::call_once(st_->s_once, [] {});
        } else {
            st_->spectrum = std::move(data);
            std::call_once(st_->f_once, [] {});
        }
    }

    std::shared_ptr<State> st_;
};

/// lattice frequency vector handed to spectrum rules
using FrequencyRule = std::function<cplx(std::span<const double> xi)>;

/// spectrum(xi) = rule(xi) at every lattice frequency
inline GridFunction synthesize_from_spectrum(const FrequencyGrid& g, const FrequencyRule& rule) {
    g.validate();
    CVec F(g.size());
    std::vector<double> xi(g.d);
    std::size_t idx[16];
    for (std::size_t i = 0; i < F.size(); ++i) {
        g.unravel(i, idx);
        for (int a = 0; a < g.d; ++a) xi[a] = g.frequency(idx[a]);
        F[i] = rule(xi);
    }
    return GridFunction::from_spectrum(g, std::move(F));
}

inline GridFunction apply_mask(const GridFunction& f, const FrequencyMask& m) {
    if (!(f.grid() == m.grid())) throw domain_error("mask and function live on different grids");
    CVec out(f.grid().size());
    m.apply(f.spectrum(), out);
    return GridFunction::from_spectrum(f.grid(), std::move(out));
}

/// (sum |z|^p h^d)^{1/p}, or max |z| for p = inf; scaled by the max to avoid under/overflow
inline double lp_quasinorm(std::span<const cplx> z, const FrequencyGrid& g, const ExtendedExponent& p) {
    double m = 0.0;
    for (const auto& v : z) m = std::max(m, std::abs(v));
    if (p.is_infinite() || m == 0.0) return m;
    const double pv = p.value();
    const double inv = 1.0 / m;
    double s;
    if (pv == 2.0)
        s = pairwise_sum(z, [inv](const cplx& v) { return std::norm(v * inv); });
    else if (pv == 1.0)
        s = pairwise_sum(z, [inv](const cplx& v) { return std::abs(v) * inv; });
    else
        s = pairwise_sum(z, [inv, pv](const cplx& v) { return std::pow(std::abs(v) * inv, pv); });
    return m * std::pow(s * g.cell_volume(), 1.0 / pv);
}

inline double lp_quasinorm(const GridFunction& f, const ExtendedExponent& p) {
    return lp_quasinorm(f.samples(), f.grid(), p);
}

/// several exponents over the same samples
inline std::vector<double> lp_quasinorms(std::span<const cplx> z, const FrequencyGrid& g,
                                         std::span<const ExtendedExponent> ps) {
    std::vector<double> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(lp_quasinorm(z, g, p));
    return out;
}

struct LadderLevel {
    std::size_t n;
    double R;
    double value;
};

struct ConvergenceMeta {
    std::vector<LadderLevel> levels;
    bool converged = false;
    double final_relative_delta = std::numeric_limits<double>::infinity();
    double tol = 0.0;
};

inline double relative_delta(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

/// one (n, R) per rung; n strictly increasing, R non-decreasing
inline void check_schedule(std::span<const std::pair<std::size_t, double>> schedule) {
    if (schedule.empty()) throw domain_error("refinement schedule is empty");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i].first <= schedule[i - 1].first || schedule[i].second < schedule[i - 1].second)
            throw domain_error("refinement schedule must increase n strictly and never shrink R");
}

inline ConvergenceMeta finish_meta(std::vector<LadderLevel> levels, double tol) {
    ConvergenceMeta meta;
    meta.tol = tol;
    meta.levels = std::move(levels);
    if (meta.levels.size() >= 2) {
        const auto& a = meta.levels[meta.levels.size() - 2];
        const auto& b = meta.levels.back();
        meta.final_relative_delta = relative_delta(a.value, b.value);
        meta.converged = meta.final_relative_delta < tol;
    }
    return meta;
}

/**
 * @brief Walk the schedule until two consecutive rungs agree to `tol`.
 *
 * `eval` maps a grid to a value. Stops at the first converged pair; running
 * out of rungs is reported in the meta, not thrown.
 */
inline std::pair<double, ConvergenceMeta> refine_ladder(const std::function<double(const FrequencyGrid&)>& eval,
                                                        int d, std::span<const std::pair<std::size_t, double>> schedule,
                                                        double tol) {
    check_schedule(schedule);
    std::vector<LadderLevel> levels;
    for (const auto& [n, R] : schedule) {
        FrequencyGrid g(d, n, R);
        levels.push_back({n, R, eval(g)});
        if (levels.size() >= 2 &&
            relative_delta(levels[levels.size() - 2].value, levels.back().value) < tol)
            break;
    }
    auto meta = finish_meta(std::move(levels), tol);
    return {meta.levels.back().value, meta};
}

inline std::pair<double, ConvergenceMeta> refine_until_converged(
    const std::function<GridFunction(const FrequencyGrid&)>& generator, int d, const ExtendedExponent& p, double tol,
    std::span<const std::pair<std::size_t, double>> schedule) {
    return refine_ladder([&](const FrequencyGrid& g) { return lp_quasinorm(generator(g), p); }, d, schedule, tol);
}

/// binary: int64 d, int64 n, float64 R, interleaved re/im float64 row-major; plus JSON sidecar
inline void export_grid_function(const GridFunction& f, const std::filesystem::path& path) {
    const auto& g = f.grid();
    const auto& z = f.samples();
    {
        auto out = io::open_out(path);
        io::put<std::int64_t>(out, g.d);
        io::put<std::int64_t>(out, std::int64_t(g.n));
        io::put<double>(out, g.R);
        out.write(reinterpret_cast<const char*>(z.data()), std::streamsize(z.size() * sizeof(cplx)));
        if (!out) throw io_error("write failed for '" + path.string() + "'");
    }
    nlohmann::ordered_json j;
    j["format"] = "besovlab-grid-function";
    j["grid"] = grid_json(g);
    j["count"] = g.size();
    j["dtype"] = "complex128 (interleaved float64 re, im)";
    j["order"] = "row-major";
    j["domain"] = "[-R, R)^d";
    io::write_json(io::sidecar(path), j);
}

inline GridFunction import_grid_function(const std::filesystem::path& path) {
    auto in = io::open_in(path);
    auto d = io::get<std::int64_t>(in, path);
    auto n = io::get<std::int64_t>(in, path);
    auto R = io::get<double>(in, path);
    if (d < 1 || d > 16 || n < 2) throw io_error("bad header in '" + path.string() + "'");
    FrequencyGrid g;
    try {
        g = FrequencyGrid(int(d), std::size_t(n), R);
    } catch (const domain_error& e) {
        throw io_error("bad grid in '" + path.string() + "': " + e.what());
    }
    CVec z(g.size());
    in.read(reinterpret_cast<char*>(z.data()), std::streamsize(z.size() * sizeof(cplx)));
    if (!in) throw io_error("truncated samples in '" + path.string() + "'");
    return GridFunction::from_samples(g, std::move(z));
}

}  // namespace besov
