#pragma once

#include "partition.hpp"
#include "signal.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace besov {

/// block norms below this are stored as exact zeros
inline constexpr double kBlockZero = 1e-300;
/// spectral energy fraction outside the partition that counts as truncation
inline constexpr double kTruncationTol = 1e-13;

struct BlockReport {
    Label label;
    int level = 0;  ///< j or |k|
    double weight = 0.0;
    double block_lp = 0.0;
    double contribution = 0.0;
};

/// per-block L_p norms of one function against one partition; reusable for any (t, q)
struct BlockLedger {
    PartitionKind kind = PartitionKind::CubeIso;
    FrequencyGrid grid;
    ExtendedExponent p;
    int truncation_level = 0;
    std::vector<Label> labels;
    std::vector<int> levels;
    std::vector<double> block_lp;
    double uncovered_fraction = 0.0;
    bool truncated = false;
};

struct QuasiNormResult {
    double value = 0.0;
    std::vector<BlockReport> blocks;
    PartitionKind kind = PartitionKind::CubeIso;
    double t = 0.0;
    ExtendedExponent p;
    ExtendedExponent q_used;
    int truncation_level = 0;
    ConvergenceMeta meta;
    double uncovered_fraction = 0.0;
    bool truncated = false;
};

/// ||F (1 - sum of masks)||^2 / ||F||^2 on the lattice (0 for F = 0)
inline double uncovered_fraction(std::span<const cplx> F, const Partition& P) {
    const std::size_t n = P.grid.n;
    std::vector<double> cov(n);
    std::vector<double> out(F.size() / n), tot(F.size() / n);
    for (std::size_t o = 0; o < out.size(); ++o) {
        P.coverage_row(o, cov.data());
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = std::norm(F[o * n + i]);
            double r = 1.0 - cov[i];
            a += e * r * r;
            b += e;
        }
        out[o] = a;
        tot[o] = b;
    }
    double total = pairwise_sum(std::span<const double>(tot));
    return total == 0.0 ? 0.0 : pairwise_sum(std::span<const double>(out)) / total;
}

namespace detail {

/// which lattice indices carry spectrum: per axis, and by sup-index
struct SpectrumFootprint {
    std::vector<std::vector<char>> axis;
    std::vector<char> sup;

    SpectrumFootprint(std::span<const cplx> F, const FrequencyGrid& g)
        : axis(g.d, std::vector<char>(g.n, 0)), sup(g.n / 2 + 1, 0) {
        std::size_t idx[16];
        for (std::size_t i = 0; i < F.size(); ++i) {
            if (F[i] == cplx(0.0)) continue;
            g.unravel(i, idx);
            std::size_t s = 0;
            for (int a = 0; a < g.d; ++a) {
                axis[a][idx[a]] = 1;
                s = std::max(s, std::size_t(std::abs(g.signed_index(idx[a]))));
            }
            sup[s] = 1;
        }
    }

    /// false only if mask * F is certainly zero
    bool may_meet(const FrequencyMask& m) const {
        const auto& g = m.grid();
        if (m.kind() == PartitionKind::CubeIso) {
            const auto& pr = m.profile();
            for (std::size_t s = 0; s < sup.size(); ++s)
                if (sup[s] && pr[s] != 0.0) return true;
            return false;
        }
        for (int a = 0; a < g.d; ++a) {
            const auto& pr = m.profile(a);
            bool hit = false;
            for (std::size_t b = 0; b < g.n && !hit; ++b)
                hit = axis[a][b] && pr[std::size_t(std::abs(g.signed_index(b)))] != 0.0;
            if (!hit) return false;
        }
        return true;
    }
};

}  // namespace detail

/**
 * @brief One ledger per exponent in `ps`, sharing a single inverse FFT per block.
 *
 * Blocks whose masked spectrum is identically zero skip the transform.
 */
inline std::vector<BlockLedger> compute_ledgers(const GridFunction& f, const Partition& P,
                                                std::span<const ExtendedExponent> ps) {
    if (!(f.grid() == P.grid)) throw domain_error("function and partition live on different grids");
    const auto& g = P.grid;
    const auto& F = f.spectrum();
    const double unc = uncovered_fraction(F, P);
    std::vector<BlockLedger> out(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto& L = out[i];
        L.kind = P.kind;
        L.grid = g;
        L.p = ps[i];
        L.truncation_level = P.max_level;
        L.uncovered_fraction = unc;
        L.truncated = unc > kTruncationTol;
    }
    const detail::SpectrumFootprint foot(F, g);
    CVec buf(g.size());
    for (const auto& m : P.masks) {
        std::vector<double> lps(ps.size(), 0.0);
        if (foot.may_meet(m) && m.apply(F, buf)) {
            spectrum_to_samples(buf, g);
            lps = lp_quasinorms(buf, g, ps);
            for (auto& v : lps)
                if (v < kBlockZero) v = 0.0;
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            out[i].labels.push_back(m.label());
            out[i].levels.push_back(m.level_sum());
            out[i].block_lp.push_back(lps[i]);
        }
    }
    return out;
}

inline BlockLedger compute_ledger(const GridFunction& f, const Partition& P, const ExtendedExponent& p) {
    return compute_ledgers(f, P, std::span<const ExtendedExponent>(&p, 1)).front();
}

/// l_q norm of nonnegative values, max-scaled; q = inf gives the max
inline double lq_norm(std::span<const double> c, const ExtendedExponent& q) {
    double m = 0.0;
    for (double v : c) m = std::max(m, v);
    if (q.is_infinite() || m == 0.0) return m;
    const double qv = q.value(), inv = 1.0 / m;
    double s = pairwise_sum(c, [inv, qv](double v) { return std::pow(v * inv, qv); });
    return m * std::pow(s, 1.0 / qv);
}

/// weights 2^{level t}, contributions weight * block_lp, l_q aggregation
inline QuasiNormResult aggregate(const BlockLedger& L, double t, const ExtendedExponent& q) {
    QuasiNormResult r;
    r.kind = L.kind;
    r.t = t;
    r.p = L.p;
    r.q_used = q;
    r.truncation_level = L.truncation_level;
    r.uncovered_fraction = L.uncovered_fraction;
    r.truncated = L.truncated;
    r.meta.levels.push_back({L.grid.n, L.grid.R, 0.0});
    std::vector<double> contrib;
    contrib.reserve(L.block_lp.size());
    for (std::size_t i = 0; i < L.block_lp.size(); ++i) {
        BlockReport b;
        b.label = L.labels[i];
        b.level = L.levels[i];
        b.weight = std::exp2(double(b.level) * t);
        b.block_lp = L.block_lp[i];
        b.contribution = b.weight * b.block_lp;
        contrib.push_back(b.contribution);
        r.blocks.push_back(std::move(b));
    }
    r.value = lq_norm(contrib, q);
    r.meta.levels.back().value = r.value;
    return r;
}

namespace detail {
inline QuasiNormResult besov_norm(const GridFunction& f, double t, const ExtendedExponent& p,
                                  const ExtendedExponent& q, const Partition& P, PartitionKind want) {
    if (P.kind != want)
        throw domain_error(std::string("expected a ") + to_string(want) + " partition, got " + to_string(P.kind));
    return aggregate(compute_ledger(f, P, p), t, q);
}
}  // namespace detail

inline QuasiNormResult iso_besov_norm(const GridFunction& f, double t, const ExtendedExponent& p,
                                      const ExtendedExponent& q, const Partition& P) {
    return detail::besov_norm(f, t, p, q, P, PartitionKind::CubeIso);
}

inline QuasiNormResult mixed_besov_norm(const GridFunction& f, double t, const ExtendedExponent& p,
                                        const ExtendedExponent& q, const Partition& P) {
    return detail::besov_norm(f, t, p, q, P, PartitionKind::TensorMixed);
}

struct ProbeResult {
    ExtendedExponent p;
    double both_lp = 0.0;    ///< ||F^{-1}[psi_j phi_k F f]||_p
    double tensor_lp = 0.0;  ///< ||F^{-1}[phi_k F f]||_p
    double cube_lp = 0.0;    ///< ||F^{-1}[psi_j F f]||_p
    double normalizer = 1.0; ///< 2^{(jd - |k|)(1/u - 1)}, u = min(1, p)
    std::optional<double> ratio_ct3;
    std::optional<double> ratio_ct4_normalized;
};

inline double probe_normalizer(int j, const MultiIndex& k, const ExtendedExponent& p) {
    const int d = int(k.size());
    const double u = p.is_infinite() ? 1.0 : std::min(1.0, p.value());
    return std::exp2(double(j * d - level_sum(Label(k))) * (1.0 / u - 1.0));
}

/**
 * @brief Empirical multiplier ratios for psi_j and phi_k on f's grid.
 *
 * Requires j within one level of max k (the only case where the two masks
 * can meet). Ratios with a zero denominator are left empty.
 */
inline std::vector<ProbeResult> multiplier_ratio_probe(const GridFunction& f, int j, const MultiIndex& k,
                                                       std::span<const ExtendedExponent> ps) {
    const auto& g = f.grid();
    if (int(k.size()) != g.d) throw domain_error("multi-index length must equal grid dimension");
    const int mk = level_max(Label(k));
    if (j < mk - 1 || j > mk + 1)
        throw domain_error("level " + std::to_string(j) + " does not meet tensor block " + label_string(Label(k)));
    const auto psi = cube_mask(g, j);
    const auto phi = tensor_mask(g, k);
    const auto& F = f.spectrum();
    CVec a(g.size()), b(g.size());

    auto norms_of = [&](CVec& v, bool nonzero) {
        if (!nonzero) return std::vector<double>(ps.size(), 0.0);
        spectrum_to_samples(v, g);
        return lp_quasinorms(v, g, ps);
    };
    bool nz = phi.apply(F, a);
    auto tensor = norms_of(a, nz);
    nz = psi.apply(F, b);
    CVec both(g.size());
    bool nz_both = phi.apply(b, both);
    auto cube = norms_of(b, nz);
    auto joint = norms_of(both, nz_both);

    std::vector<ProbeResult> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ProbeResult r;
        r.p = ps[i];
        r.both_lp = joint[i];
        r.tensor_lp = tensor[i];
        r.cube_lp = cube[i];
        r.normalizer = probe_normalizer(j, k, ps[i]);
        if (r.tensor_lp > 0.0) r.ratio_ct3 = r.both_lp / r.tensor_lp;
        if (r.cube_lp > 0.0) r.ratio_ct4_normalized = r.both_lp / r.cube_lp / r.normalizer;
        out.push_back(r);
    }
    return out;
}

inline ProbeResult multiplier_ratio_probe(const GridFunction& f, int j, const MultiIndex& k,
                                          const ExtendedExponent& p) {
    return multiplier_ratio_probe(f, j, k, std::span<const ExtendedExponent>(&p, 1)).front();
}

inline nlohmann::ordered_json meta_json(const ConvergenceMeta& m) {
    nlohmann::ordered_json j;
    auto& lv = j["levels"] = nlohmann::ordered_json::array();
    for (const auto& l : m.levels) lv.push_back({{"n", l.n}, {"R", l.R}, {"value", l.value}});
    j["converged"] = m.converged;
    j["final_relative_delta"] = std::isfinite(m.final_relative_delta) ? nlohmann::ordered_json(m.final_relative_delta)
                                                                      : nlohmann::ordered_json(nullptr);
    j["tol"] = m.tol;
    return j;
}

inline nlohmann::ordered_json to_json(const QuasiNormResult& r) {
    nlohmann::ordered_json j;
    j["space"] = r.kind == PartitionKind::CubeIso ? "iso" : "mixed";
    j["value"] = r.value;
    j["t"] = r.t;
    j["p"] = r.p.str();
    j["q_used"] = r.q_used.str();
    j["truncation_level"] = r.truncation_level;
    j["uncovered_fraction"] = r.uncovered_fraction;
    j["truncated"] = r.truncated;
    auto& bl = j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : r.blocks)
        bl.push_back({{"label", label_json(b.label)},
                      {"level", b.level},
                      {"weight", b.weight},
                      {"block_lp", b.block_lp},
                      {"contribution", b.contribution}});
    j["meta"] = meta_json(r.meta);
    return j;
}

/// one row per block: label, weight, block_lp, contribution
inline void write_csv(std::ostream& out, const QuasiNormResult& r) {
    out << "label,weight,block_lp,contribution\n";
    for (const auto& b : r.blocks)
        out << label_string(b.label) << ',' << io::fmt17(b.weight) << ',' << io::fmt17(b.block_lp) << ','
            << io::fmt17(b.contribution) << '\n';
}

}  // namespace besov
