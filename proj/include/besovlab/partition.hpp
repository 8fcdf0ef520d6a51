#pragma once

#include "bump.hpp"
#include "grid.hpp"
#include "io.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace besov {

using MultiIndex = std::vector<int>;
using Label = std::variant<int, MultiIndex>;
using cplx = std::complex<double>;

inline int level_sum(const Label& l) {
    if (auto j = std::get_if<int>(&l)) return *j;
    const auto& k = std::get<MultiIndex>(l);
    return std::accumulate(k.begin(), k.end(), 0);
}

inline int level_max(const Label& l) {
    if (auto j = std::get_if<int>(&l)) return *j;
    const auto& k = std::get<MultiIndex>(l);
    return k.empty() ? 0 : *std::max_element(k.begin(), k.end());
}

/// "3" for a cube level, "3:1" for a tensor multi-index
inline std::string label_string(const Label& l) {
    if (auto j = std::get_if<int>(&l)) return std::to_string(*j);
    std::string s;
    for (int k : std::get<MultiIndex>(l)) s += (s.empty() ? "" : ":") + std::to_string(k);
    return s;
}

inline nlohmann::ordered_json label_json(const Label& l) {
    if (auto j = std::get_if<int>(&l)) return *j;
    return std::get<MultiIndex>(l);
}

enum class PartitionKind { CubeIso, TensorMixed };

inline const char* to_string(PartitionKind k) { return k == PartitionKind::CubeIso ? "CubeIso" : "TensorMixed"; }

inline constexpr double kSupportThreshold = 1e-14;
/// default byte budget for dense mask storage
inline constexpr std::size_t kDefaultMaskBudget = std::size_t(256) << 20;

/// top of the level-L band: 3/2 for L = 0, 3*2^(L-1) otherwise
inline double band_top(int L) { return L == 0 ? 1.5 : 3.0 * std::ldexp(1.0, L - 1); }
/// bottom of the level-L band (0 for L = 0)
inline double band_bottom(int L) { return L == 0 ? 0.0 : std::ldexp(1.0, L - 1); }

inline bool level_fits(const FrequencyGrid& g, int L) { return band_top(L) <= g.nyquist() * (1.0 + 1e-12); }

/// dyadic generator at level k: s(r) for k = 0, s(2^-k r) - s(2^(1-k) r) otherwise
inline double level_function(int k, double r) {
    r = std::abs(r);
    if (k == 0) return smooth_step(r);
    return smooth_step(std::ldexp(r, -k)) - smooth_step(std::ldexp(r, 1 - k));
}

/// level-k generator sampled at |m| = 0..n/2 of the grid's lattice
inline std::vector<double> level_profile(const FrequencyGrid& g, int k) {
    std::vector<double> v(g.n / 2 + 1);
    double dx = g.spacing();
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = level_function(k, double(m) * dx);
    return v;
}

namespace detail {
inline std::vector<std::size_t> abs_index(const FrequencyGrid& g) {
    std::vector<std::size_t> a(g.n);
    for (std::size_t b = 0; b < g.n; ++b) a[b] = std::size_t(std::abs(g.signed_index(b)));
    return a;
}
}  // namespace detail

/**
 * @brief One cube mask psi_j or tensor mask phi_k on a grid.
 *
 * Values come from compact profiles (sup-index profile for cubes, per-axis
 * profiles for tensors); a dense copy is kept when the budget allows it.
 */
class FrequencyMask {
  public:
    using Profile = std::shared_ptr<const std::vector<double>>;

    FrequencyMask(FrequencyGrid g, PartitionKind kind, Label label, std::vector<Profile> profiles)
        : grid_(g), kind_(kind), label_(std::move(label)), profiles_(std::move(profiles)),
          absm_(std::make_shared<const std::vector<std::size_t>>(detail::abs_index(g))) {}

    const FrequencyGrid& grid() const { return grid_; }
    PartitionKind kind() const { return kind_; }
    const Label& label() const { return label_; }
    int level_sum() const { return besov::level_sum(label_); }
    int level_max() const { return besov::level_max(label_); }
    bool stored_dense() const { return dense_ != nullptr; }
    /// sup-index profile (cube) or axis-i profile (tensor)
    const std::vector<double>& profile(int axis = 0) const {
        return *profiles_[kind_ == PartitionKind::CubeIso ? 0 : axis];
    }

    /// mask values of the contiguous innermost row number `outer`
    void row(std::size_t outer, double* out) const {
        const std::size_t n = grid_.n;
        if (dense_) {
            std::copy_n(dense_->data() + outer * n, n, out);
            return;
        }
        const auto& am = *absm_;
        std::size_t idx[16];
        std::size_t rest = outer;
        for (int i = grid_.d - 2; i >= 0; --i) {
            idx[i] = rest % n;
            rest /= n;
        }
        if (kind_ == PartitionKind::CubeIso) {
            std::size_t vmax = 0;
            for (int i = 0; i + 1 < grid_.d; ++i) vmax = std::max(vmax, am[idx[i]]);
            const auto& pr = *profiles_[0];
            for (std::size_t b = 0; b < n; ++b) out[b] = pr[std::max(vmax, am[b])];
        } else {
            double w = 1.0;
            for (int i = 0; i + 1 < grid_.d; ++i) w *= (*profiles_[i])[am[idx[i]]];
            const auto& pr = *profiles_[grid_.d - 1];
            for (std::size_t b = 0; b < n; ++b) out[b] = w * pr[am[b]];
        }
    }

    double at(std::size_t linear) const {
        const std::size_t n = grid_.n;
        if (dense_) return (*dense_)[linear];
        std::vector<double> r(n);
        row(linear / n, r.data());
        return r[linear % n];
    }

    std::vector<double> dense() const {
        if (dense_) return *dense_;
        std::vector<double> v(grid_.size());
        for (std::size_t o = 0, rows = v.size() / grid_.n; o < rows; ++o) row(o, v.data() + o * grid_.n);
        return v;
    }

    void make_dense() {
        if (!dense_) dense_ = std::make_shared<const std::vector<double>>(dense());
    }

    /// out = mask * in; returns false when every product is exactly zero
    bool apply(std::span<const cplx> in, std::span<cplx> out) const {
        const std::size_t n = grid_.n;
        std::vector<double> r(n);
        bool any = false;
        for (std::size_t o = 0, rows = in.size() / n; o < rows; ++o) {
            row(o, r.data());
            const cplx* src = in.data() + o * n;
            cplx* dst = out.data() + o * n;
            for (std::size_t b = 0; b < n; ++b) {
                dst[b] = r[b] * src[b];
                any = any || dst[b] != cplx(0.0);
            }
        }
        return any;
    }

  private:
    FrequencyGrid grid_;
    PartitionKind kind_;
    Label label_;
    std::vector<Profile> profiles_;
    std::shared_ptr<const std::vector<std::size_t>> absm_;
    std::shared_ptr<const std::vector<double>> dense_;
};

/// single cube mask psi_j on g (no partition needed)
inline FrequencyMask cube_mask(const FrequencyGrid& g, int j) {
    if (j < 0) throw domain_error("negative level");
    if (!level_fits(g, j)) throw domain_error("level " + std::to_string(j) + " exceeds Nyquist of " + g.str());
    return FrequencyMask(g, PartitionKind::CubeIso, j, {std::make_shared<const std::vector<double>>(level_profile(g, j))});
}

/// single tensor mask phi_k on g
inline FrequencyMask tensor_mask(const FrequencyGrid& g, const MultiIndex& k) {
    if (int(k.size()) != g.d) throw domain_error("multi-index length must equal grid dimension");
    std::vector<FrequencyMask::Profile> pr;
    for (int ki : k) {
        if (ki < 0) throw domain_error("negative level");
        if (!level_fits(g, ki)) throw domain_error("level " + std::to_string(ki) + " exceeds Nyquist of " + g.str());
        pr.push_back(std::make_shared<const std::vector<double>>(level_profile(g, ki)));
    }
    return FrequencyMask(g, PartitionKind::TensorMixed, k, std::move(pr));
}

struct Partition {
    PartitionKind kind = PartitionKind::CubeIso;
    FrequencyGrid grid;
    int max_level = 0;
    std::vector<FrequencyMask> masks;
    /// sum of level profiles 0..max_level, indexed like level_profile
    std::vector<double> cover_profile;
    /// pointwise sum of all masks, in compact form
    std::shared_ptr<const FrequencyMask> cover;

    void coverage_row(std::size_t outer, double* out) const { cover->row(outer, out); }
};

namespace detail {
inline Partition finish_partition(Partition P, std::size_t budget) {
    P.cover_profile.assign(P.grid.n / 2 + 1, 0.0);
    for (int k = 0; k <= P.max_level; ++k) {
        auto pr = level_profile(P.grid, k);
        for (std::size_t m = 0; m < pr.size(); ++m) P.cover_profile[m] += pr[m];
    }
    auto cp = std::make_shared<const std::vector<double>>(P.cover_profile);
    if (P.kind == PartitionKind::CubeIso)
        P.cover = std::make_shared<const FrequencyMask>(P.grid, P.kind, 0, std::vector<FrequencyMask::Profile>{cp});
    else
        P.cover = std::make_shared<const FrequencyMask>(P.grid, P.kind, MultiIndex(P.grid.d, 0),
                                                        std::vector<FrequencyMask::Profile>(P.grid.d, cp));
    double bytes = double(P.masks.size()) * double(P.grid.size()) * sizeof(double);
    if (bytes <= double(budget))
        for (auto& m : P.masks) m.make_dense();
    return P;
}
}  // namespace detail

/// psi_0..psi_J on g; masks are stored densely if they fit in `budget` bytes
inline Partition build_cube_partition(const FrequencyGrid& g, int J, std::size_t budget = kDefaultMaskBudget) {
    g.validate();
    if (J < 0) throw domain_error("J must be >= 0");
    if (!level_fits(g, J))
        throw domain_error("Nyquist overflow: level " + std::to_string(J) + " needs " + std::to_string(band_top(J)) +
                           " but " + g.str() + " reaches " + std::to_string(g.nyquist()));
    Partition P;
    P.kind = PartitionKind::CubeIso;
    P.grid = g;
    P.max_level = J;
    for (int j = 0; j <= J; ++j) P.masks.push_back(cube_mask(g, j));
    return detail::finish_partition(std::move(P), budget);
}

/// phi_k for all k in {0..K}^d, lexicographic with axis 0 slowest
inline Partition build_tensor_partition(const FrequencyGrid& g, int K, std::size_t budget = kDefaultMaskBudget) {
    g.validate();
    if (K < 0) throw domain_error("K must be >= 0");
    if (!level_fits(g, K))
        throw domain_error("Nyquist overflow: level " + std::to_string(K) + " needs " + std::to_string(band_top(K)) +
                           " but " + g.str() + " reaches " + std::to_string(g.nyquist()));
    std::vector<FrequencyMask::Profile> prof;
    for (int k = 0; k <= K; ++k) prof.push_back(std::make_shared<const std::vector<double>>(level_profile(g, k)));
    Partition P;
    P.kind = PartitionKind::TensorMixed;
    P.grid = g;
    P.max_level = K;
    MultiIndex k(g.d, 0);
    while (true) {
        std::vector<FrequencyMask::Profile> pr;
        for (int ki : k) pr.push_back(prof[ki]);
        P.masks.emplace_back(g, PartitionKind::TensorMixed, k, std::move(pr));
        int i = g.d - 1;
        while (i >= 0 && k[i] == K) k[i--] = 0;
        if (i < 0) break;
        ++k[i];
    }
    return detail::finish_partition(std::move(P), budget);
}

struct OverlapSets {
    std::map<int, std::vector<MultiIndex>> delta;   ///< j -> tensor labels meeting psi_j
    std::map<MultiIndex, std::vector<int>> square;  ///< k -> cube levels meeting phi_k
};

/**
 * @brief Overlap sets from the lattice supports (threshold 1e-14).
 *
 * psi_j and phi_k meet iff some sup-value v in supp psi_j is attained on one
 * axis inside supp phi_{k_i} while every other axis can stay at or below v.
 * Throws std::logic_error if a computed pair leaves the band max k - 1 <= j <= max k + 1.
 */
inline OverlapSets overlap_sets(const Partition& cube, const Partition& tensor) {
    if (cube.kind != PartitionKind::CubeIso || tensor.kind != PartitionKind::TensorMixed)
        throw domain_error("overlap_sets expects (cube, tensor) partitions");
    if (!(cube.grid == tensor.grid)) throw domain_error("partitions live on different grids");
    const auto& g = cube.grid;
    const int L = std::max(cube.max_level, tensor.max_level);
    // support of each level profile as a sorted list of |m| values
    std::vector<std::vector<std::size_t>> supp(L + 1);
    for (int k = 0; k <= L; ++k) {
        auto pr = level_profile(g, k);
        for (std::size_t m = 0; m < pr.size(); ++m)
            if (std::abs(pr[m]) > kSupportThreshold) supp[k].push_back(m);
    }
    OverlapSets out;
    for (const auto& cm : cube.masks) {
        const int j = std::get<int>(cm.label());
        out.delta[j];
        for (const auto& tm : tensor.masks) {
            const auto& k = std::get<MultiIndex>(tm.label());
            bool hit = false;
            for (std::size_t v : supp[j]) {
                bool attained = false, below = true;
                for (int ki : k) {
                    const auto& s = supp[ki];
                    if (s.empty() || s.front() > v) below = false;
                    if (std::binary_search(s.begin(), s.end(), v)) attained = true;
                }
                if (attained && below) {
                    hit = true;
                    break;
                }
            }
            if (!hit) continue;
            int mk = level_max(k);
            if (j < mk - 1 || j > mk + 1)
                throw std::logic_error("overlap (" + std::to_string(j) + ", " + label_string(k) + ") outside the dyadic band");
            out.delta[j].push_back(k);
            out.square[k].push_back(j);
        }
    }
    for (auto& [k, js] : out.square)
        if (js.size() > 3) throw std::logic_error("more than three cube levels meet " + label_string(k));
    return out;
}

inline nlohmann::ordered_json grid_json(const FrequencyGrid& g) {
    nlohmann::ordered_json j;
    j["d"] = g.d;
    j["n"] = g.n;
    j["R"] = g.R;
    return j;
}

/// binary tensor [masks, n, ..., n] at `path` plus `path`.json sidecar
inline void export_partition(const Partition& P, const std::filesystem::path& path) {
    std::vector<std::uint64_t> dims{P.masks.size()};
    for (int i = 0; i < P.grid.d; ++i) dims.push_back(P.grid.n);
    std::vector<double> data;
    data.reserve(P.masks.size() * P.grid.size());
    for (const auto& m : P.masks) {
        auto v = m.dense();
        data.insert(data.end(), v.begin(), v.end());
    }
    io::write_tensor(path, dims, data);
    nlohmann::ordered_json j;
    j["kind"] = to_string(P.kind);
    j["max_level"] = P.max_level;
    j["grid"] = grid_json(P.grid);
    j["dims"] = dims;
    j["dtype"] = "float64";
    j["order"] = "row-major";
    auto& labels = j["labels"] = nlohmann::ordered_json::array();
    for (const auto& m : P.masks) labels.push_back(label_json(m.label()));
    io::write_json(io::sidecar(path), j);
}

}  // namespace besov
