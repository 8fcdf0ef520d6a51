#pragma once

#include "bump.hpp"
#include "partition.hpp"
#include "signal.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace besov {

enum class ExampleFamily { E1, E2, E3, E4, E5, E6 };

inline const char* to_string(ExampleFamily f) {
    static const char* names[] = {"E1", "E2", "E3", "E4", "E5", "E6"};
    return names[int(f)];
}

inline ExampleFamily example_family_from_string(const std::string& s) {
    for (int i = 0; i < 6; ++i)
        if (s == to_string(ExampleFamily(i))) return ExampleFamily(i);
    throw domain_error("unknown example family '" + s + "'");
}

/// half-width of the E3 profile around |s| = 7/4
inline constexpr double kRingCenter = 1.75;
inline constexpr double kRingHalfWidth = 0.25;

struct ExampleSpec {
    ExampleFamily family = ExampleFamily::E2;
    int d = 2;
    int ell = 1;
    std::vector<double> coeffs;                           ///< a_1..a_ell (E1, E2, E4, E5)
    std::vector<std::pair<MultiIndex, double>> nabla;     ///< a_k for k in the ell-shell (E3)
    double bump_width = 1.0 / 16.0;                       ///< E1 support radius
    std::string bump_profile = "mollifier";
    int dilation = 0;                                     ///< E6: h_j = rho(2^-j x)

    friend bool operator==(const ExampleSpec&, const ExampleSpec&) = default;
};

inline void validate(const ExampleSpec& s) {
    if (s.d < 1 || s.d > 16) throw domain_error("example dimension must be in [1, 16]");
    if (s.bump_profile != "mollifier") throw domain_error("unknown bump profile '" + s.bump_profile + "'");
    using F = ExampleFamily;
    if (s.family == F::E6) {
        if (s.dilation < 0) throw domain_error("E6 dilation must be >= 0");
        return;
    }
    if (s.ell < 1) throw domain_error("ell must be >= 1");
    if ((s.family == F::E1 || s.family == F::E2) && s.d < 2) throw domain_error("E1/E2 need d >= 2");
    if (s.family == F::E1 && !(s.bump_width > 0.0 && s.bump_width < 0.125))
        throw domain_error("E1 bump width must lie in (0, 1/8)");
    if (s.family == F::E3) {
        for (const auto& [k, a] : s.nabla) {
            if (int(k.size()) != s.d) throw domain_error("E3 multi-index has wrong length");
            int mx = 0;
            for (int ki : k) {
                if (ki < 1) throw domain_error("E3 multi-index entries must be >= 1");
                mx = std::max(mx, ki);
            }
            if (mx != s.ell) throw domain_error("E3 multi-index " + label_string(Label(k)) + " is not in the ell-shell");
        }
        return;
    }
    if (int(s.coeffs.size()) != s.ell) throw domain_error("expected ell coefficients a_1..a_ell");
}

/// all k in N^d with max k_i = ell, lexicographic
inline std::vector<MultiIndex> nabla_shell(int d, int ell) {
    std::vector<MultiIndex> out;
    MultiIndex k(d, 1);
    while (true) {
        if (*std::max_element(k.begin(), k.end()) == ell) out.push_back(k);
        int i = d - 1;
        while (i >= 0 && k[i] == ell) k[i--] = 1;
        if (i < 0) break;
        ++k[i];
    }
    return out;
}

inline nlohmann::ordered_json to_json(const ExampleSpec& s) {
    nlohmann::ordered_json j;
    j["family"] = to_string(s.family);
    j["d"] = s.d;
    j["ell"] = s.ell;
    j["coeffs"] = s.coeffs;
    auto& nb = j["nabla_coeffs"] = nlohmann::ordered_json::array();
    for (const auto& [k, a] : s.nabla) nb.push_back({{"k", k}, {"a", a}});
    j["bump_width"] = s.bump_width;
    j["bump_profile"] = s.bump_profile;
    j["dilation"] = s.dilation;
    return j;
}

inline ExampleSpec example_spec_from_json(const nlohmann::json& j) {
    ExampleSpec s;
    try {
        s.family = example_family_from_string(j.at("family").get<std::string>());
        s.d = j.value("d", 2);
        s.ell = j.value("ell", 1);
        s.coeffs = j.value("coeffs", std::vector<double>{});
        if (j.contains("nabla_coeffs"))
            for (const auto& e : j.at("nabla_coeffs")) s.nabla.emplace_back(e.at("k").get<MultiIndex>(), e.at("a").get<double>());
        s.bump_width = j.value("bump_width", 1.0 / 16.0);
        s.bump_profile = j.value("bump_profile", std::string("mollifier"));
        s.dilation = j.value("dilation", 0);
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("bad example spec: ") + e.what());
    }
    validate(s);
    return s;
}

// ---- spectral profiles ----------------------------------------------------

/// per-axis half-width of the E1 bump, so the tensor support sits inside B(0, eps)
inline double e1_axis_halfwidth(const ExampleSpec& s) { return s.bump_width / std::sqrt(double(s.d)); }

/// 1-D factor of the E1 bump, unit mass
inline double e1_profile(double s, double w) { return bump(s / w) / (w * bump_mass()); }

/// E3 profile g on 3/2 <= |s| <= 2
inline double ring_profile(double s) { return bump((std::abs(s) - kRingCenter) / kRingHalfWidth); }

/// g_k(s) = g(2^{1-k} s)
inline double ring_profile(int k, double s) { return ring_profile(std::ldexp(s, 1 - k)); }

/// radial E6 generator: F rho(xi) = b(|xi|)
inline double rho_hat(double r) { return bump(r); }

/// E1 term centers: (7/8 2^ell, 7/8 2^j, 0, ...)
inline std::vector<double> e1_center(const ExampleSpec& s, int j) {
    std::vector<double> c(s.d, 0.0);
    c[0] = 0.875 * std::ldexp(1.0, s.ell);
    c[1] = 0.875 * std::ldexp(1.0, j);
    return c;
}

// ---- construction ---------------------------------------------------------

namespace detail {

/// a separable term: coeff * prod_i axis[i][b_i]
struct TensorTerm {
    cplx coeff;
    std::vector<std::vector<double>> axis;
};

inline std::vector<double> sample_axis(const FrequencyGrid& g, const std::function<double(double)>& h) {
    std::vector<double> v(g.n);
    for (std::size_t b = 0; b < g.n; ++b) v[b] = h(g.frequency(b));
    return v;
}

inline void accumulate_terms(CVec& F, const FrequencyGrid& g, const std::vector<TensorTerm>& terms) {
    const std::size_t n = g.n;
    for (const auto& t : terms) {
        std::vector<std::vector<std::size_t>> nz(g.d);
        for (int i = 0; i < g.d; ++i)
            for (std::size_t b = 0; b < n; ++b)
                if (t.axis[i][b] != 0.0) nz[i].push_back(b);
        bool empty = false;
        for (const auto& z : nz) empty = empty || z.empty();
        if (empty) continue;
        // odometer over the nonzero support of each axis
        std::vector<std::size_t> pos(g.d, 0);
        while (true) {
            std::size_t lin = 0;
            double v = 1.0;
            for (int i = 0; i < g.d; ++i) {
                std::size_t b = nz[i][pos[i]];
                lin = lin * n + b;
                v *= t.axis[i][b];
            }
            F[lin] += t.coeff * v;
            int i = g.d - 1;
            while (i >= 0 && ++pos[i] == nz[i].size()) pos[i--] = 0;
            if (i < 0) break;
        }
    }
}

/// lattice index of frequency x, if x sits on the lattice and inside it
inline std::optional<std::size_t> lattice_index(const FrequencyGrid& g, double x) {
    double m = x / g.spacing();
    double r = std::round(m);
    if (std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(m))) return std::nullopt;
    auto mi = std::int64_t(r);
    auto half = std::int64_t(g.n / 2);
    if (mi < -half || mi >= half) return std::nullopt;
    return std::size_t(mi < 0 ? mi + std::int64_t(g.n) : mi);
}

inline void require_inside(const FrequencyGrid& g, double top, const char* what) {
    if (!(top < g.nyquist()))
        throw domain_error(std::string("Nyquist overflow: ") + what + " reaches " + std::to_string(top) + " but " +
                           g.str() + " stops at " + std::to_string(g.nyquist()));
}

/// min |F^{-1} g| over |x| <= pi for the 1-D E1 factor, relative to its max
inline double e1_positivity_margin(const FrequencyGrid& g, double w) {
    FrequencyGrid g1(1, g.n, g.R);
    CVec v(g.n);
    for (std::size_t b = 0; b < g.n; ++b) v[b] = e1_profile(g1.frequency(b), w);
    spectrum_to_samples(v, g1);
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (std::size_t a = 0; a < g.n; ++a) {
        double x = g1.coordinate(a), m = std::abs(v[a]);
        mx = std::max(mx, m);
        if (std::abs(x) <= std::numbers::pi) mn = std::min(mn, m);
    }
    return mx > 0.0 ? mn / mx : 0.0;
}

}  // namespace detail

/// the E1 bump's inverse transform must not vanish on [-pi, pi]^d
inline constexpr double kPositivityFloor = 1e-9;

/**
 * @brief Witness function of the given family on grid g.
 *
 * Spectra are assembled term by term from separable profiles (E1-E5) or the
 * radial generator (E6). E2 modes must sit exactly on the lattice.
 */
inline GridFunction make_example(const ExampleSpec& s, const FrequencyGrid& g) {
    validate(s);
    g.validate();
    if (g.d != s.d) throw domain_error("example dimension does not match " + g.str());
    CVec F(g.size());
    std::vector<detail::TensorTerm> terms;
    const double ell2 = std::ldexp(1.0, s.ell);
    switch (s.family) {
        case ExampleFamily::E1: {
            const double w = e1_axis_halfwidth(s);
            detail::require_inside(g, 0.875 * ell2 + w, "E1 spectrum");
            if (g.R < std::numbers::pi) throw domain_error("E1 positivity check needs R >= pi");
            if (detail::e1_positivity_margin(g, w) <= kPositivityFloor)
                throw domain_error("E1 positivity check failed: inverse transform of the bump vanishes on [-pi, pi]");
            for (int j = 1; j <= s.ell; ++j) {
                auto c = e1_center(s, j);
                detail::TensorTerm t{s.coeffs[j - 1], {}};
                for (int i = 0; i < s.d; ++i)
                    t.axis.push_back(detail::sample_axis(g, [&](double x) { return e1_profile(x - c[i], w); }));
                terms.push_back(std::move(t));
            }
            break;
        }
        case ExampleFamily::E2: {
            detail::require_inside(g, ell2, "E2 spectrum");
            // unit-modulus modes: F = a (2 pi)^{d/2} / Delta^d at the mode
            const double amp = 1.0 / detail::synthesis_scale(g);
            auto b0 = detail::lattice_index(g, ell2);
            auto bz = detail::lattice_index(g, 0.0);
            if (!b0) throw domain_error("E2 frequency 2^ell is not on the lattice of " + g.str());
            for (int j = 1; j <= s.ell; ++j) {
                auto b1 = detail::lattice_index(g, std::ldexp(1.0, j));
                if (!b1) throw domain_error("E2 frequency 2^j is not on the lattice of " + g.str());
                detail::TensorTerm t{s.coeffs[j - 1] * amp, std::vector<std::vector<double>>(s.d, std::vector<double>(g.n, 0.0))};
                t.axis[0][*b0] = 1.0;
                t.axis[1][*b1] = 1.0;
                for (int i = 2; i < s.d; ++i) t.axis[i][*bz] = 1.0;
                terms.push_back(std::move(t));
            }
            break;
        }
        case ExampleFamily::E3:
        case ExampleFamily::E4:
        case ExampleFamily::E5: {
            detail::require_inside(g, ell2, "ring spectrum");
            std::vector<std::pair<MultiIndex, double>> idx;
            if (s.family == ExampleFamily::E3) {
                idx = s.nabla;
            } else {
                for (int j = 1; j <= s.ell; ++j) {
                    MultiIndex k(s.d, s.family == ExampleFamily::E4 ? 1 : j);
                    k[0] = j;
                    idx.emplace_back(k, s.coeffs[j - 1]);
                }
            }
            std::map<int, std::vector<double>> prof;
            for (const auto& [k, a] : idx)
                for (int ki : k)
                    if (!prof.count(ki)) prof[ki] = detail::sample_axis(g, [ki](double x) { return ring_profile(ki, x); });
            for (const auto& [k, a] : idx) {
                detail::TensorTerm t{a, {}};
                for (int ki : k) t.axis.push_back(prof[ki]);
                terms.push_back(std::move(t));
            }
            break;
        }
        case ExampleFamily::E6: {
            const double sc = std::ldexp(1.0, s.dilation);
            detail::require_inside(g, 1.0 / sc, "E6 spectrum");
            const double dil = std::pow(sc, s.d);
            std::vector<double> sq(g.n);
            for (std::size_t b = 0; b < g.n; ++b) sq[b] = std::pow(g.frequency(b) * sc, 2);
            std::size_t idx[16];
            for (std::size_t i = 0; i < F.size(); ++i) {
                g.unravel(i, idx);
                double r2 = 0.0;
                for (int a = 0; a < g.d && r2 < 1.0; ++a) r2 += sq[idx[a]];
                if (r2 < 1.0) F[i] = dil * rho_hat(std::sqrt(r2));
            }
            return GridFunction::from_spectrum(g, std::move(F));
        }
    }
    detail::accumulate_terms(F, g, terms);
    return GridFunction::from_spectrum(g, std::move(F));
}

// ---- predictions ----------------------------------------------------------

enum class Exactness { Equality, Equivalence };

inline const char* to_string(Exactness e) { return e == Exactness::Equality ? "Equality" : "Equivalence"; }

/// value known only up to unknown two-sided constants; `growth` carries the known dependence
struct Bracket {
    double growth = 0.0;
    std::string lower = "c";
    std::string upper = "C";
};

using PredictedValue = std::variant<double, Bracket>;

struct AnalyticPrediction {
    PredictedValue iso_value;
    PredictedValue mixed_value;
    Exactness exactness = Exactness::Equality;
    std::string validity;

    bool iso_exact() const { return std::holds_alternative<double>(iso_value); }
    bool mixed_exact() const { return std::holds_alternative<double>(mixed_value); }
    /// exact value or the known growth factor
    static double magnitude(const PredictedValue& v) {
        return std::holds_alternative<double>(v) ? std::get<double>(v) : std::get<Bracket>(v).growth;
    }
};

class prediction_refused : public domain_error {
  public:
    using domain_error::domain_error;
};

/// constants evaluated on the 1-D lattice of this grid (or the grid itself for E6)
struct LatticeFactors {
    FrequencyGrid grid;
};
/// constants approximating L_p(R) by a box-growing ladder
struct RealLineFactors {
    double tol = 1e-6;
    int max_rungs = 9;
};
/// ell-dependence only: c(k) = 2^{(k-1)(1-1/p)}, base constants set to 1
struct DilationLawFactors {};

using FactorSource = std::variant<LatticeFactors, RealLineFactors, DilationLawFactors>;

/// ||F^{-1} h||_p on a 1-D lattice (n, R) for a spectral profile h
inline double lattice_factor_1d(const std::function<double(double)>& h, std::size_t n, double R,
                                const ExtendedExponent& p) {
    FrequencyGrid g(1, n, R);
    CVec v(n);
    for (std::size_t b = 0; b < n; ++b) v[b] = h(g.frequency(b));
    spectrum_to_samples(v, g);
    return lp_quasinorm(v, g, p);
}

/**
 * @brief ||F^{-1} h||_{L_p(R)} by doubling the box at fixed Nyquist 2*top.
 *
 * R_i = R0 2^i; stops once two rungs agree to tol.
 */
inline std::pair<double, ConvergenceMeta> real_line_factor_1d(const std::function<double(double)>& h, double top,
                                                              const ExtendedExponent& p, double R0, double tol,
                                                              int max_rungs) {
    std::vector<std::pair<std::size_t, double>> sched;
    for (int i = 0; i < max_rungs; ++i) {
        double R = R0 * std::ldexp(1.0, i);
        auto n = std::bit_ceil(std::size_t(std::ceil(2.0 * 2.0 * top * R / std::numbers::pi)));
        sched.emplace_back(std::max<std::size_t>(n, 2), R);
    }
    return refine_ladder([&](const FrequencyGrid& g) { return lattice_factor_1d(h, g.n, g.R, p); }, 1, sched, tol);
}

/// ||F^{-1} g_k||_p (E3-E5 axis factor)
inline double ring_factor(int k, const ExtendedExponent& p, const FactorSource& src) {
    auto h = [k](double x) { return ring_profile(k, x); };
    if (auto l = std::get_if<LatticeFactors>(&src)) return lattice_factor_1d(h, l->grid.n, l->grid.R, p);
    if (auto r = std::get_if<RealLineFactors>(&src))
        return real_line_factor_1d(h, std::ldexp(1.0, k), p, 64.0 * std::numbers::pi, r->tol, r->max_rungs).first;
    return std::exp2(double(k - 1) * (1.0 - p.reciprocal().value()));
}

/// ||F^{-1} g(. - c)||_p for the E1 1-D factor centered at c
inline double e1_factor(double w, double c, const ExtendedExponent& p, const FactorSource& src) {
    if (auto l = std::get_if<LatticeFactors>(&src))
        return lattice_factor_1d([w, c](double x) { return e1_profile(x - c, w); }, l->grid.n, l->grid.R, p);
    if (auto r = std::get_if<RealLineFactors>(&src))
        return real_line_factor_1d([w](double x) { return e1_profile(x, w); }, w, p, 128.0 * std::numbers::pi / w,
                                   r->tol, r->max_rungs)
            .first;
    return 1.0;
}

/// ||rho||_p in d dimensions; lattice sources use the given grid directly
inline double rho_factor(int d, const ExtendedExponent& p, const FactorSource& src) {
    ExampleSpec s;
    s.family = ExampleFamily::E6;
    s.d = d;
    if (auto l = std::get_if<LatticeFactors>(&src)) return lp_quasinorm(make_example(s, l->grid), p);
    if (auto r = std::get_if<RealLineFactors>(&src)) {
        std::vector<std::pair<std::size_t, double>> sched;
        for (int i = 0; i < r->max_rungs; ++i) {
            std::size_t n = std::size_t(32) << i;
            if (std::pow(double(n), d) > 1.7e7) break;
            sched.emplace_back(n, 8.0 * std::numbers::pi * std::ldexp(1.0, i));
        }
        return refine_ladder([&](const FrequencyGrid& g) { return lp_quasinorm(make_example(s, g), p); }, d, sched,
                             r->tol)
            .first;
    }
    return 1.0;
}

namespace detail {
inline double weighted_lq(const std::vector<double>& c, const ExtendedExponent& q) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    if (q.is_infinite() || m == 0.0) return m;
    double s = 0.0;
    for (double v : c) s += std::pow(std::abs(v) / m, q.value());
    return m * std::pow(s, 1.0 / q.value());
}
}  // namespace detail

/**
 * @brief Closed-form norms of the witness family.
 *
 * t_iso is the smoothness of the isotropic space, t_mixed that of the mixed
 * space; callers comparing B^{td} with S^t pass different values. Block
 * weights use the full tensor level |k|. Throws prediction_refused outside
 * the validity region of the formula.
 */
inline AnalyticPrediction predicted_norms(const ExampleSpec& s, double t_iso, double t_mixed, const ExtendedExponent& p,
                                          const ExtendedExponent& q, const FactorSource& src) {
    validate(s);
    AnalyticPrediction out;
    const double ip = p.reciprocal().value();
    switch (s.family) {
        case ExampleFamily::E1: {
            if (p.is_infinite()) throw prediction_refused("E1 predictions need p < infinity");
            const double w = e1_axis_halfwidth(s);
            std::vector<double> mix, l2;
            double base = 1.0;
            for (int i = 1; i < s.d; ++i) base *= e1_factor(w, 0.0, p, src);
            for (int j = 1; j <= s.ell; ++j) {
                auto c = e1_center(s, j);
                double C = e1_factor(w, c[0], p, src) * e1_factor(w, c[1], p, src);
                for (int i = 2; i < s.d; ++i) C *= e1_factor(w, 0.0, p, src);
                mix.push_back(std::exp2(double(s.ell + j) * t_mixed) * s.coeffs[j - 1] * C);
                l2.push_back(s.coeffs[j - 1] * C);
            }
            out.mixed_value = detail::weighted_lq(mix, q);
            const double lead = std::exp2(double(s.ell) * t_iso);
            if (p == ExtendedExponent(2.0)) {
                out.iso_value = lead * detail::weighted_lq(l2, ExtendedExponent(2.0));
                out.validity = "iso exact by Parseval (disjoint spectra)";
            } else {
                std::vector<double> a(s.coeffs.begin(), s.coeffs.end());
                out.iso_value = Bracket{lead * detail::weighted_lq(a, ExtendedExponent(2.0)) * e1_factor(w, 0.0, p, src) * base};
                out.validity = "iso l2-equivalence for 0 < p < infinity";
            }
            break;
        }
        case ExampleFamily::E2: {
            if (!p.is_infinite()) throw prediction_refused("E2 predictions need p = infinity");
            std::vector<double> mix;
            double sum = 0.0;
            for (int j = 1; j <= s.ell; ++j) {
                double a = s.coeffs[j - 1];
                if (a < 0.0) throw prediction_refused("E2 predictions need a_j >= 0");
                sum += a;
                mix.push_back(std::exp2(double(s.ell + j) * t_mixed) * a);
            }
            out.iso_value = std::exp2(double(s.ell) * t_iso) * sum;
            out.mixed_value = detail::weighted_lq(mix, q);
            out.validity = "p = infinity, a_j >= 0";
            break;
        }
        case ExampleFamily::E3: {
            std::map<int, double> c;
            auto fac = [&](int k) {
                if (!c.count(k)) c[k] = ring_factor(k, p, src);
                return c[k];
            };
            std::vector<double> mix, iso2, grow;
            for (const auto& [k, a] : s.nabla) {
                double C = 1.0;
                int lvl = 0;
                for (int ki : k) {
                    C *= fac(ki);
                    lvl += ki;
                }
                mix.push_back(std::exp2(double(lvl) * t_mixed) * std::abs(a) * C);
                iso2.push_back(std::abs(a) * C);
                grow.push_back(std::abs(a) * std::exp2(double(lvl) * (1.0 - ip)));
            }
            out.mixed_value = detail::weighted_lq(mix, q);
            const double lead = std::exp2(double(s.ell) * t_iso);
            if (p == ExtendedExponent(2.0)) {
                out.iso_value = lead * detail::weighted_lq(iso2, p);
                out.validity = "iso exact by Parseval (disjoint spectra)";
            } else if (p > ExtendedExponent(1.0) && !p.is_infinite()) {
                out.iso_value = Bracket{lead * detail::weighted_lq(grow, p)};
                out.validity = "iso equivalence for 1 < p < infinity";
            } else {
                throw prediction_refused("E3 iso prediction needs 1 < p < infinity");
            }
            break;
        }
        case ExampleFamily::E4:
        case ExampleFamily::E5: {
            const bool e4 = s.family == ExampleFamily::E4;
            const double c1 = ring_factor(1, p, src);
            std::vector<double> mix, iso;
            for (int j = 1; j <= s.ell; ++j) {
                const double cj = ring_factor(j, p, src);
                const double C = e4 ? cj * std::pow(c1, s.d - 1) : std::pow(cj, s.d);
                const int lvl = e4 ? j + s.d - 1 : j * s.d;
                const double a = std::abs(s.coeffs[j - 1]);
                mix.push_back(std::exp2(double(lvl) * t_mixed) * a * C);
                iso.push_back(std::exp2(double(j) * t_iso) * a * C);
            }
            out.mixed_value = detail::weighted_lq(mix, q);
            out.iso_value = detail::weighted_lq(iso, q);
            out.validity = "all 0 < p, q <= infinity";
            break;
        }
        case ExampleFamily::E6: {
            const double v = std::exp2(double(s.dilation * s.d) * ip) * rho_factor(s.d, p, src);
            out.iso_value = v;
            out.mixed_value = v;
            out.validity = "all t, q";
            break;
        }
    }
    out.exactness = out.iso_exact() && out.mixed_exact() ? Exactness::Equality : Exactness::Equivalence;
    return out;
}

inline AnalyticPrediction predicted_norms(const ExampleSpec& s, double t, const ExtendedExponent& p,
                                          const ExtendedExponent& q, const FactorSource& src) {
    return predicted_norms(s, t, t, p, q, src);
}

inline nlohmann::ordered_json to_json(const AnalyticPrediction& a) {
    auto side = [](const PredictedValue& v) {
        nlohmann::ordered_json j;
        if (auto d = std::get_if<double>(&v)) {
            j["value"] = *d;
        } else {
            const auto& b = std::get<Bracket>(v);
            j["growth"] = b.growth;
            j["lower"] = b.lower;
            j["upper"] = b.upper;
        }
        return j;
    };
    nlohmann::ordered_json j;
    j["iso"] = side(a.iso_value);
    j["mixed"] = side(a.mixed_value);
    j["exactness"] = to_string(a.exactness);
    j["validity"] = a.validity;
    return j;
}

}  // namespace besov
