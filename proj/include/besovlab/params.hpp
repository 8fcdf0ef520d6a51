#pragma once

#include "scalar.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace besov {

/// (t, p, q, d): smoothness, integrability, summability, dimension
struct ParameterPoint {
    Scalar t;
    ExtendedExponent p;
    ExtendedExponent q;
    int d = 1;
};

inline ParameterPoint make_params(Scalar t, ExtendedExponent p, ExtendedExponent q, int d) {
    if (d < 1) throw domain_error("dimension must be >= 1, got " + std::to_string(d));
    return ParameterPoint{t, p, q, d};
}

/// p, q may be +infinity; non-positive values are rejected
inline ParameterPoint make_params(double t, double p, double q, int d) {
    return make_params(Scalar(t), ExtendedExponent(p), ExtendedExponent(q), d);
}

enum class Status { Embeds, FailsToEmbed, ReverseEmbeds, NotComparable, NotCoveredByPaper };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Embeds: return "Embeds";
        case Status::FailsToEmbed: return "FailsToEmbed";
        case Status::ReverseEmbeds: return "ReverseEmbeds";
        case Status::NotComparable: return "NotComparable";
        case Status::NotCoveredByPaper: return "NotCoveredByPaper";
    }
    return "?";
}

inline Status status_from_string(const std::string& s) {
    for (Status st : {Status::Embeds, Status::FailsToEmbed, Status::ReverseEmbeds, Status::NotComparable,
                      Status::NotCoveredByPaper})
        if (s == to_string(st)) return st;
    throw domain_error("unknown status '" + s + "'");
}

struct Verdict {
    Status status = Status::NotCoveredByPaper;
    std::string clause;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline nlohmann::ordered_json to_json(const Verdict& v) {
    nlohmann::ordered_json j;
    j["status"] = to_string(v.status);
    j["clause"] = v.clause;
    return j;
}

namespace clause {
inline constexpr const char* kCoincide = "Remark 2.4(iii): spaces coincide";
inline constexpr const char* kT31Pos = "Thm 3.1: t>0";
inline constexpr const char* kT31Q = "Thm 3.1: q ≤ min(p,2)";
inline constexpr const char* kT31Inf = "Thm 3.1: p=∞, q ≤ 1";
inline constexpr const char* kT34Pos = "Thm 3.4: t > max(0, 1/p − 1)";
inline constexpr const char* kT34Q = "Thm 3.4: max(2,p) ≤ q";
inline constexpr const char* kT34Crit = "Thm 3.4: t = 1/p − 1, q = ∞";
inline constexpr const char* kT34Nec = "Thm 3.4: necessity";
inline constexpr const char* kP33i = "Prop 3.3(i)";
inline constexpr const char* kP33ii = "Prop 3.3(ii)";
inline constexpr const char* kP33iii = "Prop 3.3(iii)";
inline constexpr const char* kP33iv = "Prop 3.3(iv)";
inline constexpr const char* kP33v = "Prop 3.3(v)";
inline constexpr const char* kP35i = "Prop 3.5(i)";
inline constexpr const char* kP35ii = "Prop 3.5(ii)";
inline constexpr const char* kP35iii = "Prop 3.5(iii)";
inline constexpr const char* kP35iv = "Prop 3.5(iv)";
}  // namespace clause

namespace detail {

inline bool is_two(const ExtendedExponent& e) { return !e.is_infinite() && e.finite() == Scalar(2); }
inline bool is_one(const ExtendedExponent& e) { return !e.is_infinite() && e.finite() == Scalar(1); }

// S^0 -> B^0 sufficient clause, or empty
inline const char* s2b_zero_clause(const ParameterPoint& x) {
    if (!x.p.is_infinite()) {
        ExtendedExponent m = x.p < ExtendedExponent(2.0) ? x.p : ExtendedExponent(2.0);
        if (x.q <= m) return clause::kT31Q;
    } else if (x.q <= ExtendedExponent(1.0)) {
        return clause::kT31Inf;
    }
    return nullptr;
}

// B^0 -> S^0 sufficient clause (t = 0 only), or empty
inline const char* b2s_zero_clause(const ParameterPoint& x) {
    ExtendedExponent one(1.0), two(2.0);
    if (x.p > one) {
        ExtendedExponent m = x.p > two ? x.p : two;
        if (m <= x.q) return clause::kT34Q;
    } else if (is_one(x.p) && x.q.is_infinite()) {
        return clause::kT34Crit;
    }
    return nullptr;
}

// t = 0 non-comparability items of the S->B proposition, or empty
inline const char* zero_not_comparable(const ParameterPoint& x) {
    ExtendedExponent one(1.0), two(2.0);
    bool q_open = x.q > one && !x.q.is_infinite();
    if (x.p > one && !x.p.is_infinite() && !is_two(x.p)) {
        ExtendedExponent lo = x.p < two ? x.p : two;
        ExtendedExponent hi = x.p < two ? two : x.p;
        if (lo < x.q && x.q < hi) return clause::kP33ii;
    }
    if (is_one(x.p) && q_open) return clause::kP33iii;
    if (x.p.is_infinite() && q_open) return clause::kP33iv;
    if (x.p < one && x.p < x.q) return clause::kP35iv;
    return nullptr;
}

}  // namespace detail

/// S^t_{p,q}B -> B^t_{p,q}
inline Verdict embed_mixed_into_iso(const ParameterPoint& x) {
    if (x.d == 1) return {Status::Embeds, clause::kCoincide};
    int ts = compare(x.t, Scalar(0));
    if (ts > 0) return {Status::Embeds, clause::kT31Pos};
    if (ts < 0) {
        if (x.p >= ExtendedExponent(1.0)) return {Status::ReverseEmbeds, clause::kP33i};
        return {Status::NotComparable, clause::kP33v};
    }
    if (auto c = detail::s2b_zero_clause(x)) return {Status::Embeds, c};
    if (auto c = detail::zero_not_comparable(x)) return {Status::NotComparable, c};
    if (auto c = detail::b2s_zero_clause(x)) return {Status::ReverseEmbeds, c};
    return {Status::NotCoveredByPaper, ""};
}

/// B^{td}_{p,q} -> S^t_{p,q}B
inline Verdict embed_iso_into_mixed(const ParameterPoint& x) {
    if (x.d == 1) return {Status::Embeds, clause::kCoincide};
    int ts = compare(x.t, Scalar(0));
    if (ts < 0) return {Status::ReverseEmbeds, clause::kP35i};
    Scalar crit = x.p.reciprocal() - Scalar(1);  // 1/p - 1
    if (ts > 0) {
        int c = compare(x.t, max(Scalar(0), crit));
        if (c > 0) return {Status::Embeds, clause::kT34Pos};
        // here 0 < t <= 1/p - 1, so p < 1
        if (c < 0) return {Status::NotComparable, clause::kP35ii};
        if (x.q.is_infinite()) return {Status::Embeds, clause::kT34Crit};
        return {Status::FailsToEmbed, clause::kT34Nec};
    }
    if (auto c = detail::b2s_zero_clause(x)) return {Status::Embeds, c};
    if (x.p < ExtendedExponent(1.0)) {
        if (x.q <= x.p) return {Status::ReverseEmbeds, clause::kP35iii};
        return {Status::NotComparable, clause::kP35iv};
    }
    if (auto c = detail::s2b_zero_clause(x)) return {Status::ReverseEmbeds, c};
    if (auto c = detail::zero_not_comparable(x)) return {Status::NotComparable, c};
    return {Status::NotCoveredByPaper, ""};
}

enum class Family { Iso, Mixed };

/// src ↪ dst between spaces of the same family; offset d (Iso) or 1 (Mixed)
inline bool classical_embedding(const ParameterPoint& src, const ParameterPoint& dst, Family family) {
    if (src.d != dst.d) throw domain_error("dimension mismatch in classical_embedding");
    if (src.p > dst.p) return false;
    Scalar off = family == Family::Iso ? Scalar(src.d) : Scalar(1);
    Scalar a = src.t - off * src.p.reciprocal();
    Scalar b = dst.t - off * dst.p.reciprocal();
    int c = compare(a, b);
    if (c > 0) return true;
    return c == 0 && src.q <= dst.q;
}

enum class Direction { MixedIntoIso, IsoIntoMixed_Source, IsoIntoMixed_Target };

/**
 * @brief Extremal space for the given direction.
 *
 * MixedIntoIso: target B^t -> largest S^t. IsoIntoMixed_Source: target S^t ->
 * largest B^{td}. IsoIntoMixed_Target: source B^{s} -> smallest S^{s/d}.
 */
inline ParameterPoint optimal_space(const ParameterPoint& x, Direction dir) {
    switch (dir) {
        case Direction::MixedIntoIso: return x;
        case Direction::IsoIntoMixed_Source: return {x.t * Scalar(x.d), x.p, x.q, x.d};
        case Direction::IsoIntoMixed_Target: return {x.t / Scalar(x.d), x.p, x.q, x.d};
    }
    return x;
}

}  // namespace besov
