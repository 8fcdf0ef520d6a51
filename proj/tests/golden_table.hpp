#pragma once

#include "besovlab/params.hpp"

#include <string>
#include <vector>

namespace golden {

struct Row {
    bool s2b;  // S^t -> B^t, else B^{td} -> S^t
    const char* t;
    const char* p;
    const char* q;
    int d;
    besov::Status status;
    const char* clause;
};

using besov::Status;
namespace c = besov::clause;

// one or more points per clause, both directions
inline const std::vector<Row>& table() {
    static const std::vector<Row> rows = {
        {true, "1", "0.5", "0.3", 3, Status::Embeds, c::kT31Pos},
        {true, "2", "inf", "inf", 2, Status::Embeds, c::kT31Pos},
        {true, "0", "3", "2", 2, Status::Embeds, c::kT31Q},
        {true, "0", "1/2", "1/2", 2, Status::Embeds, c::kT31Q},
        {true, "0", "inf", "1", 2, Status::Embeds, c::kT31Inf},
        {true, "0", "inf", "0.5", 4, Status::Embeds, c::kT31Inf},
        {true, "0", "3", "2.5", 2, Status::NotComparable, c::kP33ii},
        {true, "0", "1.5", "1.75", 2, Status::NotComparable, c::kP33ii},
        {true, "0", "1", "1.5", 2, Status::NotComparable, c::kP33iii},
        {true, "0", "inf", "2", 2, Status::NotComparable, c::kP33iv},
        {true, "-1", "2", "1", 2, Status::ReverseEmbeds, c::kP33i},
        {true, "-1", "inf", "3", 3, Status::ReverseEmbeds, c::kP33i},
        {true, "-1", "0.5", "1", 2, Status::NotComparable, c::kP33v},
        {true, "-1/4", "0.9", "inf", 2, Status::NotComparable, c::kP33v},
        {true, "0", "2", "4", 2, Status::ReverseEmbeds, c::kT34Q},
        {true, "-3", "0.5", "0.1", 1, Status::Embeds, c::kCoincide},
        {false, "1", "0.5", "inf", 2, Status::Embeds, c::kT34Crit},
        {false, "0", "1", "inf", 2, Status::Embeds, c::kT34Crit},
        {false, "0", "2", "2", 2, Status::Embeds, c::kT34Q},
        {false, "0", "4", "4", 3, Status::Embeds, c::kT34Q},
        {false, "2", "0.5", "1", 2, Status::Embeds, c::kT34Pos},
        {false, "1/3", "2", "0.2", 2, Status::Embeds, c::kT34Pos},
        {false, "1", "0.5", "2", 2, Status::FailsToEmbed, c::kT34Nec},
        {false, "0.5", "0.5", "3", 2, Status::NotComparable, c::kP35ii},
        {false, "-2", "1", "1", 2, Status::ReverseEmbeds, c::kP35i},
        {false, "-1", "inf", "0.5", 2, Status::ReverseEmbeds, c::kP35i},
        {false, "0", "0.5", "0.25", 2, Status::ReverseEmbeds, c::kP35iii},
        {false, "0", "0.5", "1", 2, Status::NotComparable, c::kP35iv},
        {false, "0", "2", "1", 2, Status::ReverseEmbeds, c::kT31Q},
        {false, "0", "3", "2.5", 2, Status::NotComparable, c::kP33ii},
        {false, "0", "inf", "1.5", 2, Status::NotComparable, c::kP33iv},
        {false, "5", "0.1", "7", 1, Status::Embeds, c::kCoincide},
    };
    return rows;
}

inline besov::ParameterPoint point(const Row& r) {
    using besov::ExtendedExponent;
    return besov::make_params(besov::Scalar::parse(r.t), ExtendedExponent::parse(r.p), ExtendedExponent::parse(r.q),
                              r.d);
}

inline besov::Verdict evaluate(const Row& r) {
    auto x = point(r);
    return r.s2b ? besov::embed_mixed_into_iso(x) : besov::embed_iso_into_mixed(x);
}

/// every clause that must appear at least once
inline std::vector<std::string> required_clauses() {
    return {c::kT31Pos, c::kT31Q, c::kT31Inf, c::kT34Pos, c::kT34Q, c::kT34Crit, c::kT34Nec, c::kP33i, c::kP33ii,
            c::kP33iii, c::kP33iv, c::kP33v, c::kP35i, c::kP35ii, c::kP35iii, c::kP35iv};
}

}  // namespace golden
