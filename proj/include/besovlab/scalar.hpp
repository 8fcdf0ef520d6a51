#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace besov {

/// absolute tolerance for comparisons when an operand is not exactly rational
inline constexpr double kExponentTol = 1e-12;

class domain_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief Real number that remembers an exact rational value when one is known.
 *
 * Arithmetic stays exact while both operands are exact and nothing overflows;
 * otherwise it degrades to double.
 */
class Scalar {
  public:
    using Rat = boost::rational<std::int64_t>;

    Scalar() : Scalar(Rat(0)) {}
    Scalar(int v) : Scalar(Rat(v)) {}
    /// a double whose shortest decimal form round-trips is stored exactly (0.1 -> 1/10)
    Scalar(double v) : approx_(v) {
        if (!std::isfinite(v)) throw domain_error("non-finite scalar");
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", v);
        Scalar d = parse(buf);
        if (d.exact_ && boost::rational_cast<double>(*d.exact_) == v) exact_ = d.exact_;
    }
    Scalar(Rat r) : approx_(boost::rational_cast<double>(r)), exact_(r) {}

    static Scalar ratio(std::int64_t num, std::int64_t den) { return Scalar(Rat(num, den)); }
    static Scalar inexact(double v) {
        Scalar s;
        s.approx_ = v;
        s.exact_.reset();
        return s;
    }

    /// accepts "3", "-1.25", "1/3", "2e-3"; decimal input is kept exact
    static Scalar parse(std::string_view s);

    double value() const { return approx_; }
    bool exact() const { return exact_.has_value(); }
    const std::optional<Rat>& rational() const { return exact_; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            if (auto r = checked_add(*a.exact_, *b.exact_)) return Scalar(*r);
        }
        return inexact(a.approx_ + b.approx_);
    }
    friend Scalar operator-(const Scalar& a) {
        if (a.exact_) return Scalar(-*a.exact_);
        return inexact(-a.approx_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            if (auto r = checked_mul(*a.exact_, *b.exact_)) return Scalar(*r);
        }
        return inexact(a.approx_ * b.approx_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.exact_ ? b.exact_->numerator() == 0 : b.approx_ == 0.0)
            throw domain_error("division by zero");
        if (a.exact_ && b.exact_) {
            Rat inv(b.exact_->denominator(), b.exact_->numerator());
            if (auto r = checked_mul(*a.exact_, inv)) return Scalar(*r);
        }
        return inexact(a.approx_ / b.approx_);
    }

    /// -1, 0, +1; exact when both sides are rational, else within kExponentTol
    friend int compare(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            if (*a.exact_ < *b.exact_) return -1;
            return *a.exact_ == *b.exact_ ? 0 : 1;
        }
        double diff = a.approx_ - b.approx_;
        if (std::abs(diff) <= kExponentTol) return 0;
        return diff < 0 ? -1 : 1;
    }
    friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

    std::string str() const;

  private:
    static std::optional<Rat> checked_add(const Rat& a, const Rat& b) {
        std::int64_t x, y, num, den;
        if (__builtin_mul_overflow(a.numerator(), b.denominator(), &x)) return std::nullopt;
        if (__builtin_mul_overflow(b.numerator(), a.denominator(), &y)) return std::nullopt;
        if (__builtin_add_overflow(x, y, &num)) return std::nullopt;
        if (__builtin_mul_overflow(a.denominator(), b.denominator(), &den)) return std::nullopt;
        return Rat(num, den);
    }
    static std::optional<Rat> checked_mul(const Rat& a, const Rat& b) {
        std::int64_t num, den;
        if (__builtin_mul_overflow(a.numerator(), b.numerator(), &num)) return std::nullopt;
        if (__builtin_mul_overflow(a.denominator(), b.denominator(), &den)) return std::nullopt;
        return Rat(num, den);
    }

    double approx_ = 0.0;
    std::optional<Rat> exact_;
};

inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

inline Scalar Scalar::parse(std::string_view s) {
    auto fail = [&] { return domain_error("cannot parse number '" + std::string(s) + "'"); };
    if (s.empty()) throw fail();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Scalar a = parse(s.substr(0, slash));
        Scalar b = parse(s.substr(slash + 1));
        return a / b;
    }
    // decimal with optional exponent, exact if the digits fit
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::int64_t mant = 0;
    int scale = 0, digits = 0;
    bool overflow = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.' && !seen_dot) {
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') break;
        ++digits;
        if (mant > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
            overflow = true;
        } else {
            mant = mant * 10 + (c - '0');
            if (seen_dot) ++scale;
        }
    }
    if (digits == 0) throw fail();
    int expo = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t used = 0;
        try {
            expo = std::stoi(std::string(s.substr(i + 1)), &used);
        } catch (const std::exception&) {
            throw fail();
        }
        i += 1 + used;
    }
    if (i != s.size()) throw fail();
    double approx;
    try {
        approx = std::stod(std::string(s));
    } catch (const std::exception&) {
        throw fail();
    }
    if (!std::isfinite(approx)) throw fail();
    int p10 = expo - scale;
    if (overflow || p10 > 18 || p10 < -18) return inexact(approx);
    std::int64_t pow10 = 1;
    for (int k = 0; k < std::abs(p10); ++k) pow10 *= 10;
    std::int64_t num = neg ? -mant : mant;
    if (p10 >= 0) {
        std::int64_t r;
        if (__builtin_mul_overflow(num, pow10, &r)) return inexact(approx);
        return Scalar(Rat(r));
    }
    return Scalar(Rat(num, pow10));
}

inline std::string Scalar::str() const {
    if (exact_) {
        if (exact_->denominator() == 1) return std::to_string(exact_->numerator());
        return std::to_string(exact_->numerator()) + "/" + std::to_string(exact_->denominator());
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", approx_);
    return buf;
}

/// p or q: a positive real or infinity
class ExtendedExponent {
  public:
    ExtendedExponent() : ExtendedExponent(Scalar(1)) {}
    explicit ExtendedExponent(Scalar v) : v_(v) {
        if (v_ <= Scalar(0) || v_.value() <= 0.0) throw domain_error("exponent must be positive, got " + v_.str());
    }
    /// std::numeric_limits<double>::infinity() maps to Infinity
    ExtendedExponent(double v) {
        if (std::isinf(v) && v > 0) {
            inf_ = true;
            return;
        }
        if (!(v > 0.0) || std::isnan(v)) throw domain_error("exponent must be positive or infinite");
        v_ = Scalar(v);
    }
    static ExtendedExponent infinity() {
        ExtendedExponent e;
        e.inf_ = true;
        return e;
    }
    /// "inf", "infinity", "∞" or any Scalar::parse input
    static ExtendedExponent parse(std::string_view s) {
        if (s == "inf" || s == "Inf" || s == "infinity" || s == "Infinity" || s == "∞") return infinity();
        return ExtendedExponent(Scalar::parse(s));
    }

    bool is_infinite() const { return inf_; }
    /// finite value; throws for Infinity
    const Scalar& finite() const {
        if (inf_) throw std::logic_error("exponent is infinite");
        return v_;
    }
    double value() const { return inf_ ? std::numeric_limits<double>::infinity() : v_.value(); }
    Scalar reciprocal() const { return inf_ ? Scalar(0) : Scalar(1) / v_; }

    friend int compare(const ExtendedExponent& a, const ExtendedExponent& b) {
        if (a.inf_ || b.inf_) return int(a.inf_) - int(b.inf_);
        return compare(a.v_, b.v_);
    }
    friend bool operator==(const ExtendedExponent& a, const ExtendedExponent& b) { return compare(a, b) == 0; }
    friend bool operator<(const ExtendedExponent& a, const ExtendedExponent& b) { return compare(a, b) < 0; }
    friend bool operator<=(const ExtendedExponent& a, const ExtendedExponent& b) { return compare(a, b) <= 0; }
    friend bool operator>(const ExtendedExponent& a, const ExtendedExponent& b) { return compare(a, b) > 0; }
    friend bool operator>=(const ExtendedExponent& a, const ExtendedExponent& b) { return compare(a, b) >= 0; }

    std::string str() const { return inf_ ? "inf" : v_.str(); }

  private:
    bool inf_ = false;
    Scalar v_{1};
};

inline const ExtendedExponent kInf = ExtendedExponent::infinity();

}  // namespace besov
