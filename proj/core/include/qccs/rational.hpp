// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qccs {

/// Exact rational arithmetic on 64-bit numerator/denominator, always kept in
/// lowest terms with a positive denominator. Classical values in the calculus
/// are rationals, so channel values and guard evaluation stay exact.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    /// Nearest rational within `tol` of `x`, by continued-fraction convergents
    /// with denominator at most `max_den`. Used to map measurement outcomes
    /// (floating-point eigenvalues) back into the exact classical value domain.
    static std::optional<Rational> from_double(double x, double tol, std::int64_t max_den = 1000000);

    /// Parse "n" or "n/d" (optionally signed). Throws std::invalid_argument.
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
    void normalize();
};

} // namespace qccs
