#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace itpn {

using Rational = mpq_class;

/// Parses "3", "-2", "5/2" or "2.75" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// A rational value or +infinity.
///
/// Upper bounds of firing intervals and every difference bound use this
/// type. Infinity absorbs addition; negating infinity is a contract error.
class Bound {
public:
    Bound() = default;
    Bound(const Rational& v) : value_(v) {}  // NOLINT
    Bound(long v) : value_(v) {}              // NOLINT
    Bound(int v) : value_(v) {}               // NOLINT

    static Bound infinity() {
        Bound b;
        b.infinite_ = true;
        return b;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// The finite value; throws ContractError on infinity.
    const Rational& value() const;

    Bound operator-() const;
    friend Bound operator+(const Bound& a, const Bound& b);
    friend Bound operator-(const Bound& a, const Bound& b);

    friend bool operator==(const Bound& a, const Bound& b);
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

    std::string str() const;

private:
    Rational value_{0};
    bool infinite_ = false;
};

inline Bound min(const Bound& a, const Bound& b) { return b < a ? b : a; }
inline Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Bound& b);

}  // namespace itpn
