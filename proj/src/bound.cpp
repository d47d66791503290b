#include "itpn/bound.hpp"

#include "itpn/errors.hpp"

#include <ostream>

namespace itpn {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty number");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("malformed number '" + s + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed number '" + s + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative || (!whole.empty() && whole[0] == '+'))
        whole.erase(0, 1);
    if (whole.empty())
        whole = "0";
    if (whole.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed number '" + s + "'");
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

const Rational& Bound::value() const
{
    if (infinite_)
        throw ContractError("finite value requested from an infinite bound");
    return value_;
}

Bound Bound::operator-() const
{
    if (infinite_)
        throw ContractError("negation of +inf");
    return Bound(Rational(-value_));
}

Bound operator+(const Bound& a, const Bound& b)
{
    if (a.infinite_ || b.infinite_)
        return Bound::infinity();
    return Bound(Rational(a.value_ + b.value_));
}

Bound operator-(const Bound& a, const Bound& b)
{
    return a + (-b);
}

bool operator==(const Bound& a, const Bound& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b)
{
    if (a.infinite_ || b.infinite_) {
        if (a.infinite_ == b.infinite_)
            return std::strong_ordering::equal;
        return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = cmp(a.value_, b.value_);
    if (c < 0)
        return std::strong_ordering::less;
    if (c > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Bound::str() const
{
    return infinite_ ? std::string("inf") : to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Bound& b)
{
    return os << b.str();
}

}  // namespace itpn
