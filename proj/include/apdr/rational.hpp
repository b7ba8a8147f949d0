#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apdr
{

class malformed_rational : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class zero_denominator : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Exact arbitrary-precision rational, always kept in canonical form
// (reduced, positive denominator).
class Rational
{
    mpq_class _value;

    explicit Rational( mpq_class value );

public:
    Rational() = default;
    Rational( long value );  // NOLINT(google-explicit-constructor)
    Rational( int value ) : Rational( static_cast< long >( value ) ) {}  // NOLINT
    Rational( long numerator, long denominator );

    // Accepts "p", "p/q" and terminating decimals "a.b" (with optional sign).
    static Rational parse( std::string_view text );

    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::string numerator_str() const;
    [[nodiscard]] std::string denominator_str() const;

    [[nodiscard]] int sign() const { return sgn( _value ); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const;

    [[nodiscard]] const mpq_class& raw() const { return _value; }

    Rational& operator+=( const Rational& rhs );
    Rational& operator-=( const Rational& rhs );
    Rational& operator*=( const Rational& rhs );
    Rational& operator/=( const Rational& rhs );

    friend Rational operator+( Rational lhs, const Rational& rhs ) { return lhs += rhs; }
    friend Rational operator-( Rational lhs, const Rational& rhs ) { return lhs -= rhs; }
    friend Rational operator*( Rational lhs, const Rational& rhs ) { return lhs *= rhs; }
    friend Rational operator/( Rational lhs, const Rational& rhs ) { return lhs /= rhs; }
    friend Rational operator-( const Rational& value ) { return Rational{ mpq_class( -value._value ) }; }

    friend bool operator==( const Rational& lhs, const Rational& rhs )
    {
        return lhs._value == rhs._value;
    }

    friend std::strong_ordering operator<=>( const Rational& lhs, const Rational& rhs )
    {
        const int c = cmp( lhs._value, rhs._value );
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<( std::ostream& os, const Rational& value );

    [[nodiscard]] std::size_t hash() const;
};

Rational abs( const Rational& value );

// ⌈u⌉ in the 0/1 sense: 0 stays 0, anything positive becomes 1.
Rational ceil01( const Rational& value );

} // namespace apdr

template<>
struct std::hash< apdr::Rational >
{
    std::size_t operator()( const apdr::Rational& value ) const { return value.hash(); }
};

namespace Eigen
{

template<>
struct NumTraits< apdr::Rational > : GenericNumTraits< apdr::Rational >
{
    using Real = apdr::Rational;
    using NonInteger = apdr::Rational;
    using Nested = apdr::Rational;
    using Literal = apdr::Rational;

    enum
    {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };

    static inline Real epsilon() { return Real{ 0 }; }
    static inline Real dummy_precision() { return Real{ 0 }; }
    static inline int digits10() { return 0; }
};

} // namespace Eigen
