#include "apdr/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

namespace apdr
{

namespace
{

bool all_digits( std::string_view text )
{
    if ( text.empty() )
        return false;

    for ( const char c : text )
        if ( !std::isdigit( static_cast< unsigned char >( c ) ) )
            return false;

    return true;
}

mpz_class parse_integer( std::string_view text, std::string_view whole )
{
    bool negative = false;

    if ( !text.empty() && ( text.front() == '-' || text.front() == '+' ) )
    {
        negative = text.front() == '-';
        text.remove_prefix( 1 );
    }

    if ( !all_digits( text ) )
        throw malformed_rational( "malformed rational: '" + std::string( whole ) + "'" );

    mpz_class value( std::string( text ), 10 );
    return negative ? mpz_class( -value ) : value;
}

} // namespace

Rational::Rational( mpq_class value ) : _value{ std::move( value ) }
{
    _value.canonicalize();
}

Rational::Rational( long value ) : _value{ value } {}

Rational::Rational( long numerator, long denominator )
{
    if ( denominator == 0 )
        throw zero_denominator( "zero denominator" );

    _value = mpq_class( numerator, denominator );
    _value.canonicalize();
}

Rational Rational::parse( std::string_view text )
{
    while ( !text.empty() && std::isspace( static_cast< unsigned char >( text.front() ) ) )
        text.remove_prefix( 1 );
    while ( !text.empty() && std::isspace( static_cast< unsigned char >( text.back() ) ) )
        text.remove_suffix( 1 );

    if ( const auto slash = text.find( '/' ); slash != std::string_view::npos )
    {
        const auto num = parse_integer( text.substr( 0, slash ), text );
        const auto den = parse_integer( text.substr( slash + 1 ), text );

        if ( den == 0 )
            throw zero_denominator( "zero denominator in '" + std::string( text ) + "'" );

        return Rational{ mpq_class( num, den ) };
    }

    if ( const auto dot = text.find( '.' ); dot != std::string_view::npos )
    {
        auto int_part = text.substr( 0, dot );
        const auto frac_part = text.substr( dot + 1 );
        bool negative = false;

        if ( !int_part.empty() && ( int_part.front() == '-' || int_part.front() == '+' ) )
        {
            negative = int_part.front() == '-';
            int_part.remove_prefix( 1 );
        }

        if ( !all_digits( frac_part ) || ( !int_part.empty() && !all_digits( int_part ) ) )
            throw malformed_rational( "malformed rational: '" + std::string( text ) + "'" );

        mpz_class scale = 1;
        for ( std::size_t i = 0; i < frac_part.size(); ++i )
            scale *= 10;

        const mpz_class whole = int_part.empty() ? mpz_class( 0 ) : mpz_class( std::string( int_part ), 10 );
        mpz_class num = whole * scale + mpz_class( std::string( frac_part ), 10 );

        if ( negative )
            num = -num;

        return Rational{ mpq_class( num, scale ) };
    }

    return Rational{ mpq_class( parse_integer( text, text ) ) };
}

std::string Rational::str() const
{
    if ( is_integer() )
        return _value.get_num().get_str();

    return _value.get_num().get_str() + "/" + _value.get_den().get_str();
}

std::string Rational::numerator_str() const { return _value.get_num().get_str(); }

std::string Rational::denominator_str() const { return _value.get_den().get_str(); }

bool Rational::is_integer() const { return _value.get_den() == 1; }

Rational& Rational::operator+=( const Rational& rhs )
{
    _value += rhs._value;
    return *this;
}

Rational& Rational::operator-=( const Rational& rhs )
{
    _value -= rhs._value;
    return *this;
}

Rational& Rational::operator*=( const Rational& rhs )
{
    _value *= rhs._value;
    return *this;
}

Rational& Rational::operator/=( const Rational& rhs )
{
    if ( rhs.is_zero() )
        throw zero_denominator( "division by zero" );

    _value /= rhs._value;
    return *this;
}

std::ostream& operator<<( std::ostream& os, const Rational& value ) { return os << value.str(); }

std::size_t Rational::hash() const
{
    const std::hash< std::string > h;
    return h( numerator_str() ) * 31 + h( denominator_str() );
}

Rational abs( const Rational& value ) { return value.sign() < 0 ? -value : value; }

Rational ceil01( const Rational& value ) { return value.is_zero() ? Rational{ 0 } : Rational{ 1 }; }

} // namespace apdr
