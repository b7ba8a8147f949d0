#include "apdr/oracle.hpp"
#include "apdr/rational.hpp"

#include <doctest.h>

#include <sstream>
#include <unordered_set>

using apdr::Rational;

TEST_CASE( "parse and print canonical forms" )
{
    CHECK( Rational::parse( "2/5" ).str() == "2/5" );
    CHECK( Rational::parse( "4/10" ).str() == "2/5" );
    CHECK( Rational::parse( "-3/6" ).str() == "-1/2" );
    CHECK( Rational::parse( "3/-6" ).str() == "-1/2" );
    CHECK( Rational::parse( "7" ).str() == "7" );
    CHECK( Rational::parse( " 0/9 " ).str() == "0" );
    CHECK( Rational::parse( "0.25" ) == Rational( 1, 4 ) );
    CHECK( Rational::parse( "-1.5" ) == Rational( -3, 2 ) );
    CHECK( Rational( 6, 4 ).numerator_str() == "3" );
    CHECK( Rational( 6, 4 ).denominator_str() == "2" );
}

TEST_CASE( "malformed input is rejected" )
{
    CHECK_THROWS_AS( Rational::parse( "" ), apdr::malformed_rational );
    CHECK_THROWS_AS( Rational::parse( "1/" ), apdr::malformed_rational );
    CHECK_THROWS_AS( Rational::parse( "a/2" ), apdr::malformed_rational );
    CHECK_THROWS_AS( Rational::parse( "1/2/3" ), apdr::malformed_rational );
    CHECK_THROWS_AS( Rational::parse( "1e3" ), apdr::malformed_rational );
    CHECK_THROWS_AS( Rational::parse( "1/0" ), apdr::zero_denominator );
    CHECK_THROWS_AS( Rational( 1, 0 ), apdr::zero_denominator );
}

TEST_CASE( "arithmetic is exact" )
{
    const Rational third( 1, 3 );
    CHECK( third + third + third == Rational{ 1 } );
    CHECK( Rational( 1, 2 ) - Rational( 1, 3 ) == Rational( 1, 6 ) );
    CHECK( Rational( 2, 3 ) * Rational( 9, 4 ) == Rational( 3, 2 ) );
    CHECK( Rational( 2, 3 ) / Rational( 4, 9 ) == Rational( 3, 2 ) );
    CHECK( -Rational( 2, 3 ) == Rational( -2, 3 ) );
    CHECK_THROWS_AS( Rational{ 1 } / Rational{ 0 }, apdr::zero_denominator );

    // a long chain that would drift in floating point
    Rational acc{ 0 };
    for ( int i = 1; i <= 60; ++i )
        acc += Rational( 1, i * ( i + 1 ) );
    CHECK( acc == Rational( 60, 61 ) );
}

TEST_CASE( "ordering and helpers" )
{
    CHECK( Rational( 1, 3 ) < Rational( 1, 2 ) );
    CHECK( Rational( -1, 2 ) < Rational{ 0 } );
    CHECK( Rational( 2, 4 ) == Rational( 1, 2 ) );
    CHECK( Rational( 3, 1 ).is_integer() );
    CHECK_FALSE( Rational( 3, 2 ).is_integer() );
    CHECK( apdr::abs( Rational( -2, 7 ) ) == Rational( 2, 7 ) );
    CHECK( apdr::ceil01( Rational{ 0 } ) == Rational{ 0 } );
    CHECK( apdr::ceil01( Rational( 1, 100 ) ) == Rational{ 1 } );
    CHECK( apdr::ceil01( Rational{ 1 } ) == Rational{ 1 } );

    std::ostringstream os;
    os << Rational( -4, 6 );
    CHECK( os.str() == "-2/3" );

    std::unordered_set< Rational > set{ Rational( 1, 2 ), Rational( 2, 4 ), Rational( 1, 3 ) };
    CHECK( set.size() == 2 );
}

TEST_CASE( "Eigen vectors over rationals" )
{
    apdr::Frame v( 3 );
    v << Rational( 1, 2 ), Rational( 1, 3 ), Rational( 1, 6 );
    CHECK( v.sum() == Rational{ 1 } );
    CHECK( Rational{ v.dot( v ) } == Rational( 7, 18 ) );
    CHECK( v.cwiseMin( apdr::constant_frame( 3, Rational( 1, 4 ) ) )( 0 ) == Rational( 1, 4 ) );
    CHECK( apdr::format_frame( v ) == "[1/2,1/3,1/6]" );
    CHECK( apdr::frames_equal( apdr::parse_frame( "[1/2, 1/3,1/6]" ), v ) );
}

TEST_CASE( "gauss_solve works for exact and floating scalars" )
{
    apdr::Matrix< Rational > a( 2, 2 );
    a << Rational( 0 ), Rational( 1 ), Rational( 2 ), Rational( 1 );
    apdr::Vector< Rational > b( 2 );
    b << Rational( 1 ), Rational( 3 );
    const auto x = apdr::gauss_solve< Rational >( a, b );
    CHECK( x( 0 ) == Rational{ 1 } );
    CHECK( x( 1 ) == Rational{ 1 } );

    Eigen::Matrix2d ad;
    ad << 0, 1, 2, 1;
    const auto xd = apdr::gauss_solve< double >( ad, Eigen::Vector2d( 1, 3 ) );
    CHECK( xd( 0 ) == doctest::Approx( 1.0 ) );

    apdr::Matrix< Rational > singular = apdr::Matrix< Rational >::Zero( 2, 2 );
    CHECK_THROWS_AS( apdr::gauss_solve< Rational >( singular, b ), apdr::singular_system );
}
