#include "apdr/io.hpp"

#include "brute.hpp"

#include <doctest.h>

using namespace apdr;
using namespace apdr::testing;

TEST_CASE( "transition system files" )
{
    const auto ts = parse_ts( slurp( model_path( "fig1.ts" ) ) );
    CHECK( ts.num_states == 7 );
    CHECK( ts.initial == StateSet( 7, { 0 } ) );
    CHECK( ts.safe == StateSet::prefix( 7, 5 ) );

    std::size_t edges = 0;
    for ( const auto& succ : ts.delta )
        edges += succ.count();
    CHECK( edges == 11 );

    const auto dead = parse_ts( "ts\nstates 1\ninitial 0\nsafe 0\n" );
    CHECK( dead.delta[ 0 ].empty() );

    // comments and odd spacing
    const auto spaced = parse_ts( "# header comment\n  ts  \n\nstates   2 # two\ninitial 0\n\tsafe 0 1\nedge 0    1\n" );
    CHECK( spaced.delta[ 0 ] == StateSet( 2, { 1 } ) );
}

TEST_CASE( "transition system errors" )
{
    CHECK_THROWS_AS( parse_ts( "ts\nstates 7\ninitial 0\nsafe 0\nedge 0 9\n" ), index_out_of_range );
    CHECK_THROWS_AS( parse_ts( "ts\nstates 2\ninitial 0\nsafe 0\nedge 0\n" ), parse_error );
    CHECK_THROWS_AS( parse_ts( "mdp\nstates 2\n" ), parse_error );
    CHECK_THROWS_AS( parse_ts( "ts\nstates 0\n" ), parse_error );
    CHECK_THROWS_AS( parse_ts( "ts\nstates 2\ninitial 0\n" ), parse_error );
    CHECK_THROWS_AS( parse_ts( "ts\nstates 2\ninitial 0\nsafe 0\nfoo 1\n" ), parse_error );
    CHECK_THROWS_AS( parse_ts( "ts\nstates 2\ninitial x\nsafe 0\n" ), parse_error );
    CHECK_THROWS_AS( parse_ts( "ts\nstates 2\ninitial 0\ninitial 1\nsafe 0\n" ), parse_error );

    try
    {
        (void)parse_ts( "ts\nstates 2\n# note\ninitial 0\nsafe 0\nedge 0 5\n" );
        FAIL( "expected a parse error" );
    }
    catch ( const parse_error& e )
    {
        CHECK( e.line() == 6 );
    }
}

TEST_CASE( "MDP files" )
{
    const auto m3 = parse_mdp( slurp( model_path( "example3.mdp" ) ) );
    CHECK( m3.num_states() == 4 );
    CHECK( m3.lambda() == Rational( 1, 4 ) );
    CHECK( m3.actions( 0 ).size() == 2 );
    CHECK( m3.actions( 2 ).front().label == "b" );
    CHECK( format_frame( bellman( m3, constant_frame( 4, Rational{ 0 } ) ) ) == "[0,0,0,1]" );
    CHECK( format_frame( bellman( m3, parse_frame( "[0,0,0,1]" ) ) ) == "[0,1/2,0,1]" );

    const auto decimal = parse_mdp( "mdp\nstates 1\ninitial 0\nbad 0\nlambda 0.5\naction 0 a 0:1\n" );
    CHECK( decimal.lambda() == Rational( 1, 2 ) );
}

TEST_CASE( "MDP errors" )
{
    const std::string head = "mdp\nstates 3\ninitial 0\nbad 2\nlambda 1/2\n";
    const std::string tail = "action 1 a 1:1\naction 2 a 2:1\n";

    CHECK_THROWS_AS( parse_mdp( head + "action 0 a 1:1/2 2:1/3\n" + tail ), probability_sum_mismatch );
    CHECK_THROWS_AS( parse_mdp( head + tail ), no_action_for_state );
    CHECK_THROWS_AS( parse_mdp( head + "action 0 a 7:1\n" + tail ), index_out_of_range );
    CHECK_THROWS_AS( parse_mdp( head + "action 0 a 1:1/2 1:1/2\n" + tail ), parse_error );
    CHECK_THROWS_AS( parse_mdp( head + "action 0 a 1:0 2:1\n" + tail ), parse_error );
    CHECK_THROWS_AS( parse_mdp( head + "action 0 a 1:x\n" + tail ), parse_error );
    CHECK_THROWS_AS( parse_mdp( head + "action 0 a 1:1\naction 0 a 2:1\n" + tail ), parse_error );
    CHECK_THROWS_AS( parse_mdp( "mdp\nstates 1\ninitial 0\nbad 0\nlambda 3/2\naction 0 a 0:1\n" ), parse_error );
    CHECK_THROWS_AS( parse_mdp( "mdp\nstates 1\ninitial 0\nbad 0\naction 0 a 0:1\n" ), parse_error );
}

TEST_CASE( "round trips of the bundled models" )
{
    for ( const char* name : { "fig1.ts", "example3.mdp", "example6.mdp" } )
    {
        const auto model = load_model( model_path( name ) );
        if ( const auto* ts = std::get_if< TransitionSystem >( &model ) )
        {
            CHECK( parse_ts( serialize_ts( *ts ) ) == *ts );
            CHECK( serialize_ts( parse_ts( serialize_ts( *ts ) ) ) == serialize_ts( *ts ) );
        }
        else
        {
            const auto& m = std::get< Mdp >( model );
            CHECK( parse_mdp( serialize_mdp( m ) ) == m );
        }
    }

    CHECK( serialize_mdp( parse_mdp( slurp( model_path( "example6.mdp" ) ) ) )
           == "mdp\nstates 4\ninitial 0\nbad 3\nlambda 2/5\n"
              "action 0 a 0:1\naction 0 b 1:1/2 2:1/2\naction 1 a 0:1/3 3:2/3\naction 2 a 2:1\naction 3 a 3:1\n" );

    CHECK_THROWS_AS( parse_model( "graph\n" ), parse_error );
    CHECK_THROWS_AS( parse_model( "# nothing\n" ), parse_error );
    CHECK_THROWS( load_model( "/nonexistent/model.ts" ) );
}
