// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "apdr/engine.hpp"
#include "apdr/invariants.hpp"
#include "apdr/io.hpp"
#include "apdr/mdp.hpp"
#include "apdr/oracle.hpp"
#include "apdr/ts.hpp"

#include "brute.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace apdr;
using namespace apdr::testing;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since( Clock::time_point start )
{
    return std::chrono::duration< double >( Clock::now() - start ).count();
}

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void fail( const std::string& why )
    {
        if ( !pass )
            detail << "; ";
        else
            detail.str( "" );
        pass = false;
        detail << why;
    }
};

// criterion 9 collects repeats seen anywhere in 1..8
std::size_t g_traces = 0;
std::size_t g_repeats = 0;

template< typename T >
void note_repeats( const T& trace )
{
    ++g_traces;
    if ( detect_repeat( trace ) )
        ++g_repeats;
}

Mdp load_mdp( const char* name ) { return parse_mdp( slurp( model_path( name ) ) ); }

std::string join_states( const TsInstance& inst, const std::vector< StateOf< TsInstance > >& states )
{
    std::string out;
    for ( const auto& s : states )
        out += format_state( inst, s ) + "\n";
    return out;
}

void golden_ts( Outcome& o, ConflictChoice choice, const std::string& stem )
{
    const auto start = Clock::now();
    const auto ts = parse_ts( slurp( model_path( "fig1.ts" ) ) );
    TsInstance inst( ts );
    SimpleTsHeuristic h( inst, choice );
    SolveOptions options;
    options.retain_states = true;
    const auto r = solve( inst, h, options );
    const double secs = seconds_since( start );
    note_repeats( r.trace );

    if ( !r.holds() )
        o.fail( "verdict is not holds" );
    if ( join_states( inst, r.trace.states() ) != slurp( golden_path( stem + ".states" ) ) )
        o.fail( "state sequence differs from golden" );
    if ( format_trace( r.trace ) != slurp( golden_path( stem + ".trace" ) ) )
        o.fail( "trace differs from golden" );
    if ( secs >= 1.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << r.steps() << " steps, " << r.trace.states().size() << " states, " << secs << " s";
}

void criterion1( Outcome& o ) { golden_ts( o, ConflictChoice::initial, "fig1_simple_init" ); }
void criterion2( Outcome& o ) { golden_ts( o, ConflictChoice::final, "fig1_simple_final" ); }

void criterion3( Outcome& o )
{
    const auto start = Clock::now();
    const auto m = load_mdp( "example3.mdp" );
    MdpInstance inst( m );

    const auto hs = []( const char* c, const char* b ) { return HalfSpace( parse_frame( c ), Rational::parse( b ) ); };
    const std::vector< HalfSpace > column{ hs( "[1,0,0,0]", "1/4" ), hs( "[0,1/2,1/2,0]", "1/4" ), hs( "[3/4,0,0,1/4]", "1/4" ),
                                           hs( "[0,3/8,3/8,0]", "0" ), hs( "[9/16,0,0,3/16]", "0" ) };

    std::vector< std::string > decides;
    for ( const auto kind : { MdpHeuristicKind::hcob, MdpHeuristicKind::hco01 } )
    {
        MdpHeuristic h( inst, kind );
        SolveOptions options;
        options.retain_states = true;
        const auto r = solve( inst, h, options );
        note_repeats( r.trace );
        const auto name = h.name();

        if ( !r.refuted() )
        {
            o.fail( name + " did not refute" );
            continue;
        }

        std::size_t last_candidate = 0;
        for ( std::size_t i = 0; i < r.trace.events.size(); ++i )
            if ( r.trace.events[ i ].rule == Rule::candidate )
                last_candidate = i;
        std::size_t count = 0;
        for ( std::size_t i = last_candidate + 1; i < r.trace.events.size(); ++i )
            if ( r.trace.events[ i ].rule == Rule::decide )
                ++count;
        decides.push_back( name + "=" + std::to_string( count ) );
        if ( count != 6 )
            o.fail( name + " performed " + std::to_string( count ) + " Decide steps after the final Candidate, expected 6" );

        // refuting state holds y_1 .. y_{n-1} = F^5 .. F^0
        const auto& neg = std::get< Refuted< HalfSpace > >( r.verdict ).negative;
        if ( neg.size() != column.size() + 1 )
        {
            o.fail( name + " negative sequence has length " + std::to_string( neg.size() ) );
            continue;
        }
        if ( !neg.front().empty() )
            o.fail( name + " final element is not empty" );
        for ( std::size_t i = 0; i < column.size(); ++i )
        {
            const auto& got = neg[ neg.size() - 1 - i ];
            if ( !hs_contains( got, column[ i ] ) || !hs_contains( column[ i ], got ) )
                o.fail( name + " F^" + std::to_string( i ) + " = " + got.str() );
        }
    }

    const double secs = seconds_since( start );
    if ( secs >= 1.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << "decides " << decides[ 0 ] << " " << decides[ 1 ] << ", " << secs << " s";
}

std::vector< std::string > conflict_choices( const Trace< MdpInstance >& trace )
{
    std::vector< std::string > out;
    for ( const auto& e : trace.events )
        if ( e.rule == Rule::conflict && e.chosen )
            out.push_back( *e.chosen );
    return out;
}

void criterion4( Outcome& o )
{
    const auto start = Clock::now();
    const auto m = load_mdp( "example6.mdp" );
    MdpInstance inst( m );

    struct Expect
    {
        MdpHeuristicKind kind;
        std::size_t steps;
        std::vector< std::string > conflicts;
    };
    const std::vector< Expect > expected{ { MdpHeuristicKind::hcob, 8, { "[2/5,0,0,1]", "[2/5,4/5,0,1]" } },
                                          { MdpHeuristicKind::hco01, 14, { "[2/5,0,0,1]", "[2/5,1,0,1]" } } };

    for ( const auto& e : expected )
    {
        MdpHeuristic h( inst, e.kind );
        SolveOptions options;
        options.retain_states = true;
        const auto r = solve( inst, h, options );
        note_repeats( r.trace );

        if ( !r.holds() )
            o.fail( h.name() + " did not hold" );
        if ( r.steps() != e.steps )
            o.fail( h.name() + " took " + std::to_string( r.steps() ) + " steps" );
        const auto got = conflict_choices( r.trace );
        if ( got.size() < e.conflicts.size() || !std::equal( e.conflicts.begin(), e.conflicts.end(), got.begin() ) )
            o.fail( h.name() + " Conflict choices differ" );
    }

    const double secs = seconds_since( start );
    if ( secs >= 1.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << "hcob 8 steps, hco01 14 steps, " << secs << " s";
}

void criterion5( Outcome& o )
{
    const auto start = Clock::now();
    const auto m = load_mdp( "example6.mdp" );
    MdpInstance inst( m );
    MdpHeuristic h( inst, MdpHeuristicKind::simple_init );
    SolveOptions options;
    options.budget = 50;
    options.retain_states = true;
    const auto r = solve( inst, h, options );
    note_repeats( r.trace );

    if ( !r.unknown() )
        o.fail( "verdict is not unknown" );

    const std::vector< std::string > expected{ "[0,0,0,1]",     "[0,2/3,0,1]",      "[1/3,2/3,0,1]",
                                               "[1/3,7/9,0,1]", "[7/18,7/9,0,1]", "[7/18,43/54,0,1]" };

    // distinct last elements below the top, in order of first appearance
    std::vector< std::string > seen;
    const auto top = format_frame( inst.top() );
    for ( const auto& st : r.trace.states() )
    {
        const auto& last = st.x( st.n() - 1 );
        if ( is_sentinel( last ) )
            continue;
        const auto text = format_frame( std::get< Frame >( last ) );
        if ( text != top && std::find( seen.begin(), seen.end(), text ) == seen.end() )
            seen.push_back( text );
    }
    if ( seen.size() < expected.size() || !std::equal( expected.begin(), expected.end(), seen.begin() ) )
    {
        std::string got;
        for ( const auto& s : seen )
            got += s + " ";
        o.fail( "last elements were " + got );
    }

    const double secs = seconds_since( start );
    if ( secs >= 1.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << r.steps() << " steps, " << secs << " s";
}

void ts_suite( Outcome& o, bool chains )
{
    const auto start = Clock::now();
    std::size_t violations = 0;
    std::size_t mismatches = 0;

    for ( std::uint64_t seed = 0; seed < 200; ++seed )
    {
        const auto ts = random_ts( seed, 12 );
        TsInstance inst( ts );
        for ( const auto choice : { ConflictChoice::initial, ConflictChoice::final } )
        {
            SimpleTsHeuristic h( inst, choice );
            SolveOptions options;
            options.retain_states = true;
            const auto r = solve( inst, h, options );
            if ( !chains )
            {
                note_repeats( r.trace );
                const auto report = check_invariants( inst, r.trace );
                violations += report.violations().size();
                for ( const auto& step : report.steps )
                    for ( const auto& c : step.checks )
                        if ( c.status == InvariantStatus::not_checkable )
                            ++violations;
                continue;
            }

            const auto states = r.trace.states();
            for ( std::size_t i = 0; i < states.size(); ++i )
            {
                const auto& st = states[ i ];
                const auto n = st.n();
                const auto g = ts_safe_chain( ts, n );
                for ( std::size_t j = st.k(); j < n && !st.negative_empty(); ++j )
                    mismatches += st.y( j ) != g[ n - 1 - j ];

                if ( ts.safe == StateSet::full( ts.num_states ) )
                    continue;
                if ( choice == ConflictChoice::initial )
                {
                    const auto f = ts_initial_chain( ts, n );
                    for ( std::size_t j = 0; j + 2 <= n; ++j )
                        mismatches += std::get< StateSet >( st.x( j ) ) != f[ j ];
                }
                else if ( i > 0 && r.trace.events[ i - 1 ].rule == Rule::unfold )
                {
                    const auto f = ts_final_chain( ts, n );
                    for ( std::size_t j = 1; j < n; ++j )
                        mismatches += std::get< StateSet >( st.x( j ) ) != f[ n - 1 - j ];
                }
            }
        }
    }

    const double secs = seconds_since( start );
    if ( violations )
        o.fail( std::to_string( violations ) + " invariant violations" );
    if ( mismatches )
        o.fail( std::to_string( mismatches ) + " chain mismatches" );
    if ( !chains && secs >= 30.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << "400 runs, " << secs << " s";
}

void criterion6( Outcome& o ) { ts_suite( o, false ); }
void criterion11( Outcome& o ) { ts_suite( o, true ); }

void criterion7( Outcome& o )
{
    const auto start = Clock::now();
    std::size_t violations = 0;
    std::size_t heuristic_faults = 0;
    const InvariantId checked[] = { InvariantId::I0, InvariantId::I1, InvariantId::I2, InvariantId::P1, InvariantId::P2,
                                    InvariantId::P3, InvariantId::N1, InvariantId::PN };

    for ( std::uint64_t seed = 0; seed < 200; ++seed )
    {
        const auto mdp = random_mdp( seed, 4, 2, 8 );
        MdpInstance inst( mdp );
        for ( const auto kind : { MdpHeuristicKind::hcob, MdpHeuristicKind::hco01 } )
        {
            MdpHeuristic h( inst, kind );
            SolveOptions options;
            options.budget = 1000;
            options.retain_states = true;
            try
            {
                const auto r = solve( inst, h, options );
                note_repeats( r.trace );
                const auto report = check_invariants( inst, r.trace );
                for ( const auto& step : report.steps )
                    for ( const auto id : checked )
                        violations += step.status( id ) == InvariantStatus::violated;
            }
            catch ( const heuristic_violation& )
            {
                ++heuristic_faults;
            }
        }
    }

    const double secs = seconds_since( start );
    if ( violations )
        o.fail( std::to_string( violations ) + " invariant violations" );
    if ( heuristic_faults )
        o.fail( std::to_string( heuristic_faults ) + " illegal Decide/Conflict choices" );
    if ( secs >= 60.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << "400 runs, " << secs << " s";
}

void criterion8( Outcome& o )
{
    const auto start = Clock::now();
    std::size_t runs = 0;
    std::size_t mismatches = 0;
    std::size_t exhausted_negative = 0;
    std::size_t unknown_positive = 0;

    for ( std::uint64_t seed = 0; seed < 200; ++seed )
    {
        const auto base = random_mdp( seed, 4, 2, 8 );
        const auto value = mdp_max_reach_exact( base ).max_prob;
        for ( const auto& lambda : lambda_grid( value ) )
        {
            const auto mdp = base.with_lambda( lambda );
            MdpInstance inst( mdp );
            const bool safe = value <= lambda;
            for ( const auto kind : { MdpHeuristicKind::hcob, MdpHeuristicKind::hco01 } )
            {
                MdpHeuristic h( inst, kind );
                SolveOptions options;
                options.budget = safe ? 2000 : 100000;
                options.retain_states = true;
                const auto r = solve( inst, h, options );
                note_repeats( r.trace );
                ++runs;

                if ( r.unknown() )
                {
                    ( safe ? unknown_positive : exhausted_negative ) += 1;
                    continue;
                }
                if ( r.holds() != safe )
                    ++mismatches;
            }
        }
    }

    const double secs = seconds_since( start );
    if ( mismatches )
        o.fail( std::to_string( mismatches ) + " oracle mismatches" );
    if ( exhausted_negative )
        o.fail( std::to_string( exhausted_negative ) + " negative instances hit the budget" );
    if ( secs >= 300.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << runs << " runs, " << unknown_positive << " positive runs unknown at 2000 steps, " << secs << " s";
}

void criterion9( Outcome& o )
{
    if ( g_repeats )
        o.fail( std::to_string( g_repeats ) + " of " + std::to_string( g_traces ) + " traces repeat a state" );
    else
        o.detail << g_traces << " traces";
}

void criterion10( Outcome& o )
{
    const auto start = Clock::now();
    std::mt19937_64 rng( 2024 );
    std::size_t mismatches = 0;
    std::size_t generators = 0;

    for ( int i = 0; i < 1000; ++i )
    {
        const auto n = std::uniform_int_distribution< Eigen::Index >( 1, 4 )( rng );
        const auto h = random_halfspace( rng, n, 6 );
        if ( h.empty() )
            continue;
        const Frame lower = random_frame( rng, n, 6 ).cwiseMin( random_frame( rng, n, 6 ) );
        const auto fast = enumerate_dominating_generators( h, lower );
        const auto slow = brute_generators( h, lower );
        generators += slow.size();
        bool same = fast.size() == slow.size();
        for ( std::size_t j = 0; same && j < fast.size(); ++j )
            same = frames_equal( fast[ j ], slow[ j ] );
        mismatches += !same;
    }

    const double secs = seconds_since( start );
    if ( mismatches )
        o.fail( std::to_string( mismatches ) + " half-spaces disagree" );
    if ( secs >= 30.0 )
        o.fail( "took " + std::to_string( secs ) + " s" );
    if ( o.pass )
        o.detail << generators << " generators, " << secs << " s";
}

} // namespace

int main()
{
    const std::vector< std::function< void( Outcome& ) > > criteria{ criterion1, criterion2, criterion3, criterion4,
                                                                     criterion5, criterion6, criterion7, criterion8,
                                                                     criterion9, criterion10, criterion11 };
    bool all = true;
    for ( std::size_t i = 0; i < criteria.size(); ++i )
    {
        Outcome o;
        try
        {
            criteria[ i ]( o );
        }
        catch ( const std::exception& e )
        {
            o.fail( std::string( "exception: " ) + e.what() );
        }
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << ": " << ( o.pass ? "PASS" : "FAIL" ) << " (" << o.detail.str() << ")"
                  << std::endl;
    }
    return all ? 0 : 1;
}
