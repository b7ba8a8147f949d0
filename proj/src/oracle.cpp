#include "apdr/oracle.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace apdr
{

StateSet ts_reach( const TransitionSystem& ts )
{
    StateSet seen = ts.initial;
    std::deque< std::size_t > work;
    for ( const auto s : ts.initial.members() )
        work.push_back( s );

    while ( !work.empty() )
    {
        const auto s = work.front();
        work.pop_front();
        for ( const auto t : ts.delta[ s ].members() )
        {
            if ( seen.contains( t ) )
                continue;
            seen.insert( t );
            work.push_back( t );
        }
    }
    return seen;
}

TsOracleResult ts_oracle( const TransitionSystem& ts )
{
    auto reachable = ts_reach( ts );
    const bool safe = reachable.subset_of( ts.safe );
    return { std::move( reachable ), safe };
}

Frame scheduler_reach( const Mdp& mdp, const Scheduler& alpha )
{
    const auto n = mdp.num_states();

    const auto& dist = [ & ]( std::size_t s ) -> const Frame& { return mdp.actions( s ).at( alpha.at( s ) ).distribution; };

    // states with positive probability of reaching β under α
    std::vector< bool > live( n, false );
    for ( std::size_t s = 0; s < n; ++s )
        live[ s ] = mdp.is_bad( s );

    for ( bool changed = true; changed; )
    {
        changed = false;
        for ( std::size_t s = 0; s < n; ++s )
        {
            if ( live[ s ] )
                continue;
            const auto& d = dist( s );
            for ( std::size_t t = 0; t < n; ++t )
            {
                if ( live[ t ] && d( static_cast< Eigen::Index >( t ) ).sign() > 0 )
                {
                    live[ s ] = true;
                    changed = true;
                    break;
                }
            }
        }
    }

    std::vector< std::size_t > unknowns;
    std::vector< Eigen::Index > slot( n, -1 );
    for ( std::size_t s = 0; s < n; ++s )
    {
        if ( live[ s ] && !mdp.is_bad( s ) )
        {
            slot[ s ] = static_cast< Eigen::Index >( unknowns.size() );
            unknowns.push_back( s );
        }
    }

    Frame out = constant_frame( mdp.size(), Rational{ 0 } );
    for ( std::size_t s = 0; s < n; ++s )
        if ( mdp.is_bad( s ) )
            out( static_cast< Eigen::Index >( s ) ) = Rational{ 1 };

    if ( unknowns.empty() )
        return out;

    const auto m = static_cast< Eigen::Index >( unknowns.size() );
    Matrix< Rational > a = Matrix< Rational >::Identity( m, m );
    Vector< Rational > b = Vector< Rational >::Zero( m );

    for ( Eigen::Index row = 0; row < m; ++row )
    {
        const auto& d = dist( unknowns[ static_cast< std::size_t >( row ) ] );
        for ( std::size_t t = 0; t < n; ++t )
        {
            const auto& p = d( static_cast< Eigen::Index >( t ) );
            if ( p.is_zero() )
                continue;
            if ( mdp.is_bad( t ) )
                b( row ) += p;
            else if ( slot[ t ] >= 0 )
                a( row, slot[ t ] ) -= p;
        }
    }

    const auto x = gauss_solve< Rational >( std::move( a ), std::move( b ) );
    for ( Eigen::Index i = 0; i < m; ++i )
        out( static_cast< Eigen::Index >( unknowns[ static_cast< std::size_t >( i ) ] ) ) = x( i );
    return out;
}

MdpOracleResult mdp_max_reach_exact( const Mdp& mdp, std::size_t cap )
{
    if ( mdp.scheduler_count( cap ) > cap )
        throw enumeration_cap_exceeded( "more than " + std::to_string( cap ) + " memoryless schedulers" );

    const auto init = static_cast< Eigen::Index >( mdp.initial() );
    MdpOracleResult best;
    bool first = true;

    for_each_scheduler( mdp, [ & ]( const Scheduler& alpha ) {
        auto values = scheduler_reach( mdp, alpha );
        if ( first || values( init ) > best.max_prob )
        {
            best.max_prob = values( init );
            best.witness_scheduler = alpha;
            best.values = std::move( values );
            first = false;
        }
        return true;
    } );

    best.verdict = best.max_prob <= mdp.lambda();
    return best;
}

Frame value_iteration( const Mdp& mdp, std::size_t iterations )
{
    Frame d = constant_frame( mdp.size(), Rational{ 0 } );
    for ( std::size_t i = 0; i < iterations; ++i )
        d = bellman( mdp, d );
    return d;
}

namespace
{

std::size_t uniform( std::mt19937_64& rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution< std::size_t >( lo, hi )( rng );
}

// Splits `total` into `parts` positive integers.
std::vector< long > random_composition( std::mt19937_64& rng, long total, std::size_t parts )
{
    std::vector< long > cuts;
    std::vector< long > pool;
    for ( long c = 1; c < total; ++c )
        pool.push_back( c );
    std::shuffle( pool.begin(), pool.end(), rng );
    cuts.assign( pool.begin(), pool.begin() + static_cast< std::ptrdiff_t >( parts - 1 ) );
    std::sort( cuts.begin(), cuts.end() );

    std::vector< long > out;
    long prev = 0;
    for ( const auto c : cuts )
    {
        out.push_back( c - prev );
        prev = c;
    }
    out.push_back( total - prev );
    return out;
}

} // namespace

TransitionSystem random_ts( std::uint64_t seed, std::size_t max_states )
{
    std::mt19937_64 rng( seed );
    const auto n = uniform( rng, 1, std::max< std::size_t >( max_states, 1 ) );
    std::bernoulli_distribution edge( 0.25 );
    std::bernoulli_distribution init( 0.2 );
    std::bernoulli_distribution safe( 0.85 );

    StateSet initial( n );
    StateSet safe_states( n );
    std::vector< StateSet > delta( n, StateSet( n ) );

    initial.insert( uniform( rng, 0, n - 1 ) );
    for ( std::size_t s = 0; s < n; ++s )
    {
        if ( init( rng ) )
            initial.insert( s );
        if ( safe( rng ) )
            safe_states.insert( s );
        for ( std::size_t t = 0; t < n; ++t )
            if ( edge( rng ) )
                delta[ s ].insert( t );
    }

    return TransitionSystem( n, std::move( initial ), std::move( delta ), std::move( safe_states ) );
}

Mdp random_mdp( std::uint64_t seed, std::size_t max_states, std::size_t max_actions, long denom_bound )
{
    if ( max_states == 0 || max_actions == 0 || denom_bound < 1 )
        throw std::invalid_argument( "random_mdp parameters must be positive" );

    std::mt19937_64 rng( seed );
    const auto n = uniform( rng, std::min< std::size_t >( 2, max_states ), max_states );

    StateSet bad( n );
    bad.insert( uniform( rng, 0, n - 1 ) );
    std::bernoulli_distribution extra_bad( 0.15 );
    for ( std::size_t s = 0; s < n; ++s )
        if ( extra_bad( rng ) )
            bad.insert( s );

    std::vector< std::vector< Action > > actions( n );
    for ( std::size_t s = 0; s < n; ++s )
    {
        const auto count = uniform( rng, 1, max_actions );
        for ( std::size_t a = 0; a < count; ++a )
        {
            const auto denom = static_cast< long >( uniform( rng, 1, static_cast< std::size_t >( denom_bound ) ) );
            const auto support = uniform( rng, 1, std::min< std::size_t >( n, static_cast< std::size_t >( denom ) ) );

            std::vector< std::size_t > targets( n );
            for ( std::size_t t = 0; t < n; ++t )
                targets[ t ] = t;
            std::shuffle( targets.begin(), targets.end(), rng );

            Frame dist = constant_frame( static_cast< Eigen::Index >( n ), Rational{ 0 } );
            const auto weights = random_composition( rng, denom, support );
            for ( std::size_t i = 0; i < support; ++i )
                dist( static_cast< Eigen::Index >( targets[ i ] ) ) = Rational( weights[ i ], denom );

            actions[ s ].push_back( { std::string( 1, static_cast< char >( 'a' + a ) ), std::move( dist ) } );
        }
    }

    const auto initial = uniform( rng, 0, n - 1 );
    Mdp draft( n, std::move( actions ), initial, std::move( bad ), Rational{ 1, 2 } );

    std::vector< Rational > inside;
    for ( auto& l : lambda_grid( mdp_max_reach_exact( draft ).max_prob ) )
        if ( l.sign() > 0 && l < Rational{ 1 } )
            inside.push_back( std::move( l ) );

    return draft.with_lambda( inside.at( uniform( rng, 0, inside.size() - 1 ) ) );
}

std::vector< Rational > lambda_grid( const Rational& p )
{
    std::vector< Rational > out{ p, Rational{ 1, 4 }, Rational{ 1, 2 }, Rational{ 3, 4 } };
    if ( p.sign() > 0 )
        out.push_back( p / Rational{ 2 } );
    if ( p < Rational{ 1 } )
        out.push_back( ( p + Rational{ 1 } ) / Rational{ 2 } );

    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

} // namespace apdr
