#pragma once

#include "apdr/mdp.hpp"
#include "apdr/ts.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace apdr
{

// Least fixed point of X ↦ F(X) ∪ I.
StateSet ts_reach( const TransitionSystem& ts );

struct TsOracleResult
{
    StateSet reachable;
    bool safe = false;
};

TsOracleResult ts_oracle( const TransitionSystem& ts );

class enumeration_cap_exceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class singular_system : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Solves A x = b by Gaussian elimination with a nonzero pivot search.
// Intended for exact scalars; throws singular_system when A is singular.
template< typename Scalar >
Vector< Scalar > gauss_solve( Matrix< Scalar > a, Vector< Scalar > b )
{
    const Eigen::Index n = a.rows();
    if ( a.cols() != n || b.size() != n )
        throw std::invalid_argument( "gauss_solve needs a square system" );

    for ( Eigen::Index col = 0; col < n; ++col )
    {
        Eigen::Index pivot = col;
        while ( pivot < n && a( pivot, col ) == Scalar( 0 ) )
            ++pivot;
        if ( pivot == n )
            throw singular_system( "singular linear system" );

        if ( pivot != col )
        {
            a.row( pivot ).swap( a.row( col ) );
            std::swap( b( pivot ), b( col ) );
        }

        for ( Eigen::Index row = col + 1; row < n; ++row )
        {
            if ( a( row, col ) == Scalar( 0 ) )
                continue;
            const Scalar factor = a( row, col ) / a( col, col );
            for ( Eigen::Index c = col; c < n; ++c )
                a( row, c ) -= factor * a( col, c );
            b( row ) -= factor * b( col );
        }
    }

    Vector< Scalar > x( n );
    for ( Eigen::Index row = n; row-- > 0; )
    {
        Scalar acc = b( row );
        for ( Eigen::Index c = row + 1; c < n; ++c )
            acc -= a( row, c ) * x( c );
        x( row ) = acc / a( row, row );
    }
    return x;
}

// Reachability probabilities of β under a fixed memoryless scheduler.
Frame scheduler_reach( const Mdp& mdp, const Scheduler& alpha );

struct MdpOracleResult
{
    Rational max_prob;
    bool verdict = false;  // max_prob <= λ
    Scheduler witness_scheduler;
    Frame values;          // pointwise values of the witness scheduler
};

MdpOracleResult mdp_max_reach_exact( const Mdp& mdp, std::size_t cap = 1000000 );

// `iterations` rounds of b from 0⃗, exactly.
Frame value_iteration( const Mdp& mdp, std::size_t iterations );

TransitionSystem random_ts( std::uint64_t seed, std::size_t max_states );

// λ comes from lambda_grid of the exact answer, strictly inside (0, 1).
Mdp random_mdp( std::uint64_t seed, std::size_t max_states, std::size_t max_actions, long denom_bound );

// Thresholds straddling the value p: some below (when p > 0), p itself, and
// some above (when p < 1). All lie in [0, 1].
std::vector< Rational > lambda_grid( const Rational& p );

} // namespace apdr
