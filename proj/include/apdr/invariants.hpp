#pragma once

#include "apdr/engine.hpp"

#include <string>
#include <vector>

namespace apdr
{

enum class InvariantId
{
    I0,
    I1,
    I2,
    P1,
    P2,
    P3,
    P3a,
    N1,
    N2,
    PN,
    A1,
    A2,
    A3
};

inline constexpr std::array< InvariantId, 13 > all_invariants = {
    InvariantId::I0, InvariantId::I1,  InvariantId::I2, InvariantId::P1, InvariantId::P2,
    InvariantId::P3, InvariantId::P3a, InvariantId::N1, InvariantId::N2, InvariantId::PN,
    InvariantId::A1, InvariantId::A2,  InvariantId::A3 };

inline const char* invariant_name( InvariantId id )
{
    switch ( id )
    {
    case InvariantId::I0: return "I0";
    case InvariantId::I1: return "I1";
    case InvariantId::I2: return "I2";
    case InvariantId::P1: return "P1";
    case InvariantId::P2: return "P2";
    case InvariantId::P3: return "P3";
    case InvariantId::P3a: return "P3a";
    case InvariantId::N1: return "N1";
    case InvariantId::N2: return "N2";
    case InvariantId::PN: return "PN";
    case InvariantId::A1: return "A1";
    case InvariantId::A2: return "A2";
    case InvariantId::A3: return "A3";
    }
    return "?";
}

enum class InvariantStatus
{
    holds,
    violated,
    not_checkable
};

struct InvariantCheck
{
    InvariantId id;
    InvariantStatus status;
};

struct StepReport
{
    std::size_t state_number = 0;  // 0 is the initial state
    std::vector< InvariantCheck > checks;

    [[nodiscard]] InvariantStatus status( InvariantId id ) const
    {
        for ( const auto& c : checks )
            if ( c.id == id )
                return c.status;
        return InvariantStatus::not_checkable;
    }
};

struct InvariantReport
{
    std::vector< StepReport > steps;

    [[nodiscard]] std::vector< std::string > violations() const
    {
        std::vector< std::string > out;
        for ( const auto& step : steps )
            for ( const auto& c : step.checks )
                if ( c.status == InvariantStatus::violated )
                    out.push_back( "state " + std::to_string( step.state_number ) + ": " + invariant_name( c.id ) );
        return out;
    }

    [[nodiscard]] bool clean() const { return violations().empty(); }
};

namespace detail
{

inline InvariantStatus status_of( bool ok ) { return ok ? InvariantStatus::holds : InvariantStatus::violated; }

// Initial chain (f ⊔ i)^j(⊥) in plain mode. In down mode entry j >= 1 is
// b^{j-1}(⊥), the element generating (b↓ ∪ ⊥↓)^j(∅); entry 0 is unused.
template< ProblemInstance I >
std::vector< typename I::Pos > initial_chain( const I& inst, std::size_t length )
{
    std::vector< typename I::Pos > chain;
    chain.reserve( length );

    if constexpr ( I::mode == Mode::plain )
    {
        chain.push_back( inst.bottom() );
    }
    else
    {
        chain.push_back( inst.bottom() );
        if ( length > 1 )
            chain.push_back( inst.bottom() );
    }

    while ( chain.size() < length )
        chain.push_back( inst.forward( chain.back() ) );

    chain.resize( length, inst.bottom() );
    return chain;
}

} // namespace detail

// Lower half of A1: every ordinary x_j lies above the matching element of
// the initial chain.
template< ProblemInstance I >
bool initial_chain_below( const I& inst, const StateOf< I >& state )
{
    const auto n = state.n();
    const auto lower = detail::initial_chain( inst, n );
    const std::size_t first = I::mode == Mode::plain ? 0 : 1;

    for ( std::size_t j = first; j < n; ++j )
    {
        if ( is_sentinel( state.x( j ) ) || !inst.leq( lower[ j ], detail::ordinary< I >( state.x( j ) ) ) )
            return false;
    }
    return true;
}

template< ProblemInstance I >
StepReport check_state( const I& inst, const StateOf< I >& state )
{
    using detail::ordinary;
    using detail::status_of;

    StepReport report;
    auto& out = report.checks;

    const auto n = state.n();
    const auto k = state.k();

    auto pos_ok = [ & ]( std::size_t j ) { return !is_sentinel( state.x( j ) ); };

    // I0
    if constexpr ( I::mode == Mode::plain )
    {
        const bool ok = pos_ok( 0 ) && inst.leq( ordinary< I >( state.x( 0 ) ), inst.bottom() );
        out.push_back( { InvariantId::I0, status_of( ok ) } );
    }
    else
    {
        out.push_back( { InvariantId::I0, status_of( is_sentinel( state.x( 0 ) ) ) } );
    }

    // The positive chain past x_0 must consist of ordinary elements; a
    // misplaced sentinel is reported under I2.
    bool ordinary_tail = true;
    for ( std::size_t j = 1; j < n; ++j )
        ordinary_tail = ordinary_tail && pos_ok( j );

    out.push_back( { InvariantId::I1, status_of( 1 <= k && k <= n ) } );

    {
        bool ok = ordinary_tail;
        for ( std::size_t j = 0; ok && j + 2 <= n; ++j )
            ok = detail::slot_leq( inst, state.x( j ), state.x( j + 1 ) );
        out.push_back( { InvariantId::I2, status_of( ok ) } );
    }

    if ( !ordinary_tail )
        return report;

    out.push_back( { InvariantId::P1, status_of( inst.leq( inst.initial(), ordinary< I >( state.x( 1 ) ) ) ) } );

    {
        // In down mode n >= 3, so x_{n-2} is ordinary.
        const auto& slot = state.x( n - 2 );
        const bool ok = is_sentinel( slot ) || inst.below_property( ordinary< I >( slot ) );
        out.push_back( { InvariantId::P2, status_of( ok ) } );
    }

    {
        bool ok = true;
        for ( std::size_t j = 0; ok && j + 2 <= n; ++j )
            ok = inst.leq( detail::slot_image( inst, state.x( j ) ), ordinary< I >( state.x( j + 1 ) ) );
        out.push_back( { InvariantId::P3, status_of( ok ) } );
    }

    if constexpr ( AdjointInstance< I > )
    {
        bool ok = true;
        for ( std::size_t j = 0; ok && j + 2 <= n; ++j )
            ok = inst.leq( ordinary< I >( state.x( j ) ), inst.backward( ordinary< I >( state.x( j + 1 ) ) ) );
        out.push_back( { InvariantId::P3a, status_of( ok ) } );
    }
    else
    {
        out.push_back( { InvariantId::P3a, InvariantStatus::not_checkable } );
    }

    out.push_back( { InvariantId::N1, status_of( state.negative_empty() || inst.property_in( state.y( n - 1 ) ) ) } );

    {
        auto status = InvariantStatus::holds;
        for ( std::size_t j = k; j + 2 <= n; ++j )
        {
            const auto r = inst.pullback_within( state.y( j ), state.y( j + 1 ) );
            if ( !r.has_value() )
            {
                status = InvariantStatus::not_checkable;
            }
            else if ( !*r )
            {
                status = InvariantStatus::violated;
                break;
            }
        }
        out.push_back( { InvariantId::N2, status } );
    }

    {
        bool ok = true;
        for ( std::size_t j = k; ok && j < n; ++j )
            ok = !inst.contains( state.y( j ), ordinary< I >( state.x( j ) ) );
        out.push_back( { InvariantId::PN, status_of( ok ) } );
    }

    // A1: the lower half is decidable everywhere; the upper half needs g.
    {
        bool ok = initial_chain_below( inst, state );

        if constexpr ( AdjointInstance< I > )
        {
            // final chain (g ⊓ p)^m(⊤), m = n-1-j
            std::vector< typename I::Pos > upper{ inst.top() };
            while ( upper.size() < n )
                upper.push_back( inst.meet( inst.backward( upper.back() ), inst.property() ) );

            for ( std::size_t j = 0; ok && j < n; ++j )
                ok = inst.leq( ordinary< I >( state.x( j ) ), upper[ n - 1 - j ] );

            out.push_back( { InvariantId::A1, status_of( ok ) } );
        }
        else
        {
            out.push_back( { InvariantId::A1, ok ? InvariantStatus::not_checkable : InvariantStatus::violated } );
        }
    }

    if constexpr ( AdjointInstance< I > )
    {
        // g^m(p), m = 0 .. n-2
        std::vector< typename I::Pos > safe{ inst.property() };
        while ( safe.size() + 1 < n )
            safe.push_back( inst.backward( safe.back() ) );

        bool a2 = true;
        for ( std::size_t j = 1; a2 && j < n; ++j )
            a2 = inst.leq( ordinary< I >( state.x( j - 1 ) ), safe[ n - 1 - j ] );
        out.push_back( { InvariantId::A2, status_of( a2 ) } );

        bool a3 = true;
        for ( std::size_t j = k; a3 && j < n; ++j )
            a3 = inst.leq( safe[ n - 1 - j ], state.y( j ) );
        out.push_back( { InvariantId::A3, status_of( a3 ) } );
    }
    else
    {
        out.push_back( { InvariantId::A2, InvariantStatus::not_checkable } );
        out.push_back( { InvariantId::A3, InvariantStatus::not_checkable } );
    }

    return report;
}

template< ProblemInstance I >
InvariantReport check_invariants( const I& inst, const std::vector< StateOf< I > >& states )
{
    InvariantReport report;
    for ( std::size_t i = 0; i < states.size(); ++i )
    {
        auto step = check_state( inst, states[ i ] );
        step.state_number = i;
        report.steps.push_back( std::move( step ) );
    }
    return report;
}

template< ProblemInstance I >
InvariantReport check_invariants( const I& inst, const Trace< I >& trace )
{
    return check_invariants( inst, trace.states() );
}

} // namespace apdr
