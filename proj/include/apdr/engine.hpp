#pragma once

#include "apdr/core.hpp"

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace apdr
{

// Thrown in checked mode when a heuristic's choice breaks a rule constraint.
class heuristic_violation : public std::logic_error
{
    Rule _rule;
    std::string _constraint;

public:
    heuristic_violation( Rule rule, std::string constraint )
        : std::logic_error( std::string( "heuristic violation in rule " ) + rule_tag( rule ) + ": " + constraint ),
          _rule{ rule }, _constraint{ std::move( constraint ) }
    {}

    [[nodiscard]] Rule rule() const { return _rule; }
    [[nodiscard]] const std::string& constraint() const { return _constraint; }
};

// A heuristic that cannot produce a choice. The run ends with Unknown.
class heuristic_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A conclusive verdict that failed re-verification through the instance.
class unsound_verdict : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

struct RuleCounts
{
    std::size_t unfold = 0;
    std::size_t candidate = 0;
    std::size_t decide = 0;
    std::size_t conflict = 0;

    [[nodiscard]] std::size_t total() const { return unfold + candidate + decide + conflict; }

    void add( Rule rule )
    {
        switch ( rule )
        {
        case Rule::unfold: ++unfold; break;
        case Rule::candidate: ++candidate; break;
        case Rule::decide: ++decide; break;
        case Rule::conflict: ++conflict; break;
        }
    }

    friend bool operator==( const RuleCounts&, const RuleCounts& ) = default;
};

template< ProblemInstance I >
struct TraceEvent
{
    std::size_t step = 0;
    Rule rule = Rule::unfold;
    Index index_before;
    Index index_after;
    std::optional< std::string > chosen;
    std::optional< std::string > witness;
    std::optional< StateOf< I > > state_after;
};

template< ProblemInstance I >
struct Trace
{
    std::optional< StateOf< I > > initial;
    std::vector< TraceEvent< I > > events;

    // Every retained state in order, starting with the initial one.
    [[nodiscard]] std::vector< StateOf< I > > states() const
    {
        std::vector< StateOf< I > > out;
        if ( initial )
            out.push_back( *initial );
        for ( const auto& e : events )
            if ( e.state_after )
                out.push_back( *e.state_after );
        return out;
    }
};

struct SolveOptions
{
    std::size_t budget = 100000;
    bool checked = true;
    bool retain_states = false;
};

template< ProblemInstance I >
struct SolveResult
{
    Verdict< I > verdict;
    Trace< I > trace;
    RuleCounts counts;

    [[nodiscard]] std::size_t steps() const { return counts.total(); }
    [[nodiscard]] bool holds() const { return std::holds_alternative< Holds< typename I::Pos > >( verdict ); }
    [[nodiscard]] bool refuted() const { return std::holds_alternative< Refuted< typename I::Neg > >( verdict ); }
    [[nodiscard]] bool unknown() const { return std::holds_alternative< Unknown >( verdict ); }
};

// Either a conclusive verdict or the unique enabled rule.
template< ProblemInstance I >
using Classification = std::variant< Verdict< I >, Rule >;

namespace detail
{

template< ProblemInstance I >
const typename I::Pos& ordinary( const Slot< typename I::Pos >& slot )
{
    return std::get< typename I::Pos >( slot );
}

template< ProblemInstance I >
Slot< typename I::Pos > slot_meet( const I& inst, const Slot< typename I::Pos >& slot, const typename I::Pos& z )
{
    if ( is_sentinel( slot ) )
        return slot;
    return inst.meet( ordinary< I >( slot ), z );
}

template< ProblemInstance I >
bool slot_leq( const I& inst, const Slot< typename I::Pos >& lhs, const Slot< typename I::Pos >& rhs )
{
    if ( is_sentinel( lhs ) )
        return true;
    if ( is_sentinel( rhs ) )
        return false;
    return inst.leq( ordinary< I >( lhs ), ordinary< I >( rhs ) );
}

// f or b applied to a chain slot; the sentinel maps to bottom.
template< ProblemInstance I >
typename I::Pos slot_image( const I& inst, const Slot< typename I::Pos >& slot )
{
    if ( is_sentinel( slot ) )
        return inst.bottom();
    return inst.image( ordinary< I >( slot ) );
}

template< ProblemInstance I >
typename I::Pos slot_forward( const I& inst, const Slot< typename I::Pos >& slot )
{
    if ( is_sentinel( slot ) )
        return inst.bottom();
    return inst.forward( ordinary< I >( slot ) );
}

} // namespace detail

template< ProblemInstance I >
StateOf< I > init_state( const I& inst )
{
    using Pos = typename I::Pos;

    if constexpr ( I::mode == Mode::plain )
        return StateOf< I >( { Slot< Pos >{ inst.bottom() }, Slot< Pos >{ inst.top() } }, {}, Index{ 2, 2 } );
    else
        return StateOf< I >( { Slot< Pos >{ EmptyLowerSet{} }, Slot< Pos >{ inst.bottom() }, Slot< Pos >{ inst.top() } },
                             {},
                             Index{ 3, 3 } );
}

template< ProblemInstance I >
Classification< I > classify( const I& inst, const StateOf< I >& state )
{
    const auto n = state.n();
    const auto k = state.k();

    // No ordinary element lies below the sentinel, so the scan effectively
    // starts at j = 1 in down mode.
    for ( std::size_t j = 0; j + 2 <= n; ++j )
    {
        if ( detail::slot_leq( inst, state.x( j + 1 ), state.x( j ) ) )
            return Verdict< I >{ Holds< typename I::Pos >{ detail::ordinary< I >( state.x( j + 1 ) ), j + 1 } };
    }

    if ( !state.negative_empty() && k == 1 && inst.refutes( state.y( 1 ) ) )
        return Verdict< I >{ Refuted< typename I::Neg >{ state.negative() } };

    if ( state.negative_empty() )
    {
        if ( inst.below_property( detail::ordinary< I >( state.x( n - 1 ) ) ) )
            return Rule::unfold;
        return Rule::candidate;
    }

    if ( !inst.contains( state.y( k ), detail::slot_image( inst, state.x( k - 1 ) ) ) )
        return Rule::decide;
    return Rule::conflict;
}

template< ProblemInstance I >
struct Applied
{
    StateOf< I > state;
    std::optional< std::string > chosen;
    std::optional< std::string > witness;
};

template< ProblemInstance I >
Applied< I > apply_rule( const I& inst, const Heuristic< I >& heuristic, const StateOf< I >& state, Rule rule, bool checked )
{
    using Pos = typename I::Pos;
    using Neg = typename I::Neg;

    const auto n = state.n();
    const auto k = state.k();

    switch ( rule )
    {
    case Rule::unfold:
    {
        auto positive = state.positive();
        positive.push_back( Slot< Pos >{ inst.top() } );
        return { StateOf< I >( std::move( positive ), {}, Index{ n + 1, n + 1 } ), std::nullopt, std::nullopt };
    }
    case Rule::candidate:
    {
        auto z = heuristic.choose_candidate( state );

        if ( checked )
        {
            if ( inst.contains( z, detail::ordinary< I >( state.x( n - 1 ) ) ) )
                throw heuristic_violation( rule, "x_{n-1} must not belong to the chosen element" );
            if ( !inst.property_in( z ) )
                throw heuristic_violation( rule, "the chosen element must contain p" );
        }

        auto chosen = inst.format_neg( z );
        return { StateOf< I >( state.positive(), { std::move( z ) }, Index{ n, n - 1 } ), std::move( chosen ), std::nullopt };
    }
    case Rule::decide:
    {
        auto choice = heuristic.choose_decide( state );

        if ( checked )
        {
            if ( is_sentinel( state.x( k - 1 ) ) || inst.contains( choice.element, detail::ordinary< I >( state.x( k - 1 ) ) ) )
                throw heuristic_violation( rule, "x_{k-1} must not belong to the chosen element" );
            if ( !inst.decide_covers( choice.element, state.y( k ), choice.witness ) )
                throw heuristic_violation( rule, "the chosen element must contain the pullback of Y_k" );
        }

        std::vector< Neg > negative;
        negative.reserve( state.negative().size() + 1 );
        negative.push_back( choice.element );
        negative.insert( negative.end(), state.negative().begin(), state.negative().end() );

        return { StateOf< I >( state.positive(), std::move( negative ), Index{ n, k - 1 } ),
                 inst.format_neg( choice.element ),
                 inst.format_witness( choice.witness ) };
    }
    case Rule::conflict:
    {
        auto z = heuristic.choose_conflict( state );

        if ( checked )
        {
            if ( !inst.contains( state.y( k ), z ) )
                throw heuristic_violation( rule, "z must belong to Y_k" );

            const auto below = detail::slot_meet( inst, state.x( k - 1 ), z );
            if ( !inst.leq( detail::slot_forward( inst, below ), z ) )
                throw heuristic_violation( rule, "the successor of x_{k-1} meet z must lie below z" );
        }

        auto positive = state.positive();
        for ( std::size_t j = 0; j <= k; ++j )
            positive[ j ] = detail::slot_meet( inst, positive[ j ], z );

        std::vector< Neg > negative( state.negative().begin() + 1, state.negative().end() );

        return { StateOf< I >( std::move( positive ), std::move( negative ), Index{ n, k + 1 } ), inst.format( z ), std::nullopt };
    }
    }

    throw std::logic_error( "unknown rule" );
}

// Re-checks a conclusive verdict through the instance: a Holds witness must
// be a post-fixed point below p, a Refuted sequence must refute at Y_1.
template< ProblemInstance I >
void verify_verdict( const I& inst, const Verdict< I >& verdict )
{
    if ( const auto* holds = std::get_if< Holds< typename I::Pos > >( &verdict ) )
    {
        if ( !inst.leq( inst.forward( holds->witness ), holds->witness ) )
            throw unsound_verdict( "holds witness is not inductive" );
        if ( !inst.below_property( holds->witness ) )
            throw unsound_verdict( "holds witness is not below p" );
    }
    else if ( const auto* refuted = std::get_if< Refuted< typename I::Neg > >( &verdict ) )
    {
        if ( refuted->negative.empty() || !inst.refutes( refuted->negative.front() ) )
            throw unsound_verdict( "refuted sequence does not refute at Y_1" );
    }
}

template< ProblemInstance I >
SolveResult< I > solve( const I& inst, const Heuristic< I >& heuristic, const SolveOptions& options = {} )
{
    if ( options.budget < 1 )
        throw std::invalid_argument( "budget must be positive" );

    SolveResult< I > result{ Unknown{}, {}, {} };
    auto state = init_state( inst );

    if ( options.retain_states )
        result.trace.initial = state;

    while ( true )
    {
        auto classification = classify( inst, state );

        if ( auto* verdict = std::get_if< Verdict< I > >( &classification ) )
        {
            verify_verdict( inst, *verdict );
            result.verdict = std::move( *verdict );
            return result;
        }

        if ( result.counts.total() >= options.budget )
        {
            result.verdict = Unknown{ UnknownReason::budget_exhausted };
            return result;
        }

        const auto rule = std::get< Rule >( classification );
        const auto before = state.index();

        std::optional< Applied< I > > applied;
        try
        {
            applied.emplace( apply_rule( inst, heuristic, state, rule, options.checked ) );
        }
        catch ( const heuristic_error& )
        {
            result.verdict = Unknown{ UnknownReason::heuristic_failure };
            return result;
        }

        state = std::move( applied->state );
        result.counts.add( rule );

        TraceEvent< I > event;
        event.step = result.counts.total();
        event.rule = rule;
        event.index_before = before;
        event.index_after = state.index();
        event.chosen = std::move( applied->chosen );
        event.witness = std::move( applied->witness );
        if ( options.retain_states )
            event.state_after = state;

        result.trace.events.push_back( std::move( event ) );
    }
}

// "step=<i> rule=<U|Ca|D|Co> n=<n> k=<k> chosen=<element or '-'>", with the
// index taken after the step.
template< ProblemInstance I >
std::string format_event( const TraceEvent< I >& event )
{
    std::ostringstream os;
    os << "step=" << event.step << " rule=" << rule_tag( event.rule ) << " n=" << event.index_after.n
       << " k=" << event.index_after.k << " chosen=" << event.chosen.value_or( "-" );
    return os.str();
}

template< ProblemInstance I >
std::string format_trace( const Trace< I >& trace )
{
    std::string out;
    for ( const auto& event : trace.events )
        out += format_event( event ) + "\n";
    return out;
}

// "(x_0, ..., x_{n-1} || Y_k, ..., Y_{n-1})_{n,k}", the sentinel printed as "empty".
template< ProblemInstance I >
std::string format_state( const I& inst, const StateOf< I >& state )
{
    std::ostringstream os;
    os << "(";
    for ( std::size_t j = 0; j < state.n(); ++j )
    {
        if ( j > 0 )
            os << ", ";
        if ( is_sentinel( state.x( j ) ) )
            os << "empty";
        else
            os << inst.format( detail::ordinary< I >( state.x( j ) ) );
    }
    os << " || ";
    if ( state.negative_empty() )
        os << "eps";
    for ( std::size_t j = 0; j < state.negative().size(); ++j )
    {
        if ( j > 0 )
            os << ", ";
        os << inst.format_neg( state.negative()[ j ] );
    }
    os << ")_{" << state.n() << "," << state.k() << "}";
    return os.str();
}

// Returns the first pair of equal full states, if any. Only states sharing
// an index can be equal, so comparisons are bucketed by (n, k).
template< typename Pos, typename Neg >
std::optional< std::pair< std::size_t, std::size_t > > detect_repeat( const std::vector< PdrState< Pos, Neg > >& states )
{
    std::map< std::pair< std::size_t, std::size_t >, std::vector< std::size_t > > seen;

    for ( std::size_t j = 0; j < states.size(); ++j )
    {
        auto& bucket = seen[ { states[ j ].n(), states[ j ].k() } ];
        for ( const auto i : bucket )
            if ( states[ i ] == states[ j ] )
                return std::pair{ i, j };
        bucket.push_back( j );
    }
    return std::nullopt;
}

template< ProblemInstance I >
std::optional< std::pair< std::size_t, std::size_t > > detect_repeat( const Trace< I >& trace )
{
    return detect_repeat( trace.states() );
}

} // namespace apdr
