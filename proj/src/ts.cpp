#include "apdr/ts.hpp"

#include <stdexcept>

namespace apdr
{

StateSet::StateSet( std::size_t universe, std::initializer_list< std::size_t > members ) : _bits( universe )
{
    for ( const auto s : members )
        _bits.set( s );
}

StateSet::StateSet( std::size_t universe, const std::vector< std::size_t >& members ) : _bits( universe )
{
    for ( const auto s : members )
        _bits.set( s );
}

StateSet StateSet::full( std::size_t universe )
{
    StateSet out( universe );
    out._bits.set();
    return out;
}

StateSet StateSet::prefix( std::size_t universe, std::size_t last )
{
    StateSet out( universe );
    for ( std::size_t s = 0; s <= last && s < universe; ++s )
        out._bits.set( s );
    return out;
}

std::vector< std::size_t > StateSet::members() const
{
    std::vector< std::size_t > out;
    for ( auto s = _bits.find_first(); s != boost::dynamic_bitset<>::npos; s = _bits.find_next( s ) )
        out.push_back( s );
    return out;
}

StateSet& StateSet::operator|=( const StateSet& rhs )
{
    _bits |= rhs._bits;
    return *this;
}

StateSet& StateSet::operator&=( const StateSet& rhs )
{
    _bits &= rhs._bits;
    return *this;
}

std::string StateSet::str() const
{
    std::string out = "{";
    bool first = true;
    for ( const auto s : members() )
    {
        if ( !first )
            out += ",";
        out += std::to_string( s );
        first = false;
    }
    return out + "}";
}

TransitionSystem::TransitionSystem( std::size_t states,
                                    StateSet initial_states,
                                    std::vector< StateSet > successors,
                                    StateSet safe_states )
    : num_states{ states }, initial{ std::move( initial_states ) }, delta{ std::move( successors ) },
      safe{ std::move( safe_states ) }
{
    if ( initial.universe() != num_states || safe.universe() != num_states || delta.size() != num_states )
        throw std::invalid_argument( "transition system components disagree on the number of states" );

    for ( const auto& succ : delta )
        if ( succ.universe() != num_states )
            throw std::invalid_argument( "successor set over the wrong universe" );
}

StateSet post( const TransitionSystem& ts, const StateSet& states )
{
    StateSet out( ts.num_states );
    for ( const auto s : states.members() )
        out |= ts.delta[ s ];
    return out;
}

StateSet pre_tilde( const TransitionSystem& ts, const StateSet& states )
{
    StateSet out( ts.num_states );
    for ( std::size_t s = 0; s < ts.num_states; ++s )
        if ( ts.delta[ s ].subset_of( states ) )
            out.insert( s );
    return out;
}

std::string SimpleTsHeuristic::name() const
{
    return _choice == ConflictChoice::initial ? "simple-init" : "simple-final";
}

StateSet SimpleTsHeuristic::choose_candidate( const StateOf< TsInstance >& ) const { return _inst->property(); }

DecideChoice< TsInstance > SimpleTsHeuristic::choose_decide( const StateOf< TsInstance >& state ) const
{
    return { _inst->backward( state.y( state.k() ) ), {} };
}

StateSet SimpleTsHeuristic::choose_conflict( const StateOf< TsInstance >& state ) const
{
    const auto k = state.k();

    if ( _choice == ConflictChoice::final )
        return state.y( k );

    return _inst->forward( std::get< StateSet >( state.x( k - 1 ) ) );
}

} // namespace apdr
