#pragma once

#include "apdr/core.hpp"

#include <boost/dynamic_bitset.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace apdr
{

// Subset of a finite state space; the powerset lattice ordered by inclusion.
class StateSet
{
    boost::dynamic_bitset<> _bits;

public:
    StateSet() = default;
    explicit StateSet( std::size_t universe ) : _bits( universe ) {}
    StateSet( std::size_t universe, std::initializer_list< std::size_t > members );
    StateSet( std::size_t universe, const std::vector< std::size_t >& members );

    static StateSet full( std::size_t universe );
    // {s_0, ..., s_last}
    static StateSet prefix( std::size_t universe, std::size_t last );

    [[nodiscard]] std::size_t universe() const { return _bits.size(); }
    [[nodiscard]] std::size_t count() const { return _bits.count(); }
    [[nodiscard]] bool empty() const { return _bits.none(); }
    [[nodiscard]] bool contains( std::size_t state ) const { return _bits.test( state ); }
    [[nodiscard]] std::vector< std::size_t > members() const;

    void insert( std::size_t state ) { _bits.set( state ); }
    void erase( std::size_t state ) { _bits.reset( state ); }

    [[nodiscard]] bool subset_of( const StateSet& other ) const { return _bits.is_subset_of( other._bits ); }

    StateSet& operator|=( const StateSet& rhs );
    StateSet& operator&=( const StateSet& rhs );
    friend StateSet operator|( StateSet lhs, const StateSet& rhs ) { return lhs |= rhs; }
    friend StateSet operator&( StateSet lhs, const StateSet& rhs ) { return lhs &= rhs; }

    friend bool operator==( const StateSet&, const StateSet& ) = default;

    // "{0,2,5}"
    [[nodiscard]] std::string str() const;
};

struct TransitionSystem
{
    std::size_t num_states = 0;
    StateSet initial;
    std::vector< StateSet > delta;
    StateSet safe;

    TransitionSystem() = default;
    TransitionSystem( std::size_t states, StateSet initial_states, std::vector< StateSet > successors, StateSet safe_states );

    friend bool operator==( const TransitionSystem&, const TransitionSystem& ) = default;
};

// F(X) = ⋃_{s ∈ X} δ(s)
StateSet post( const TransitionSystem& ts, const StateSet& states );

// G(X) = {s | δ(s) ⊆ X}, the right adjoint of post.
StateSet pre_tilde( const TransitionSystem& ts, const StateSet& states );

// Plain-mode instance over the powerset lattice: f = F, g = G, i = I, p = P.
class TsInstance
{
    const TransitionSystem* _ts;

public:
    using Pos = StateSet;
    using Neg = StateSet;
    struct DecideWitness
    {
    };
    static constexpr Mode mode = Mode::plain;

    explicit TsInstance( const TransitionSystem& ts ) : _ts{ &ts } {}

    [[nodiscard]] const TransitionSystem& system() const { return *_ts; }

    [[nodiscard]] StateSet bottom() const { return StateSet( _ts->num_states ); }
    [[nodiscard]] StateSet top() const { return StateSet::full( _ts->num_states ); }
    [[nodiscard]] StateSet initial() const { return _ts->initial; }
    [[nodiscard]] StateSet property() const { return _ts->safe; }

    [[nodiscard]] StateSet meet( const StateSet& a, const StateSet& b ) const { return a & b; }
    [[nodiscard]] bool leq( const StateSet& a, const StateSet& b ) const { return a.subset_of( b ); }
    [[nodiscard]] bool below_property( const StateSet& x ) const { return x.subset_of( _ts->safe ); }

    [[nodiscard]] StateSet image( const StateSet& x ) const { return post( *_ts, x ); }
    [[nodiscard]] StateSet forward( const StateSet& x ) const { return post( *_ts, x ) | _ts->initial; }
    [[nodiscard]] StateSet backward( const StateSet& y ) const { return pre_tilde( *_ts, y ); }

    [[nodiscard]] bool contains( const StateSet& y, const StateSet& x ) const { return x.subset_of( y ); }
    [[nodiscard]] bool property_in( const StateSet& y ) const { return _ts->safe.subset_of( y ); }
    [[nodiscard]] bool refutes( const StateSet& y ) const { return !_ts->initial.subset_of( y ); }

    [[nodiscard]] bool decide_covers( const StateSet& z, const StateSet& y, const DecideWitness& ) const
    {
        return pre_tilde( *_ts, y ).subset_of( z );
    }

    [[nodiscard]] std::optional< bool > pullback_within( const StateSet& lower, const StateSet& next ) const
    {
        return pre_tilde( *_ts, next ).subset_of( lower );
    }

    [[nodiscard]] std::string format( const StateSet& x ) const { return x.str(); }
    [[nodiscard]] std::string format_neg( const StateSet& y ) const { return y.str(); }
    [[nodiscard]] std::string format_witness( const DecideWitness& ) const { return "-"; }
};

enum class ConflictChoice
{
    initial,
    final
};

// Candidate = P, Decide = G(y_k); Conflict is (F ∪ I)(x_{k-1}) for the
// initial variant and y_k for the final one.
class SimpleTsHeuristic final : public Heuristic< TsInstance >
{
    const TsInstance* _inst;
    ConflictChoice _choice;

public:
    SimpleTsHeuristic( const TsInstance& inst, ConflictChoice choice ) : _inst{ &inst }, _choice{ choice } {}

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] StateSet choose_candidate( const StateOf< TsInstance >& state ) const override;
    [[nodiscard]] DecideChoice< TsInstance > choose_decide( const StateOf< TsInstance >& state ) const override;
    [[nodiscard]] StateSet choose_conflict( const StateOf< TsInstance >& state ) const override;
};

} // namespace apdr
