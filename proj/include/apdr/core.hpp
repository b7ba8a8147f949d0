#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace apdr
{

// Plain: positive and negative elements live in the same lattice and the
// backward adjoint is available. Down: negative elements are lower sets and
// the positive chain starts with the empty lower set.
enum class Mode
{
    plain,
    down
};

enum class Rule
{
    unfold,
    candidate,
    decide,
    conflict
};

inline const char* rule_tag( Rule rule )
{
    switch ( rule )
    {
    case Rule::unfold: return "U";
    case Rule::candidate: return "Ca";
    case Rule::decide: return "D";
    case Rule::conflict: return "Co";
    }
    return "?";
}

struct Index
{
    std::size_t n = 2;
    std::size_t k = 2;

    friend bool operator==( const Index&, const Index& ) = default;
};

// x_0 of the down-set variant: the bottom lower set, strictly below every
// principal. Meets absorb into it and its image is the bottom of L.
struct EmptyLowerSet
{
    friend bool operator==( const EmptyLowerSet&, const EmptyLowerSet& ) = default;
};

template< typename Pos >
using Slot = std::variant< EmptyLowerSet, Pos >;

template< typename Pos >
bool is_sentinel( const Slot< Pos >& slot )
{
    return std::holds_alternative< EmptyLowerSet >( slot );
}

template< typename I >
concept ProblemInstance = requires( const I& inst,
                                   const typename I::Pos& x,
                                   const typename I::Neg& y,
                                   const typename I::DecideWitness& w ) {
    typename I::Pos;
    typename I::Neg;
    typename I::DecideWitness;
    { I::mode } -> std::convertible_to< Mode >;
    { inst.bottom() } -> std::convertible_to< typename I::Pos >;
    { inst.top() } -> std::convertible_to< typename I::Pos >;
    { inst.initial() } -> std::convertible_to< typename I::Pos >;
    { inst.meet( x, x ) } -> std::convertible_to< typename I::Pos >;
    { inst.leq( x, x ) } -> std::convertible_to< bool >;
    { inst.below_property( x ) } -> std::convertible_to< bool >;
    // plain: f(x); down: b(x)
    { inst.image( x ) } -> std::convertible_to< typename I::Pos >;
    // plain: (f ⊔ i)(x); down: b(x)
    { inst.forward( x ) } -> std::convertible_to< typename I::Pos >;
    // plain: x ⊑ y; down: x ∈ Y
    { inst.contains( y, x ) } -> std::convertible_to< bool >;
    // plain: p ⊑ y; down: p ∈ Y
    { inst.property_in( y ) } -> std::convertible_to< bool >;
    // plain: i ⋢ y; down: Y = ∅
    { inst.refutes( y ) } -> std::convertible_to< bool >;
    // Checked-mode Decide validation: the witness certifies that the chosen
    // element contains the pullback of Y_k.
    { inst.decide_covers( y, y, w ) } -> std::convertible_to< bool >;
    // N2 between consecutive negative elements; nullopt when undecidable.
    { inst.pullback_within( y, y ) } -> std::convertible_to< std::optional< bool > >;
    { inst.format( x ) } -> std::convertible_to< std::string >;
    { inst.format_neg( y ) } -> std::convertible_to< std::string >;
    { inst.format_witness( w ) } -> std::convertible_to< std::string >;
};

// Plain instances expose the right adjoint g, enabling P3a, N2 and the A
// invariants to be checked exactly.
template< typename I >
concept AdjointInstance = ProblemInstance< I > && std::same_as< typename I::Pos, typename I::Neg >
                          && requires( const I& inst, const typename I::Neg& y ) {
    { inst.backward( y ) } -> std::convertible_to< typename I::Neg >;
    { inst.property() } -> std::convertible_to< typename I::Neg >;
};

class invalid_state : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// The configuration (x⃗ ‖ Y⃗)_{n,k}. Negative holds Y_k .. Y_{n-1}.
template< typename Pos, typename Neg >
class PdrState
{
    std::vector< Slot< Pos > > _positive;
    std::vector< Neg > _negative;
    Index _index;

public:
    PdrState( std::vector< Slot< Pos > > positive, std::vector< Neg > negative, Index index )
        : _positive{ std::move( positive ) }, _negative{ std::move( negative ) }, _index{ index }
    {
        if ( _index.k < 1 || _index.k > _index.n )
            throw invalid_state( "index violates 1 <= k <= n" );
        if ( _positive.size() != _index.n )
            throw invalid_state( "positive chain length does not match n" );
        if ( _negative.size() != _index.n - _index.k )
            throw invalid_state( "negative sequence length does not match n - k" );
    }

    [[nodiscard]] const std::vector< Slot< Pos > >& positive() const { return _positive; }
    [[nodiscard]] const std::vector< Neg >& negative() const { return _negative; }
    [[nodiscard]] Index index() const { return _index; }
    [[nodiscard]] std::size_t n() const { return _index.n; }
    [[nodiscard]] std::size_t k() const { return _index.k; }

    [[nodiscard]] const Slot< Pos >& x( std::size_t j ) const { return _positive.at( j ); }

    // Y_j for j in [k, n-1].
    [[nodiscard]] const Neg& y( std::size_t j ) const { return _negative.at( j - _index.k ); }

    [[nodiscard]] bool negative_empty() const { return _negative.empty(); }

    friend bool operator==( const PdrState&, const PdrState& ) = default;
};

template< ProblemInstance I >
using StateOf = PdrState< typename I::Pos, typename I::Neg >;

// Builds a state and additionally rejects positive chains that are not ordered.
template< ProblemInstance I >
StateOf< I > make_state( const I& inst,
                         std::vector< Slot< typename I::Pos > > positive,
                         std::vector< typename I::Neg > negative,
                         Index index )
{
    for ( std::size_t j = 0; j + 1 < positive.size(); ++j )
    {
        const auto& lo = positive[ j ];
        const auto& hi = positive[ j + 1 ];

        if ( is_sentinel( lo ) )
            continue;
        if ( is_sentinel( hi ) || !inst.leq( std::get< 1 >( lo ), std::get< 1 >( hi ) ) )
            throw invalid_state( "positive chain is not ordered at position " + std::to_string( j ) );
    }

    return StateOf< I >( std::move( positive ), std::move( negative ), index );
}

enum class UnknownReason
{
    budget_exhausted,
    heuristic_failure
};

template< typename Pos >
struct Holds
{
    Pos witness;
    std::size_t position = 0;
};

template< typename Neg >
struct Refuted
{
    std::vector< Neg > negative;
};

struct Unknown
{
    UnknownReason reason = UnknownReason::budget_exhausted;
};

template< ProblemInstance I >
using Verdict = std::variant< Holds< typename I::Pos >, Refuted< typename I::Neg >, Unknown >;

template< ProblemInstance I >
struct DecideChoice
{
    typename I::Neg element;
    typename I::DecideWitness witness;
};

template< ProblemInstance I >
class Heuristic
{
public:
    virtual ~Heuristic() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual typename I::Neg choose_candidate( const StateOf< I >& state ) const = 0;
    [[nodiscard]] virtual DecideChoice< I > choose_decide( const StateOf< I >& state ) const = 0;
    [[nodiscard]] virtual typename I::Pos choose_conflict( const StateOf< I >& state ) const = 0;
};

} // namespace apdr
