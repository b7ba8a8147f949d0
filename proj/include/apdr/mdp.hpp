#pragma once

#include "apdr/core.hpp"
#include "apdr/rational.hpp"
#include "apdr/ts.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace apdr
{

template< typename Scalar >
using Vector = Eigen::Matrix< Scalar, Eigen::Dynamic, 1 >;

template< typename Scalar >
using Matrix = Eigen::Matrix< Scalar, Eigen::Dynamic, Eigen::Dynamic >;

// A function S → [0,1]; the lattice is ordered pointwise.
using Frame = Vector< Rational >;

// Memoryless scheduler: one action index per state.
using Scheduler = std::vector< std::size_t >;

template< typename A, typename B >
bool pointwise_leq( const Eigen::MatrixBase< A >& lhs, const Eigen::MatrixBase< B >& rhs )
{
    return ( lhs.array() <= rhs.array() ).all();
}

template< typename Scalar >
Vector< Scalar > constant_frame( Eigen::Index size, const Scalar& value )
{
    return Vector< Scalar >::Constant( size, value );
}

bool frames_equal( const Frame& lhs, const Frame& rhs );

// "[2/5,0,0,1]"
std::string format_frame( const Frame& frame );

// Parses "[a,b,...]" with rational entries.
Frame parse_frame( std::string_view text );

class invalid_model : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class probability_sum_mismatch : public invalid_model
{
public:
    probability_sum_mismatch( std::size_t state, const std::string& label, const Rational& sum )
        : invalid_model( "probabilities of action '" + label + "' at state " + std::to_string( state ) + " sum to "
                         + sum.str() + ", not 1" )
    {}
};

class no_action_for_state : public invalid_model
{
public:
    explicit no_action_for_state( std::size_t state )
        : invalid_model( "state " + std::to_string( state ) + " has no enabled action" )
    {}
};

struct Action
{
    std::string label;
    Frame distribution;  // dense over the state space

    friend bool operator==( const Action& lhs, const Action& rhs )
    {
        return lhs.label == rhs.label && frames_equal( lhs.distribution, rhs.distribution );
    }
};

class Mdp
{
    std::size_t _num_states = 0;
    std::vector< std::vector< Action > > _actions;
    std::size_t _initial = 0;
    StateSet _bad;
    Rational _lambda;

public:
    Mdp( std::size_t num_states,
         std::vector< std::vector< Action > > actions,
         std::size_t initial,
         StateSet bad,
         Rational lambda );

    [[nodiscard]] std::size_t num_states() const { return _num_states; }
    [[nodiscard]] Eigen::Index size() const { return static_cast< Eigen::Index >( _num_states ); }
    [[nodiscard]] const std::vector< Action >& actions( std::size_t state ) const { return _actions.at( state ); }
    [[nodiscard]] std::size_t initial() const { return _initial; }
    [[nodiscard]] const StateSet& bad() const { return _bad; }
    [[nodiscard]] bool is_bad( std::size_t state ) const { return _bad.contains( state ); }
    [[nodiscard]] const Rational& lambda() const { return _lambda; }

    [[nodiscard]] Mdp with_lambda( Rational lambda ) const;

    // p(s) = λ at the initial state, 1 elsewhere.
    [[nodiscard]] Frame property_frame() const;

    // Number of memoryless schedulers, saturating at `cap + 1`.
    [[nodiscard]] std::size_t scheduler_count( std::size_t cap ) const;

    friend bool operator==( const Mdp&, const Mdp& ) = default;
};

// b(d)(s) = 1 on bad states, max over actions of the expected value elsewhere.
Frame bellman( const Mdp& mdp, const Frame& d );

// b_α: like bellman with the action fixed by the scheduler.
Frame bellman_sched( const Mdp& mdp, const Scheduler& alpha, const Frame& d );

// Pointwise maximiser of the expected value; ties go to the lowest action index.
Scheduler argmax_scheduler( const Mdp& mdp, const Frame& d );

// Calls `visit` with every memoryless scheduler in lexicographic order;
// stops early when `visit` returns false.
template< typename Visit >
void for_each_scheduler( const Mdp& mdp, Visit&& visit )
{
    Scheduler alpha( mdp.num_states(), 0 );
    while ( true )
    {
        if ( !visit( static_cast< const Scheduler& >( alpha ) ) )
            return;

        std::size_t s = 0;
        while ( s < alpha.size() )
        {
            if ( ++alpha[ s ] < mdp.actions( s ).size() )
                break;
            alpha[ s ] = 0;
            ++s;
        }
        if ( s == alpha.size() )
            return;
    }
}

std::string format_scheduler( const Mdp& mdp, const Scheduler& alpha );

class empty_set_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// {d ∈ [0,1]^S | Σ_s r_s·d(s) ≤ r} with r_s ≥ 0. Empty sets are normalised to
// coefficients 0⃗ and bound −1.
class HalfSpace
{
    Frame _coeffs;
    Rational _bound;

public:
    HalfSpace() = default;
    HalfSpace( Frame coeffs, Rational bound );

    // The principal p↓ of the property: coefficient 1 on `state`, bound λ.
    static HalfSpace unit( Eigen::Index size, Eigen::Index state, Rational bound );

    [[nodiscard]] const Frame& coeffs() const { return _coeffs; }
    [[nodiscard]] const Rational& bound() const { return _bound; }
    [[nodiscard]] Eigen::Index size() const { return _coeffs.size(); }
    [[nodiscard]] bool empty() const { return _bound.sign() < 0; }

    // "sum{ s0:1 s2:1/2 } <= 2/5"
    [[nodiscard]] std::string str() const;

    // Syntactic equality of the stored representation.
    friend bool operator==( const HalfSpace& lhs, const HalfSpace& rhs )
    {
        return lhs._bound == rhs._bound && frames_equal( lhs._coeffs, rhs._coeffs );
    }
};

bool hs_member( const HalfSpace& h, const Frame& d );

// {d | b_α(d) ∈ H}, exactly.
HalfSpace hs_transform( const Mdp& mdp, const Scheduler& alpha, const HalfSpace& h );

// max Σ w_s·d(s) over d ∈ H; throws empty_set_error when H is empty.
Rational hs_max_linear( const HalfSpace& h, const Frame& weights );

// Semantic inclusion inner ⊆ outer.
bool hs_contains( const HalfSpace& outer, const HalfSpace& inner );

bool hs_equal( const HalfSpace& lhs, const HalfSpace& rhs );

// Z = {d ∈ G | lower ≤ d} where G are the generating vertices of H: every
// coordinate with r_s = 0 is 0 or 1, and the positively weighted coordinates
// form a maximal vertex (at most one fractional entry, constraint tight unless
// they are all 1). Sorted lexicographically.
std::vector< Frame > enumerate_dominating_generators( const HalfSpace& h, const Frame& lower );

enum class ConflictMode
{
    meet,      // z_B
    zero_one   // z_01
};

// z_B / z_01 computed from lower = b(x_{k-1}).
Frame conflict_z_from_lower( const HalfSpace& h, const Frame& lower, ConflictMode mode );

Frame conflict_z( const Mdp& mdp, const Frame& x_prev, const HalfSpace& h, ConflictMode mode );

// Down-mode instance for max reachability: positive elements are frames,
// negative elements half-space lower sets.
class MdpInstance
{
    const Mdp* _mdp;
    Frame _property;
    std::size_t _scheduler_cap;

public:
    using Pos = Frame;
    using Neg = HalfSpace;
    using DecideWitness = Scheduler;
    static constexpr Mode mode = Mode::down;

    explicit MdpInstance( const Mdp& mdp, std::size_t scheduler_cap = 4096 );

    [[nodiscard]] const Mdp& mdp() const { return *_mdp; }

    [[nodiscard]] Frame bottom() const { return constant_frame( _mdp->size(), Rational{ 0 } ); }
    [[nodiscard]] Frame top() const { return constant_frame( _mdp->size(), Rational{ 1 } ); }
    [[nodiscard]] Frame initial() const { return bottom(); }

    [[nodiscard]] Frame meet( const Frame& a, const Frame& b ) const { return a.cwiseMin( b ); }
    [[nodiscard]] bool leq( const Frame& a, const Frame& b ) const { return pointwise_leq( a, b ); }
    [[nodiscard]] bool below_property( const Frame& x ) const;

    [[nodiscard]] Frame image( const Frame& x ) const { return bellman( *_mdp, x ); }
    [[nodiscard]] Frame forward( const Frame& x ) const { return bellman( *_mdp, x ); }

    [[nodiscard]] bool contains( const HalfSpace& y, const Frame& x ) const { return hs_member( y, x ); }
    [[nodiscard]] bool property_in( const HalfSpace& y ) const { return hs_member( y, _property ); }
    [[nodiscard]] bool refutes( const HalfSpace& y ) const { return y.empty(); }

    [[nodiscard]] HalfSpace property_down_set() const;

    [[nodiscard]] bool decide_covers( const HalfSpace& z, const HalfSpace& y, const Scheduler& alpha ) const;

    // Holds when some memoryless scheduler's transform of `next` lies inside
    // `lower`; nullopt when none does or there are too many schedulers.
    [[nodiscard]] std::optional< bool > pullback_within( const HalfSpace& lower, const HalfSpace& next ) const;

    [[nodiscard]] std::string format( const Frame& x ) const { return format_frame( x ); }
    [[nodiscard]] std::string format_neg( const HalfSpace& y ) const { return y.str(); }
    [[nodiscard]] std::string format_witness( const Scheduler& alpha ) const { return format_scheduler( *_mdp, alpha ); }
};

enum class MdpHeuristicKind
{
    hcob,
    hco01,
    simple_init
};

// Candidate = p↓ and Decide = {d | b_α(d) ∈ Y_k} with α the argmax scheduler
// at x_{k-1}. Conflict is z_B, z_01, or b(x_{k-1}).
class MdpHeuristic final : public Heuristic< MdpInstance >
{
    const MdpInstance* _inst;
    MdpHeuristicKind _kind;

public:
    MdpHeuristic( const MdpInstance& inst, MdpHeuristicKind kind ) : _inst{ &inst }, _kind{ kind } {}

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] HalfSpace choose_candidate( const StateOf< MdpInstance >& state ) const override;
    [[nodiscard]] DecideChoice< MdpInstance > choose_decide( const StateOf< MdpInstance >& state ) const override;
    [[nodiscard]] Frame choose_conflict( const StateOf< MdpInstance >& state ) const override;
};

} // namespace apdr
