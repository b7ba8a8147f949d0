#include "apdr/mdp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace apdr
{

bool frames_equal( const Frame& lhs, const Frame& rhs )
{
    return lhs.size() == rhs.size() && ( lhs.array() == rhs.array() ).all();
}

std::string format_frame( const Frame& frame )
{
    std::string out = "[";
    for ( Eigen::Index s = 0; s < frame.size(); ++s )
    {
        if ( s > 0 )
            out += ",";
        out += frame( s ).str();
    }
    return out + "]";
}

Frame parse_frame( std::string_view text )
{
    while ( !text.empty() && text.front() == ' ' )
        text.remove_prefix( 1 );
    while ( !text.empty() && text.back() == ' ' )
        text.remove_suffix( 1 );

    if ( text.size() < 2 || text.front() != '[' || text.back() != ']' )
        throw malformed_rational( "malformed frame: '" + std::string( text ) + "'" );

    text = text.substr( 1, text.size() - 2 );

    std::vector< Rational > entries;
    while ( !text.empty() )
    {
        const auto comma = text.find( ',' );
        entries.push_back( Rational::parse( text.substr( 0, comma ) ) );
        if ( comma == std::string_view::npos )
            break;
        text.remove_prefix( comma + 1 );
    }

    Frame out( static_cast< Eigen::Index >( entries.size() ) );
    for ( std::size_t s = 0; s < entries.size(); ++s )
        out( static_cast< Eigen::Index >( s ) ) = entries[ s ];
    return out;
}

Mdp::Mdp( std::size_t num_states,
          std::vector< std::vector< Action > > actions,
          std::size_t initial,
          StateSet bad,
          Rational lambda )
    : _num_states{ num_states }, _actions{ std::move( actions ) }, _initial{ initial }, _bad{ std::move( bad ) },
      _lambda{ std::move( lambda ) }
{
    if ( _num_states == 0 )
        throw invalid_model( "an MDP needs at least one state" );
    if ( _actions.size() != _num_states )
        throw invalid_model( "action table does not cover every state" );
    if ( _initial >= _num_states )
        throw invalid_model( "initial state out of range" );
    if ( _bad.universe() != _num_states )
        throw invalid_model( "bad set over the wrong universe" );
    if ( _lambda < Rational{ 0 } || _lambda > Rational{ 1 } )
        throw invalid_model( "lambda must lie in [0, 1]" );

    for ( std::size_t s = 0; s < _num_states; ++s )
    {
        if ( _actions[ s ].empty() )
            throw no_action_for_state( s );

        std::set< std::string > labels;
        for ( const auto& action : _actions[ s ] )
        {
            if ( !labels.insert( action.label ).second )
                throw invalid_model( "duplicate action '" + action.label + "' at state " + std::to_string( s ) );
            if ( action.distribution.size() != size() )
                throw invalid_model( "distribution of the wrong size" );
            if ( ( action.distribution.array() < Rational{ 0 } ).any() )
                throw invalid_model( "negative probability" );

            const Rational sum = action.distribution.sum();
            if ( sum != Rational{ 1 } )
                throw probability_sum_mismatch( s, action.label, sum );
        }
    }
}

Mdp Mdp::with_lambda( Rational lambda ) const
{
    return Mdp( _num_states, _actions, _initial, _bad, std::move( lambda ) );
}

Frame Mdp::property_frame() const
{
    Frame p = constant_frame( size(), Rational{ 1 } );
    p( static_cast< Eigen::Index >( _initial ) ) = _lambda;
    return p;
}

std::size_t Mdp::scheduler_count( std::size_t cap ) const
{
    std::size_t count = 1;
    for ( const auto& acts : _actions )
    {
        count *= acts.size();
        if ( count > cap )
            return cap + 1;
    }
    return count;
}

Frame bellman( const Mdp& mdp, const Frame& d )
{
    Frame out( mdp.size() );
    for ( std::size_t s = 0; s < mdp.num_states(); ++s )
    {
        const auto i = static_cast< Eigen::Index >( s );
        if ( mdp.is_bad( s ) )
        {
            out( i ) = Rational{ 1 };
            continue;
        }

        const auto& acts = mdp.actions( s );
        Rational best = acts.front().distribution.dot( d );
        for ( std::size_t a = 1; a < acts.size(); ++a )
            best = std::max( best, Rational{ acts[ a ].distribution.dot( d ) } );
        out( i ) = best;
    }
    return out;
}

Frame bellman_sched( const Mdp& mdp, const Scheduler& alpha, const Frame& d )
{
    Frame out( mdp.size() );
    for ( std::size_t s = 0; s < mdp.num_states(); ++s )
    {
        const auto i = static_cast< Eigen::Index >( s );
        out( i ) = mdp.is_bad( s ) ? Rational{ 1 } : Rational{ mdp.actions( s ).at( alpha.at( s ) ).distribution.dot( d ) };
    }
    return out;
}

Scheduler argmax_scheduler( const Mdp& mdp, const Frame& d )
{
    Scheduler alpha( mdp.num_states(), 0 );
    for ( std::size_t s = 0; s < mdp.num_states(); ++s )
    {
        const auto& acts = mdp.actions( s );
        Rational best = acts.front().distribution.dot( d );
        for ( std::size_t a = 1; a < acts.size(); ++a )
        {
            const Rational value = acts[ a ].distribution.dot( d );
            if ( value > best )
            {
                best = value;
                alpha[ s ] = a;
            }
        }
    }
    return alpha;
}

std::string format_scheduler( const Mdp& mdp, const Scheduler& alpha )
{
    std::string out = "[";
    for ( std::size_t s = 0; s < alpha.size(); ++s )
    {
        if ( s > 0 )
            out += ",";
        out += "s" + std::to_string( s ) + "->" + mdp.actions( s ).at( alpha[ s ] ).label;
    }
    return out + "]";
}

HalfSpace::HalfSpace( Frame coeffs, Rational bound ) : _coeffs{ std::move( coeffs ) }, _bound{ std::move( bound ) }
{
    if ( ( _coeffs.array() < Rational{ 0 } ).any() )
        throw std::invalid_argument( "half-space coefficients must be nonnegative" );

    if ( _bound.sign() < 0 )
    {
        _coeffs.setConstant( Rational{ 0 } );
        _bound = Rational{ -1 };
    }
}

HalfSpace HalfSpace::unit( Eigen::Index size, Eigen::Index state, Rational bound )
{
    Frame coeffs = constant_frame( size, Rational{ 0 } );
    coeffs( state ) = Rational{ 1 };
    return HalfSpace( std::move( coeffs ), std::move( bound ) );
}

std::string HalfSpace::str() const
{
    std::ostringstream os;
    os << "sum{ ";
    for ( Eigen::Index s = 0; s < _coeffs.size(); ++s )
        if ( !_coeffs( s ).is_zero() )
            os << "s" << s << ":" << _coeffs( s ) << " ";
    os << "} <= " << _bound;
    return os.str();
}

bool hs_member( const HalfSpace& h, const Frame& d )
{
    if ( h.empty() )
        return false;
    return Rational{ h.coeffs().dot( d ) } <= h.bound();
}

HalfSpace hs_transform( const Mdp& mdp, const Scheduler& alpha, const HalfSpace& h )
{
    if ( h.empty() )
        return h;

    Frame coeffs = constant_frame( mdp.size(), Rational{ 0 } );
    Rational bound = h.bound();

    for ( std::size_t s = 0; s < mdp.num_states(); ++s )
    {
        const auto& weight = h.coeffs()( static_cast< Eigen::Index >( s ) );
        if ( weight.is_zero() )
            continue;

        if ( mdp.is_bad( s ) )
            bound -= weight;
        else
            coeffs += mdp.actions( s ).at( alpha.at( s ) ).distribution * weight;
    }

    return HalfSpace( std::move( coeffs ), std::move( bound ) );
}

Rational hs_max_linear( const HalfSpace& h, const Frame& weights )
{
    if ( h.empty() )
        throw empty_set_error( "maximum over an empty half-space" );
    if ( weights.size() != h.size() )
        throw std::invalid_argument( "weight vector of the wrong size" );
    if ( ( weights.array() < Rational{ 0 } ).any() )
        throw std::invalid_argument( "weights must be nonnegative" );

    Rational total{ 0 };
    std::vector< Eigen::Index > constrained;

    for ( Eigen::Index s = 0; s < h.size(); ++s )
    {
        if ( h.coeffs()( s ).is_zero() )
            total += weights( s );
        else if ( !weights( s ).is_zero() )
            constrained.push_back( s );
    }

    // fractional knapsack: best weight per unit of budget first
    std::stable_sort( constrained.begin(), constrained.end(), [ & ]( Eigen::Index a, Eigen::Index b ) {
        return weights( a ) / h.coeffs()( a ) > weights( b ) / h.coeffs()( b );
    } );

    Rational budget = h.bound();
    for ( const auto s : constrained )
    {
        const auto& cost = h.coeffs()( s );
        if ( cost <= budget )
        {
            total += weights( s );
            budget -= cost;
        }
        else
        {
            total += weights( s ) * ( budget / cost );
            break;
        }
    }

    return total;
}

bool hs_contains( const HalfSpace& outer, const HalfSpace& inner )
{
    if ( inner.empty() )
        return true;
    if ( outer.empty() )
        return false;
    return hs_max_linear( inner, outer.coeffs() ) <= outer.bound();
}

bool hs_equal( const HalfSpace& lhs, const HalfSpace& rhs ) { return hs_contains( lhs, rhs ) && hs_contains( rhs, lhs ); }

namespace
{

// Values of the positively weighted coordinates of every generating vertex
// that dominates `lower`. Each entry lists values in `coords` order.
struct PositiveParts
{
    std::vector< Eigen::Index > coords;
    std::vector< std::vector< Rational > > parts;
};

class PartSearch
{
    const HalfSpace& _h;
    const Frame& _lower;
    PositiveParts& _out;

    enum class Pick : char
    {
        zero,
        one,
        frac
    };

    std::vector< Pick > _picks;
    // suffix sums of coefficients over coordinates that must not be zero
    std::vector< Rational > _required_tail;

public:
    PartSearch( const HalfSpace& h, const Frame& lower, PositiveParts& out ) : _h{ h }, _lower{ lower }, _out{ out }
    {
        const auto m = _out.coords.size();
        _picks.resize( m );
        _required_tail.assign( m + 1, Rational{ 0 } );
        for ( std::size_t i = m; i-- > 0; )
        {
            const auto s = _out.coords[ i ];
            _required_tail[ i ] = _required_tail[ i + 1 ];
            if ( _lower( s ).sign() > 0 )
                _required_tail[ i ] += _h.coeffs()( s );
        }
    }

    void run() { visit( 0, Rational{ 0 }, -1 ); }

private:
    [[nodiscard]] Rational coeff( std::size_t i ) const { return _h.coeffs()( _out.coords[ i ] ); }

    void visit( std::size_t i, const Rational& ones, long frac )
    {
        const auto m = _out.coords.size();

        if ( i == m )
        {
            leaf( ones, frac );
            return;
        }

        // Every remaining required coordinate costs its full coefficient
        // unless it becomes the single fractional one.
        if ( frac >= 0 && ones + _required_tail[ i ] > _h.bound() )
            return;

        const auto s = _out.coords[ i ];
        const bool required = _lower( s ).sign() > 0;

        if ( ones + coeff( i ) <= _h.bound() )
        {
            _picks[ i ] = Pick::one;
            visit( i + 1, ones + coeff( i ), frac );
        }
        if ( frac < 0 )
        {
            _picks[ i ] = Pick::frac;
            visit( i + 1, ones, static_cast< long >( i ) );
        }
        if ( !required )
        {
            _picks[ i ] = Pick::zero;
            visit( i + 1, ones, frac );
        }
    }

    void leaf( const Rational& ones, long frac )
    {
        const auto m = _out.coords.size();
        const Rational slack = _h.bound() - ones;
        std::vector< Rational > values( m );

        if ( frac < 0 )
        {
            bool all_ones = true;
            for ( std::size_t i = 0; i < m; ++i )
            {
                values[ i ] = _picks[ i ] == Pick::one ? Rational{ 1 } : Rational{ 0 };
                all_ones = all_ones && _picks[ i ] == Pick::one;
            }
            // maximal only if tight or nothing left to raise
            if ( !all_ones && !slack.is_zero() )
                return;
        }
        else
        {
            const auto f = static_cast< std::size_t >( frac );
            const Rational value = slack / coeff( f );
            if ( value.sign() <= 0 || value >= Rational{ 1 } || value < _lower( _out.coords[ f ] ) )
                return;

            for ( std::size_t i = 0; i < m; ++i )
                values[ i ] = _picks[ i ] == Pick::one ? Rational{ 1 } : Rational{ 0 };
            values[ f ] = value;
        }

        _out.parts.push_back( std::move( values ) );
    }
};

PositiveParts positive_parts( const HalfSpace& h, const Frame& lower )
{
    if ( h.empty() )
        throw empty_set_error( "generators of an empty half-space" );
    if ( lower.size() != h.size() )
        throw std::invalid_argument( "lower bound of the wrong size" );

    PositiveParts out;
    for ( Eigen::Index s = 0; s < h.size(); ++s )
        if ( !h.coeffs()( s ).is_zero() )
            out.coords.push_back( s );

    PartSearch( h, lower, out ).run();
    return out;
}

bool frame_less( const Frame& a, const Frame& b )
{
    return std::lexicographical_compare( a.data(), a.data() + a.size(), b.data(), b.data() + b.size() );
}

} // namespace

std::vector< Frame > enumerate_dominating_generators( const HalfSpace& h, const Frame& lower )
{
    const auto parts = positive_parts( h, lower );

    std::vector< Eigen::Index > free_coords;
    for ( Eigen::Index s = 0; s < h.size(); ++s )
        if ( h.coeffs()( s ).is_zero() && lower( s ).is_zero() )
            free_coords.push_back( s );

    std::vector< Frame > out;
    for ( const auto& part : parts.parts )
    {
        Frame base = constant_frame( h.size(), Rational{ 1 } );
        for ( std::size_t i = 0; i < parts.coords.size(); ++i )
            base( parts.coords[ i ] ) = part[ i ];

        // unweighted coordinates range over {0, 1}, forced to 1 when lower > 0
        const std::size_t combos = std::size_t{ 1 } << free_coords.size();
        for ( std::size_t mask = 0; mask < combos; ++mask )
        {
            Frame d = base;
            for ( std::size_t i = 0; i < free_coords.size(); ++i )
                if ( ( mask >> i ) & 1U )
                    d( free_coords[ i ] ) = Rational{ 0 };
            out.push_back( std::move( d ) );
        }
    }

    std::sort( out.begin(), out.end(), frame_less );
    return out;
}

Frame conflict_z_from_lower( const HalfSpace& h, const Frame& lower, ConflictMode mode )
{
    // Unweighted coordinates never matter for the meet below and can always
    // be set to 1, so Z is nonempty exactly when some positive part exists.
    const auto parts = positive_parts( h, lower );

    Frame z = lower;
    if ( parts.parts.empty() )
        return z;

    for ( std::size_t i = 0; i < parts.coords.size(); ++i )
    {
        Rational least = parts.parts.front()[ i ];
        for ( const auto& part : parts.parts )
            least = std::min( least, part[ i ] );
        z( parts.coords[ i ] ) = least;
    }

    if ( mode == ConflictMode::zero_one )
    {
        for ( Eigen::Index s = 0; s < h.size(); ++s )
            if ( h.coeffs()( s ).is_zero() )
                z( s ) = ceil01( z( s ) );
    }

    return z;
}

Frame conflict_z( const Mdp& mdp, const Frame& x_prev, const HalfSpace& h, ConflictMode mode )
{
    return conflict_z_from_lower( h, bellman( mdp, x_prev ), mode );
}

MdpInstance::MdpInstance( const Mdp& mdp, std::size_t scheduler_cap )
    : _mdp{ &mdp }, _property{ mdp.property_frame() }, _scheduler_cap{ scheduler_cap }
{}

bool MdpInstance::below_property( const Frame& x ) const
{
    return x( static_cast< Eigen::Index >( _mdp->initial() ) ) <= _mdp->lambda();
}

HalfSpace MdpInstance::property_down_set() const
{
    return HalfSpace::unit( _mdp->size(), static_cast< Eigen::Index >( _mdp->initial() ), _mdp->lambda() );
}

bool MdpInstance::decide_covers( const HalfSpace& z, const HalfSpace& y, const Scheduler& alpha ) const
{
    if ( alpha.size() != _mdp->num_states() )
        return false;
    for ( std::size_t s = 0; s < alpha.size(); ++s )
        if ( alpha[ s ] >= _mdp->actions( s ).size() )
            return false;

    return hs_contains( z, hs_transform( *_mdp, alpha, y ) );
}

std::optional< bool > MdpInstance::pullback_within( const HalfSpace& lower, const HalfSpace& next ) const
{
    if ( _mdp->scheduler_count( _scheduler_cap ) > _scheduler_cap )
        return std::nullopt;

    bool found = false;
    for_each_scheduler( *_mdp, [ & ]( const Scheduler& alpha ) {
        found = hs_contains( lower, hs_transform( *_mdp, alpha, next ) );
        return !found;
    } );

    if ( found )
        return true;
    return std::nullopt;
}

std::string MdpHeuristic::name() const
{
    switch ( _kind )
    {
    case MdpHeuristicKind::hcob: return "hcob";
    case MdpHeuristicKind::hco01: return "hco01";
    case MdpHeuristicKind::simple_init: return "mdp-simple-init";
    }
    return "?";
}

HalfSpace MdpHeuristic::choose_candidate( const StateOf< MdpInstance >& ) const { return _inst->property_down_set(); }

DecideChoice< MdpInstance > MdpHeuristic::choose_decide( const StateOf< MdpInstance >& state ) const
{
    const auto k = state.k();
    const auto& x_prev = std::get< Frame >( state.x( k - 1 ) );
    auto alpha = argmax_scheduler( _inst->mdp(), x_prev );
    auto z = hs_transform( _inst->mdp(), alpha, state.y( k ) );
    return { std::move( z ), std::move( alpha ) };
}

Frame MdpHeuristic::choose_conflict( const StateOf< MdpInstance >& state ) const
{
    const auto k = state.k();
    const auto& slot = state.x( k - 1 );
    const Frame lower = is_sentinel( slot ) ? _inst->bottom() : bellman( _inst->mdp(), std::get< Frame >( slot ) );

    switch ( _kind )
    {
    case MdpHeuristicKind::hcob: return conflict_z_from_lower( state.y( k ), lower, ConflictMode::meet );
    case MdpHeuristicKind::hco01: return conflict_z_from_lower( state.y( k ), lower, ConflictMode::zero_one );
    case MdpHeuristicKind::simple_init: return lower;
    }
    return lower;
}

} // namespace apdr
