#include "apdr/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace apdr
{

namespace
{

struct Line
{
    std::size_t number;
    std::vector< std::string > tokens;
};

// Non-empty lines with comments stripped, split on whitespace.
std::vector< Line > tokenize( std::string_view text )
{
    std::vector< Line > out;
    std::size_t number = 0;

    while ( !text.empty() )
    {
        const auto eol = text.find( '\n' );
        auto raw = text.substr( 0, eol );
        text = eol == std::string_view::npos ? std::string_view{} : text.substr( eol + 1 );
        ++number;

        if ( const auto hash = raw.find( '#' ); hash != std::string_view::npos )
            raw = raw.substr( 0, hash );

        std::istringstream is{ std::string( raw ) };
        Line line{ number, {} };
        for ( std::string tok; is >> tok; )
            line.tokens.push_back( std::move( tok ) );

        if ( !line.tokens.empty() )
            out.push_back( std::move( line ) );
    }
    return out;
}

std::size_t parse_count( const Line& line, const std::string& tok )
{
    std::size_t value = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ ptr, ec ] = std::from_chars( tok.data(), end, value );
    if ( ec != std::errc{} || ptr != end )
        throw parse_error( line.number, "expected a nonnegative integer, got '" + tok + "'" );
    return value;
}

std::size_t parse_state( const Line& line, const std::string& tok, std::size_t states )
{
    const auto s = parse_count( line, tok );
    if ( s >= states )
        throw index_out_of_range( line.number, s, states );
    return s;
}

StateSet parse_state_list( const Line& line, std::size_t states )
{
    StateSet out( states );
    for ( std::size_t i = 1; i < line.tokens.size(); ++i )
        out.insert( parse_state( line, line.tokens[ i ], states ) );
    return out;
}

void expect_header( const std::vector< Line >& lines, const std::string& kind )
{
    if ( lines.empty() || lines.front().tokens != std::vector< std::string >{ kind } )
        throw parse_error( lines.empty() ? 1 : lines.front().number, "expected header '" + kind + "'" );
}

std::size_t parse_states_line( const std::vector< Line >& lines )
{
    if ( lines.size() < 2 || lines[ 1 ].tokens.front() != "states" || lines[ 1 ].tokens.size() != 2 )
        throw parse_error( lines.size() < 2 ? lines.front().number : lines[ 1 ].number, "expected 'states <n>'" );

    const auto n = parse_count( lines[ 1 ], lines[ 1 ].tokens[ 1 ] );
    if ( n == 0 )
        throw parse_error( lines[ 1 ].number, "a model needs at least one state" );
    return n;
}

void once( std::set< std::string >& seen, const Line& line )
{
    if ( !seen.insert( line.tokens.front() ).second )
        throw parse_error( line.number, "duplicate '" + line.tokens.front() + "' line" );
}

void require( const std::set< std::string >& seen, const std::string& key, std::size_t last_line )
{
    if ( !seen.contains( key ) )
        throw parse_error( last_line, "missing '" + key + "' line" );
}

} // namespace

TransitionSystem parse_ts( std::string_view text )
{
    const auto lines = tokenize( text );
    expect_header( lines, "ts" );
    const auto n = parse_states_line( lines );

    StateSet initial( n );
    StateSet safe( n );
    std::vector< StateSet > delta( n, StateSet( n ) );
    std::set< std::string > seen;

    for ( std::size_t i = 2; i < lines.size(); ++i )
    {
        const auto& line = lines[ i ];
        const auto& key = line.tokens.front();

        if ( key == "initial" )
        {
            once( seen, line );
            initial = parse_state_list( line, n );
        }
        else if ( key == "safe" )
        {
            once( seen, line );
            safe = parse_state_list( line, n );
        }
        else if ( key == "edge" )
        {
            if ( line.tokens.size() != 3 )
                throw parse_error( line.number, "expected 'edge <src> <dst>'" );
            const auto src = parse_state( line, line.tokens[ 1 ], n );
            delta[ src ].insert( parse_state( line, line.tokens[ 2 ], n ) );
        }
        else
        {
            throw parse_error( line.number, "unknown directive '" + key + "'" );
        }
    }

    require( seen, "initial", lines.back().number );
    require( seen, "safe", lines.back().number );

    return TransitionSystem( n, std::move( initial ), std::move( delta ), std::move( safe ) );
}

std::string serialize_ts( const TransitionSystem& ts )
{
    std::ostringstream os;
    os << "ts\nstates " << ts.num_states << "\ninitial";
    for ( const auto s : ts.initial.members() )
        os << " " << s;
    os << "\nsafe";
    for ( const auto s : ts.safe.members() )
        os << " " << s;
    os << "\n";
    for ( std::size_t s = 0; s < ts.num_states; ++s )
        for ( const auto t : ts.delta[ s ].members() )
            os << "edge " << s << " " << t << "\n";
    return os.str();
}

Mdp parse_mdp( std::string_view text )
{
    const auto lines = tokenize( text );
    expect_header( lines, "mdp" );
    const auto n = parse_states_line( lines );

    std::size_t initial = 0;
    StateSet bad( n );
    Rational lambda;
    std::vector< std::vector< Action > > actions( n );
    std::set< std::string > seen;

    for ( std::size_t i = 2; i < lines.size(); ++i )
    {
        const auto& line = lines[ i ];
        const auto& key = line.tokens.front();

        if ( key == "initial" )
        {
            once( seen, line );
            if ( line.tokens.size() != 2 )
                throw parse_error( line.number, "expected 'initial <state>'" );
            initial = parse_state( line, line.tokens[ 1 ], n );
        }
        else if ( key == "bad" )
        {
            once( seen, line );
            bad = parse_state_list( line, n );
        }
        else if ( key == "lambda" )
        {
            once( seen, line );
            if ( line.tokens.size() != 2 )
                throw parse_error( line.number, "expected 'lambda <rational>'" );
            try
            {
                lambda = Rational::parse( line.tokens[ 1 ] );
            }
            catch ( const std::invalid_argument& e )
            {
                throw parse_error( line.number, e.what() );
            }
            if ( lambda.sign() < 0 || lambda > Rational{ 1 } )
                throw parse_error( line.number, "lambda must lie in [0, 1]" );
        }
        else if ( key == "action" )
        {
            if ( line.tokens.size() < 4 )
                throw parse_error( line.number, "expected 'action <state> <label> <target>:<prob> ...'" );

            const auto s = parse_state( line, line.tokens[ 1 ], n );
            Action action{ line.tokens[ 2 ], constant_frame( static_cast< Eigen::Index >( n ), Rational{ 0 } ) };

            for ( const auto& other : actions[ s ] )
                if ( other.label == action.label )
                    throw parse_error( line.number, "duplicate action '" + action.label + "'" );

            std::vector< bool > used( n, false );
            for ( std::size_t t = 3; t < line.tokens.size(); ++t )
            {
                const auto& tok = line.tokens[ t ];
                const auto colon = tok.find( ':' );
                if ( colon == std::string::npos )
                    throw parse_error( line.number, "expected '<target>:<prob>', got '" + tok + "'" );

                const auto target = parse_state( line, tok.substr( 0, colon ), n );
                if ( used[ target ] )
                    throw parse_error( line.number, "target " + std::to_string( target ) + " listed twice" );
                used[ target ] = true;

                Rational p;
                try
                {
                    p = Rational::parse( std::string_view( tok ).substr( colon + 1 ) );
                }
                catch ( const std::invalid_argument& e )
                {
                    throw parse_error( line.number, e.what() );
                }
                if ( p.sign() <= 0 )
                    throw parse_error( line.number, "probabilities must be positive" );

                action.distribution( static_cast< Eigen::Index >( target ) ) = p;
            }

            actions[ s ].push_back( std::move( action ) );
        }
        else
        {
            throw parse_error( line.number, "unknown directive '" + key + "'" );
        }
    }

    require( seen, "initial", lines.back().number );
    require( seen, "bad", lines.back().number );
    require( seen, "lambda", lines.back().number );

    return Mdp( n, std::move( actions ), initial, std::move( bad ), std::move( lambda ) );
}

std::string serialize_mdp( const Mdp& mdp )
{
    std::ostringstream os;
    os << "mdp\nstates " << mdp.num_states() << "\ninitial " << mdp.initial() << "\nbad";
    for ( const auto s : mdp.bad().members() )
        os << " " << s;
    os << "\nlambda " << mdp.lambda() << "\n";

    for ( std::size_t s = 0; s < mdp.num_states(); ++s )
    {
        for ( const auto& action : mdp.actions( s ) )
        {
            os << "action " << s << " " << action.label;
            for ( Eigen::Index t = 0; t < action.distribution.size(); ++t )
                if ( !action.distribution( t ).is_zero() )
                    os << " " << t << ":" << action.distribution( t );
            os << "\n";
        }
    }
    return os.str();
}

Model parse_model( std::string_view text )
{
    const auto lines = tokenize( text );
    if ( lines.empty() )
        throw parse_error( 1, "empty model file" );

    const auto& header = lines.front().tokens.front();
    if ( header == "ts" )
        return parse_ts( text );
    if ( header == "mdp" )
        return parse_mdp( text );
    throw parse_error( lines.front().number, "unknown model kind '" + header + "'" );
}

std::string read_text_file( const std::filesystem::path& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw std::runtime_error( "cannot open " + path.string() );
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Model load_model( const std::filesystem::path& path ) { return parse_model( read_text_file( path ) ); }

} // namespace apdr
