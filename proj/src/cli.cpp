#include "apdr/cli.hpp"

#include "apdr/engine.hpp"
#include "apdr/invariants.hpp"
#include "apdr/io.hpp"
#include "apdr/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>

namespace apdr
{

namespace
{

class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

const std::vector< std::string > ts_heuristics{ "simple-init", "simple-final" };
const std::vector< std::string > mdp_heuristics{ "hcob", "hco01", "mdp-simple-init" };

std::unique_ptr< Heuristic< TsInstance > > make_ts_heuristic( const TsInstance& inst, const std::string& name )
{
    if ( name == "simple-init" )
        return std::make_unique< SimpleTsHeuristic >( inst, ConflictChoice::initial );
    if ( name == "simple-final" )
        return std::make_unique< SimpleTsHeuristic >( inst, ConflictChoice::final );
    throw usage_error( "heuristic '" + name + "' does not apply to transition systems" );
}

std::unique_ptr< Heuristic< MdpInstance > > make_mdp_heuristic( const MdpInstance& inst, const std::string& name )
{
    if ( name == "hcob" )
        return std::make_unique< MdpHeuristic >( inst, MdpHeuristicKind::hcob );
    if ( name == "hco01" )
        return std::make_unique< MdpHeuristic >( inst, MdpHeuristicKind::hco01 );
    if ( name == "mdp-simple-init" )
        return std::make_unique< MdpHeuristic >( inst, MdpHeuristicKind::simple_init );
    throw usage_error( "heuristic '" + name + "' does not apply to MDPs" );
}

template< ProblemInstance I >
const char* verdict_name( const SolveResult< I >& r )
{
    if ( r.holds() )
        return "holds";
    if ( r.refuted() )
        return "refuted";
    return "unknown";
}

template< ProblemInstance I >
int exit_code( const SolveResult< I >& r )
{
    if ( r.holds() )
        return exit_holds;
    if ( r.refuted() )
        return exit_refuted;
    return exit_unknown;
}

template< ProblemInstance I >
nlohmann::json witness_json( const I& inst, const SolveResult< I >& r )
{
    if ( const auto* h = std::get_if< Holds< typename I::Pos > >( &r.verdict ) )
        return inst.format( h->witness );
    if ( const auto* f = std::get_if< Refuted< typename I::Neg > >( &r.verdict ) )
    {
        auto out = nlohmann::json::array();
        for ( const auto& y : f->negative )
            out.push_back( inst.format_neg( y ) );
        return out;
    }
    return nullptr;
}

struct SolveArgs
{
    std::string model;
    std::string heuristic;
    std::size_t max_steps = 100000;
    bool check_invariants = false;
    std::string trace;
    bool json = false;
};

template< ProblemInstance I >
int run_solve( const I& inst, const Heuristic< I >& heuristic, const SolveArgs& args, std::ostream& out, std::ostream& err )
{
    SolveOptions options;
    options.budget = args.max_steps;
    options.checked = args.check_invariants;
    options.retain_states = args.check_invariants;

    const auto result = solve( inst, heuristic, options );

    if ( !args.trace.empty() )
    {
        std::ofstream trace( args.trace, std::ios::binary );
        if ( !trace )
            throw usage_error( "cannot write trace to " + args.trace );
        trace << format_trace( result.trace );
    }

    if ( args.check_invariants )
    {
        const auto report = check_invariants( inst, result.trace );
        for ( const auto& v : report.violations() )
            err << "invariant violated: " << v << "\n";
    }

    if ( args.json )
    {
        nlohmann::json doc;
        doc[ "verdict" ] = verdict_name( result );
        doc[ "steps" ] = result.steps();
        doc[ "rule_counts" ] = { { "unfold", result.counts.unfold },
                                 { "candidate", result.counts.candidate },
                                 { "decide", result.counts.decide },
                                 { "conflict", result.counts.conflict } };
        doc[ "witness" ] = witness_json( inst, result );
        out << doc.dump() << "\n";
    }
    else
    {
        out << "verdict: " << verdict_name( result ) << "\n";
        out << "steps: " << result.steps() << "\n";
        const auto w = witness_json( inst, result );
        if ( w.is_string() )
            out << "witness: " << w.template get< std::string >() << "\n";
        else if ( w.is_array() )
            for ( const auto& y : w )
                out << "witness: " << y.template get< std::string >() << "\n";
    }

    return exit_code( result );
}

int cmd_solve( const SolveArgs& args, std::ostream& out, std::ostream& err )
{
    const auto model = load_model( args.model );

    if ( const auto* ts = std::get_if< TransitionSystem >( &model ) )
    {
        TsInstance inst( *ts );
        const auto h = make_ts_heuristic( inst, args.heuristic );
        return run_solve( inst, *h, args, out, err );
    }

    const auto& mdp = std::get< Mdp >( model );
    MdpInstance inst( mdp );
    const auto h = make_mdp_heuristic( inst, args.heuristic );
    return run_solve( inst, *h, args, out, err );
}

int cmd_oracle( const std::string& path, std::ostream& out )
{
    const auto model = load_model( path );

    if ( const auto* ts = std::get_if< TransitionSystem >( &model ) )
    {
        const auto r = ts_oracle( *ts );
        out << "reachable = " << r.reachable.str() << ", verdict = " << ( r.safe ? "holds" : "refuted" ) << "\n";
        return r.safe ? exit_holds : exit_refuted;
    }

    const auto r = mdp_max_reach_exact( std::get< Mdp >( model ) );
    out << "max_prob = " << r.max_prob << ", verdict = " << ( r.verdict ? "holds" : "refuted" ) << "\n";
    return r.verdict ? exit_holds : exit_refuted;
}

struct BenchRow
{
    std::string model;
    std::string heuristic;
    std::string verdict;
    RuleCounts counts;
    long long wall_ms = 0;
};

template< ProblemInstance I >
BenchRow bench_one( const I& inst, const Heuristic< I >& heuristic, std::size_t max_steps )
{
    SolveOptions options;
    options.budget = max_steps;
    options.checked = false;

    const auto start = std::chrono::steady_clock::now();
    const auto result = solve( inst, heuristic, options );
    const auto elapsed = std::chrono::steady_clock::now() - start;

    BenchRow row;
    row.verdict = verdict_name( result );
    row.counts = result.counts;
    row.wall_ms = std::chrono::duration_cast< std::chrono::milliseconds >( elapsed ).count();
    return row;
}

std::vector< std::string > split_csv( const std::string& text )
{
    std::vector< std::string > out;
    std::string cur;
    for ( const char c : text + "," )
    {
        if ( c == ',' )
        {
            if ( !cur.empty() )
                out.push_back( cur );
            cur.clear();
        }
        else if ( c != ' ' )
        {
            cur += c;
        }
    }
    return out;
}

int cmd_bench( const std::string& dir, const std::string& heuristics_csv, std::size_t max_steps, const std::string& out_path )
{
    namespace fs = std::filesystem;

    if ( !fs::is_directory( dir ) )
        throw usage_error( "not a directory: " + dir );

    const auto heuristics = split_csv( heuristics_csv );
    if ( heuristics.empty() )
        throw usage_error( "no heuristics given" );

    std::vector< fs::path > paths;
    for ( const auto& entry : fs::directory_iterator( dir ) )
    {
        const auto ext = entry.path().extension();
        if ( entry.is_regular_file() && ( ext == ".ts" || ext == ".mdp" ) )
            paths.push_back( entry.path() );
    }
    std::sort( paths.begin(), paths.end() );

    // parse everything first so a bad file or heuristic fails before any run
    std::vector< Model > models;
    for ( const auto& p : paths )
        models.push_back( load_model( p ) );

    for ( const auto& model : models )
    {
        const auto& valid = std::holds_alternative< TransitionSystem >( model ) ? ts_heuristics : mdp_heuristics;
        for ( const auto& h : heuristics )
            if ( std::find( valid.begin(), valid.end(), h ) == valid.end() )
                throw usage_error( "heuristic '" + h + "' does not apply to every model in " + dir );
    }

    std::vector< BenchRow > rows;
    for ( std::size_t i = 0; i < models.size(); ++i )
    {
        for ( const auto& name : heuristics )
        {
            BenchRow row;
            if ( const auto* ts = std::get_if< TransitionSystem >( &models[ i ] ) )
            {
                TsInstance inst( *ts );
                row = bench_one( inst, *make_ts_heuristic( inst, name ), max_steps );
            }
            else
            {
                MdpInstance inst( std::get< Mdp >( models[ i ] ) );
                row = bench_one( inst, *make_mdp_heuristic( inst, name ), max_steps );
            }
            row.model = paths[ i ].string();
            row.heuristic = name;
            rows.push_back( std::move( row ) );
        }
    }

    std::sort( rows.begin(), rows.end(), []( const BenchRow& a, const BenchRow& b ) {
        return std::tie( a.model, a.heuristic ) < std::tie( b.model, b.heuristic );
    } );

    std::ofstream csv( out_path, std::ios::binary );
    if ( !csv )
        throw usage_error( "cannot write " + out_path );

    csv << "model,heuristic,verdict,steps,unfold,candidate,decide,conflict,wall_ms\n";
    for ( const auto& r : rows )
    {
        csv << r.model << "," << r.heuristic << "," << r.verdict << "," << r.counts.total() << "," << r.counts.unfold << ","
            << r.counts.candidate << "," << r.counts.decide << "," << r.counts.conflict << "," << r.wall_ms << "\n";
    }
    return 0;
}

} // namespace

int cli_main( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Adjoint PDR solver for transition systems and MDP max-reachability", "apdr" };
    app.require_subcommand( 1 );

    SolveArgs solve_args;
    auto* solve = app.add_subcommand( "solve", "Run the PDR engine on a model" );
    solve->add_option( "--model", solve_args.model, "Model file (.ts or .mdp)" )->required();
    solve->add_option( "--heuristic", solve_args.heuristic, "simple-init, simple-final, hcob, hco01 or mdp-simple-init" )
        ->required();
    solve->add_option( "--max-steps", solve_args.max_steps, "Rule application budget" )->check( CLI::PositiveNumber );
    solve->add_flag( "--check-invariants", solve_args.check_invariants, "Validate choices and invariants at every step" );
    solve->add_option( "--trace", solve_args.trace, "Write the rule trace to this file" );
    solve->add_flag( "--json", solve_args.json, "Print the result as JSON" );

    std::string oracle_model;
    auto* oracle = app.add_subcommand( "oracle", "Compute the exact answer by enumeration" );
    oracle->add_option( "--model", oracle_model, "Model file" )->required();

    std::string bench_dir;
    std::string bench_heuristics;
    std::size_t bench_steps = 100000;
    std::string bench_out;
    auto* bench = app.add_subcommand( "bench", "Run heuristics over a directory of models" );
    bench->add_option( "--models", bench_dir, "Directory of models" )->required();
    bench->add_option( "--heuristics", bench_heuristics, "Comma-separated heuristic names" )->required();
    bench->add_option( "--max-steps", bench_steps, "Rule application budget per run" )->check( CLI::PositiveNumber );
    bench->add_option( "--out", bench_out, "CSV output path" )->required();

    std::vector< const char* > argv{ "apdr" };
    for ( const auto& a : args )
        argv.push_back( a.c_str() );

    try
    {
        app.parse( static_cast< int >( argv.size() ), argv.data() );
    }
    catch ( const CLI::Success& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e, out, err );
        return exit_usage;
    }

    try
    {
        if ( *solve )
            return cmd_solve( solve_args, out, err );
        if ( *oracle )
            return cmd_oracle( oracle_model, out );
        return cmd_bench( bench_dir, bench_heuristics, bench_steps, bench_out );
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

int cli_main( int argc, char** argv )
{
    std::vector< std::string > args( argv + 1, argv + argc );
    return cli_main( args, std::cout, std::cerr );
}

} // namespace apdr
