#include "cig/cli.hpp"

#include "cig/cig_builder.hpp"
#include "cig/errors.hpp"
#include "cig/interface_model.hpp"
#include "cig/statechart.hpp"
#include "cig/test_algebra.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cig::cli
{

namespace
{

// Bad command line or unreadable input; maps to exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string read_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw UsageError( path + ": cannot read file" );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Statechart read_chart( const std::string& path )
{
    auto text = read_file( path );
    try {
        return parse_statechart( text );
    } catch ( const ParseError& e ) {
        throw UsageError( path + ":" + e.what() );
    }
}

ChartSet read_charts( const std::vector< std::string >& paths )
{
    std::vector< Statechart > charts;
    for ( const auto& path : paths )
        charts.push_back( read_chart( path ) );
    return ChartSet( std::move( charts ) );
}

std::string with_newline( std::string text )
{
    if ( text.empty() || text.back() != '\n' )
        text += '\n';
    return text;
}

void emit( const std::string& text, const std::string& out_path, std::ostream& out )
{
    if ( out_path.empty() ) {
        out << with_newline( text );
        return;
    }
    std::ofstream file( out_path, std::ios::binary | std::ios::trunc );
    if ( !file )
        throw UsageError( out_path + ": cannot write file" );
    file << with_newline( text );
}

void require_charts( const std::vector< std::string >& files, std::size_t minimum, const char* command )
{
    if ( files.size() < minimum )
        throw UsageError( std::string( command ) + ": needs at least " + std::to_string( minimum )
                          + " statechart files" );
}

void warn( RunReport& report, std::ostream& err, std::string message )
{
    err << "warning: " << message << "\n";
    report.warnings.push_back( std::move( message ) );
}

std::string classification_table( const ChartSet& charts, const std::map< StateRef, Classification >& kinds )
{
    std::size_t cw = 9, sw = 5;
    for ( const auto& [ ref, kind ] : kinds ) {
        cw = std::max( cw, ref.component.size() );
        sw = std::max( sw, ref.state.size() );
    }
    std::ostringstream table;
    table << std::left << std::setw( static_cast< int >( cw + 2 ) ) << "component"
          << std::setw( static_cast< int >( sw + 2 ) ) << "state" << "classification\n";
    for ( const auto& chart : charts.charts() )
        for ( const auto& state : chart.states ) {
            StateRef ref{ chart.component_name, state };
            table << std::setw( static_cast< int >( cw + 2 ) ) << ref.component
                  << std::setw( static_cast< int >( sw + 2 ) ) << ref.state << kinds.at( ref ).label() << "\n";
        }
    return table.str();
}

struct Options
{
    std::vector< std::string > files;
    std::string out;
    std::string format = "dot";
    bool report = false;
    std::string cig_path;
    std::string t1, t2, composition, tnew;
};

int cmd_parse( const Options& opt, RunReport& report, std::ostream& out, std::ostream& err )
{
    int code = Success;
    std::string text;
    for ( const auto& path : opt.files ) {
        try {
            text += serialize_statechart( read_chart( path ) );
        } catch ( const UsageError& e ) {
            err << "error: " << e.what() << "\n";
            code = InputError;
        }
    }
    if ( !text.empty() )
        emit( text, opt.out, out );
    report.exit_code = code;
    return code;
}

int cmd_compose( const Options& opt, std::ostream& out )
{
    require_charts( opt.files, 2, "compose" );
    auto charts = read_charts( opt.files );
    std::vector< Component > components;
    for ( const auto& chart : charts.charts() )
        components.push_back( extract_interfaces( chart ) );
    emit( composition_to_json( compose_many( components ) ), opt.out, out );
    return Success;
}

int cmd_cig( const Options& opt, RunReport& report, std::ostream& out, std::ostream& err )
{
    require_charts( opt.files, 2, "cig" );
    auto charts = read_charts( opt.files );
    auto cig = build_cig( charts );

    for ( const auto& node : cig.nodes )
        if ( node.classification.provided() && node.classification.required() )
            warn( report, err, "state " + to_string( node.ref ) + " is both a provided and a required interface" );

    emit( opt.format == "json" ? cig_to_json( cig ) : cig_to_dot( cig ), opt.out, out );
    if ( opt.report )
        out << classification_table( charts, classify_states( charts ) );
    return Success;
}

int cmd_tests_gen( const Options& opt, std::ostream& out )
{
    require_charts( opt.files, 1, "tests gen" );
    auto charts = read_charts( opt.files );
    auto cig = cig_from_json( read_file( opt.cig_path ) );
    emit( library_to_json( generate_new_tests( cig, charts ) ), opt.out, out );
    return Success;
}

int cmd_tests_compose( const Options& opt, std::ostream& out )
{
    auto t1 = library_from_json( read_file( opt.t1 ) );
    auto t2 = library_from_json( read_file( opt.t2 ) );
    auto satisfied = satisfied_from_composition_json( read_file( opt.composition ) );
    auto tnew = library_from_json( read_file( opt.tnew ) );
    emit( composed_library_to_json( compose_libraries( t1, t2, satisfied, tnew ) ), opt.out, out );
    return Success;
}

} // namespace

RunReport run( std::span< const std::string > args, std::ostream& out, std::ostream& err )
{
    RunReport report;
    Options opt;

    CLI::App app{ "Component interaction graphs and composed test libraries from statecharts", "cig" };
    app.require_subcommand( 1 );

    auto* parse = app.add_subcommand( "parse", "Validate statecharts and print their canonical form" );
    parse->add_option( "files", opt.files, "Statechart files" )->required();
    parse->add_option( "--out", opt.out, "Write output to PATH" );

    auto* compose = app.add_subcommand( "compose", "Compose the components described by statecharts" );
    compose->add_option( "files", opt.files, "Statechart files, composed in argument order" )->required();
    compose->add_option( "--out", opt.out, "Write output to PATH" );

    auto* cig_cmd = app.add_subcommand( "cig", "Build the component interaction graph" );
    cig_cmd->add_option( "files", opt.files, "Statechart files" )->required();
    cig_cmd->add_option( "--format", opt.format, "Output format" )->check( CLI::IsMember( { "dot", "json" } ) );
    cig_cmd->add_option( "--out", opt.out, "Write output to PATH" );
    cig_cmd->add_flag( "--report", opt.report, "Print the state classification table" );

    auto* tests = app.add_subcommand( "tests", "Test library operations" );
    tests->require_subcommand( 1 );
    auto* gen = tests->add_subcommand( "gen", "Generate one test per CIG edge" );
    gen->add_option( "--cig", opt.cig_path, "CIG JSON file" )->required();
    gen->add_option( "files", opt.files, "Statechart files the CIG was built from" )->required();
    gen->add_option( "--out", opt.out, "Write output to PATH" );
    auto* tcompose = tests->add_subcommand( "compose", "Compose two test libraries" );
    tcompose->add_option( "--t1", opt.t1, "First test library" )->required();
    tcompose->add_option( "--t2", opt.t2, "Second test library" )->required();
    tcompose->add_option( "--composition", opt.composition, "Composition JSON from `cig compose`" )->required();
    tcompose->add_option( "--tnew", opt.tnew, "Generated test library" )->required();
    tcompose->add_option( "--out", opt.out, "Write output to PATH" );

    try {
        app.parse( std::vector< std::string >( args.rbegin(), args.rend() ) );
    } catch ( const CLI::CallForHelp& ) {
        out << app.help();
        return report;
    } catch ( const CLI::CallForAllHelp& ) {
        out << app.help( "", CLI::AppFormatMode::All );
        return report;
    } catch ( const CLI::ParseError& e ) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        report.exit_code = InputError;
        return report;
    }

    report.inputs = opt.files;
    for ( const auto* path : { &opt.cig_path, &opt.t1, &opt.t2, &opt.composition, &opt.tnew } )
        if ( !path->empty() )
            report.inputs.push_back( *path );

    try {
        if ( parse->parsed() ) {
            report.command = "parse";
            cmd_parse( opt, report, out, err );
        } else if ( compose->parsed() ) {
            report.command = "compose";
            report.exit_code = cmd_compose( opt, out );
        } else if ( cig_cmd->parsed() ) {
            report.command = "cig";
            report.exit_code = cmd_cig( opt, report, out, err );
        } else if ( gen->parsed() ) {
            report.command = "tests gen";
            report.exit_code = cmd_tests_gen( opt, out );
        } else {
            report.command = "tests compose";
            report.exit_code = cmd_tests_compose( opt, out );
        }
    } catch ( const NotComposable& e ) {
        err << "error: " << e.what() << "\n";
        report.exit_code = DomainError;
    } catch ( const NoInteraction& e ) {
        err << "error: " << e.what() << "\n";
        report.exit_code = DomainError;
    } catch ( const DuplicateTestId& e ) {
        err << "error: " << e.what() << "\n";
        report.exit_code = DomainError;
    } catch ( const UnreachableProvider& e ) {
        err << "error: " << e.what() << "\n";
        report.exit_code = DomainError;
    } catch ( const std::exception& e ) {
        // Parse, schema and modelling errors in the inputs.
        err << "error: " << e.what() << "\n";
        report.exit_code = InputError;
    }
    return report;
}

} // namespace cig::cli
