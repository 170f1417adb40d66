#pragma once

// Fixture loading and random generators shared by the unit and acceptance
// suites.

#include "cig/interface_model.hpp"
#include "cig/statechart.hpp"
#include "cig/test_algebra.hpp"
#include "oracle/set_oracle.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace support
{

inline std::string fixture_path( const std::string& name )
{
    return std::string( CIG_FIXTURE_DIR ) + "/" + name;
}

inline std::string read_text( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw std::runtime_error( "cannot open " + path );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline cig::Statechart vending_machine()
{
    return cig::parse_statechart( read_text( fixture_path( "vending_machine.sc" ) ) );
}

inline cig::Statechart dispenser()
{
    return cig::parse_statechart( read_text( fixture_path( "dispenser.sc" ) ) );
}

inline cig::ChartSet fixture_pair()
{
    return cig::ChartSet( { vending_machine(), dispenser() } );
}

inline std::string service_label( int i )
{
    return "s" + std::to_string( i );
}

/// Every component over `universe_size` services: each service is absent,
/// provided or required (3^n components).
inline std::vector< oracle::RawComponent > all_raw_components( int universe_size )
{
    std::vector< oracle::RawComponent > out;
    int total = 1;
    for ( int i = 0; i < universe_size; ++i )
        total *= 3;
    for ( int code = 0; code < total; ++code ) {
        oracle::RawComponent c;
        int rest = code;
        for ( int i = 0; i < universe_size; ++i, rest /= 3 ) {
            if ( rest % 3 == 1 )
                c.provided.insert( service_label( i ) );
            else if ( rest % 3 == 2 )
                c.required.insert( service_label( i ) );
        }
        out.push_back( std::move( c ) );
    }
    return out;
}

/// Up to `max_services` services drawn from a universe of `universe_size`.
inline oracle::RawComponent random_raw_component( std::mt19937& rng, int universe_size, int max_services )
{
    std::vector< int > ids( static_cast< std::size_t >( universe_size ) );
    for ( int i = 0; i < universe_size; ++i )
        ids[ static_cast< std::size_t >( i ) ] = i;
    std::shuffle( ids.begin(), ids.end(), rng );
    int count = std::uniform_int_distribution<>( 0, max_services )( rng );

    oracle::RawComponent c;
    for ( int k = 0; k < count; ++k ) {
        auto name = service_label( ids[ static_cast< std::size_t >( k ) ] );
        ( std::bernoulli_distribution( 0.5 )( rng ) ? c.provided : c.required ).insert( name );
    }
    return c;
}

inline cig::Component to_component( const std::string& name, const oracle::RawComponent& raw )
{
    cig::ServiceSet p, r;
    for ( const auto& s : raw.provided )
        p.emplace( s );
    for ( const auto& s : raw.required )
        r.emplace( s );
    return cig::make_component( name, std::move( p ), std::move( r ) );
}

inline oracle::Names names_of( const cig::ServiceSet& set )
{
    oracle::Names out;
    for ( const auto& s : set )
        out.insert( s.str() );
    return out;
}

/// A valid chart with 1..6 states and 0..10 transitions, exercising every
/// grammar feature: automatic transitions, guards, multiple actions and
/// parameter lists.
inline cig::Statechart random_chart( std::mt19937& rng, const std::string& name )
{
    auto pick = [ & ]( int lo, int hi ) { return std::uniform_int_distribution<>( lo, hi )( rng ); };
    auto coin = [ & ]( double p ) { return std::bernoulli_distribution( p )( rng ); };

    static const std::vector< std::string > guards{ "credit==0", "credit<price", " x >= 1 && y ", "a#b", "",
                                                     "ready(1)" };
    static const std::vector< std::string > params{ "1", "2..max", "x_y", "-3", "a.b", "\"q\"" };

    cig::Statechart chart;
    chart.component_name = name;
    int states = pick( 1, 6 );
    for ( int i = 0; i < states; ++i )
        chart.states.push_back( "S" + std::to_string( i ) );
    chart.initial = chart.states[ static_cast< std::size_t >( pick( 0, states - 1 ) ) ];

    int transitions = pick( 0, 10 );
    for ( int i = 0; i < transitions; ++i ) {
        cig::Transition t;
        t.source = chart.states[ static_cast< std::size_t >( pick( 0, states - 1 ) ) ];
        t.target = chart.states[ static_cast< std::size_t >( pick( 0, states - 1 ) ) ];
        if ( coin( 0.8 ) )
            t.event = cig::ServiceName( "e" + std::to_string( pick( 0, 5 ) ) );
        if ( coin( 0.3 ) )
            t.guard = guards[ static_cast< std::size_t >( pick( 0, static_cast< int >( guards.size() ) - 1 ) ) ];
        int actions = pick( 0, 2 );
        for ( int a = 0; a < actions; ++a ) {
            cig::ActionEmission emission{ cig::ServiceName( "a" + std::to_string( pick( 0, 5 ) ) ), {} };
            int n = pick( 0, 3 );
            for ( int k = 0; k < n; ++k )
                emission.params.push_back( params[ static_cast< std::size_t >( pick( 0, 5 ) ) ] );
            t.actions.push_back( std::move( emission ) );
        }
        chart.transitions.push_back( std::move( t ) );
    }
    return chart;
}

inline cig::TestLibrary random_library( std::mt19937& rng, const std::string& prefix, int max_cases,
                                        cig::TestOrigin origin )
{
    auto pick = [ & ]( int lo, int hi ) { return std::uniform_int_distribution<>( lo, hi )( rng ); };
    std::vector< cig::TestCase > cases;
    int n = pick( 0, max_cases );
    for ( int i = 0; i < n; ++i ) {
        cig::TestCase c;
        c.id = prefix + std::to_string( i );
        c.owner = "Owner";
        c.origin = origin;
        int services = pick( origin == cig::TestOrigin::Generated ? 1 : 0, 3 );
        for ( int k = 0; k < services; ++k )
            c.services.emplace( service_label( pick( 0, 9 ) ) );
        c.steps.push_back( cig::TestStep{ cig::ServiceName( "ev" ), std::nullopt, {} } );
        cases.push_back( std::move( c ) );
    }
    return cig::TestLibrary( std::move( cases ) );
}

inline cig::ServiceSet random_services( std::mt19937& rng, int universe_size )
{
    cig::ServiceSet out;
    for ( int i = 0; i < universe_size; ++i )
        if ( std::bernoulli_distribution( 0.3 )( rng ) )
            out.emplace( service_label( i ) );
    return out;
}

} // namespace support
