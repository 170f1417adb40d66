#include "cig/test_algebra.hpp"

#include "cig/errors.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace cig
{

TestLibrary::TestLibrary( std::vector< TestCase > cases ) : _cases{ std::move( cases ) }
{
    std::set< std::string_view > ids;
    for ( const auto& c : _cases ) {
        if ( c.id.empty() )
            throw std::invalid_argument( "test case with empty id" );
        if ( c.origin == TestOrigin::Generated && c.services.empty() )
            throw std::invalid_argument( "generated test case " + c.id + " references no service" );
        if ( !ids.insert( c.id ).second )
            throw DuplicateTestId( "duplicate test id '" + c.id + "'" );
    }
}

const TestCase* TestLibrary::find( std::string_view id ) const
{
    auto it = std::find_if( _cases.begin(), _cases.end(), [ & ]( const TestCase& c ) { return c.id == id; } );
    return it == _cases.end() ? nullptr : &*it;
}

namespace
{

bool intersects( const ServiceSet& a, const ServiceSet& b )
{
    return std::any_of( a.begin(), a.end(), [ & ]( const ServiceName& s ) { return b.contains( s ); } );
}

void reject_reserved_ids( const TestLibrary& library )
{
    for ( const auto& c : library.cases() )
        if ( c.id.starts_with( generated_id_prefix ) )
            throw DuplicateTestId( "authored test id '" + c.id + "' uses the reserved prefix '"
                                   + std::string( generated_id_prefix ) + "'" );
}

} // namespace

SatisfiedSplit satisfied_tests( const TestLibrary& t1, const TestLibrary& t2, const ServiceSet& satisfied )
{
    reject_reserved_ids( t1 );
    reject_reserved_ids( t2 );

    std::vector< TestCase > retained;
    std::vector< TestCase > removed;
    for ( const auto* library : { &t1, &t2 } )
        for ( const auto& c : library->cases() )
            ( intersects( c.services, satisfied ) ? removed : retained ).push_back( c );

    for ( const auto& c : t2.cases() )
        if ( t1.find( c.id ) )
            throw DuplicateTestId( "test id '" + c.id + "' appears in both libraries" );

    return { TestLibrary( std::move( retained ) ), TestLibrary( std::move( removed ) ) };
}

std::string generated_test_id( const CigEdge& edge )
{
    return std::string( generated_id_prefix ) + edge.from.component + "_" + edge.from.state + "_" + edge.service.str()
           + "_" + edge.to.component + "_" + edge.to.state;
}

namespace
{

struct PathLabel
{
    std::vector< ServiceName > events;
    std::vector< TestStep > steps;
};

// Cheapest event sequence from the initial state to each state. Automatic
// transitions cost nothing; ties go to the lexicographically smallest event
// sequence. Guards are ignored.
std::vector< std::optional< PathLabel > > shortest_event_paths( const Statechart& chart )
{
    const auto n = chart.states.size();
    std::vector< std::optional< PathLabel > > best( n );
    std::vector< bool > settled( n, false );

    using Key = std::pair< std::size_t, std::vector< ServiceName > >;
    using Entry = std::pair< Key, std::size_t >;
    std::priority_queue< Entry, std::vector< Entry >, std::greater<> > queue;

    auto start = chart.state_index( chart.initial );
    best[ start ] = PathLabel{};
    queue.push( { { 0, {} }, start } );

    while ( !queue.empty() ) {
        auto [ key, u ] = queue.top();
        queue.pop();
        if ( settled[ u ] )
            continue;
        settled[ u ] = true;

        for ( const auto& t : chart.transitions ) {
            if ( t.source != chart.states[ u ] )
                continue;
            auto v = chart.state_index( t.target );
            if ( settled[ v ] )
                continue;

            PathLabel next = *best[ u ];
            StateRef landed{ chart.component_name, t.target };
            std::vector< ServiceName > emitted;
            for ( const auto& a : t.actions )
                emitted.push_back( a.action );

            if ( t.event ) {
                next.events.push_back( *t.event );
                next.steps.push_back( TestStep{ *t.event, landed, std::move( emitted ) } );
            } else if ( !next.steps.empty() ) {
                auto& last = next.steps.back();
                last.expected_state = landed;
                last.expected_actions.insert( last.expected_actions.end(), emitted.begin(), emitted.end() );
            }

            Key candidate{ next.events.size(), next.events };
            if ( !best[ v ] || candidate < Key{ best[ v ]->events.size(), best[ v ]->events } ) {
                best[ v ] = std::move( next );
                queue.push( { std::move( candidate ), v } );
            }
        }
    }
    return best;
}

const Statechart& chart_for( const ChartSet& charts, const StateRef& ref )
{
    const auto* chart = charts.find( ref.component );
    if ( !chart || !chart->has_state( ref.state ) )
        throw SchemaError( "cig refers to unknown state '" + to_string( ref ) + "'" );
    return *chart;
}

// The transition out of `state` that emits `service`: event-triggered ones
// first, smallest event name, then declaration order.
const Transition* emitting_transition( const Statechart& chart, const std::string& state, const ServiceName& service )
{
    const Transition* pick = nullptr;
    for ( const auto& t : chart.transitions ) {
        if ( t.source != state || !t.emits( service ) )
            continue;
        if ( !pick ) {
            pick = &t;
            continue;
        }
        if ( pick->automatic() && !t.automatic() )
            pick = &t;
        else if ( !pick->automatic() && !t.automatic() && *t.event < *pick->event )
            pick = &t;
    }
    return pick;
}

std::optional< StateRef > acceptor_outcome( const Statechart& chart, const std::string& state, const ServiceName& service )
{
    std::optional< StateRef > out;
    int count = 0;
    for ( const auto& t : chart.transitions )
        if ( t.source == state && t.event == service ) {
            ++count;
            out = StateRef{ chart.component_name, t.target };
        }
    return count == 1 ? out : std::nullopt;
}

} // namespace

TestLibrary generate_new_tests( const Cig& cig, const ChartSet& charts )
{
    std::string owner;
    for ( const auto& c : cig.components )
        owner += ( owner.empty() ? "" : "_x_" ) + c;

    std::map< std::string, std::vector< std::optional< PathLabel > > > paths;
    std::vector< TestCase > cases;

    for ( const auto& edge : cig.edges ) {
        const auto& emitter = chart_for( charts, edge.from );
        const auto& acceptor = chart_for( charts, edge.to );

        auto [ it, inserted ] = paths.try_emplace( emitter.component_name );
        if ( inserted )
            it->second = shortest_event_paths( emitter );
        const auto& reach = it->second[ emitter.state_index( edge.from.state ) ];
        if ( !reach )
            throw UnreachableProvider( "state " + to_string( edge.from ) + " is unreachable from initial state "
                                       + emitter.initial );

        const auto* trigger = emitting_transition( emitter, edge.from.state, edge.service );
        if ( !trigger )
            throw SchemaError( "cig edge " + generated_test_id( edge ) + ": " + to_string( edge.from )
                               + " does not emit " + edge.service.str() );

        auto steps = reach->steps;
        std::vector< ServiceName > emitted;
        for ( const auto& a : trigger->actions )
            emitted.push_back( a.action );

        if ( trigger->event ) {
            steps.push_back(
                TestStep{ *trigger->event, acceptor_outcome( acceptor, edge.to.state, edge.service ), std::move( emitted ) } );
        } else {
            // The emission happens on entry to the providing state, so the
            // step that enters it carries the expectation.
            if ( steps.empty() )
                throw UnreachableProvider( "no event drives " + to_string( edge.from ) + " to emit " + edge.service.str() );
            auto& last = steps.back();
            last.expected_actions.insert( last.expected_actions.end(), emitted.begin(), emitted.end() );
        }

        cases.push_back( TestCase{ .id = generated_test_id( edge ),
                                   .owner = owner,
                                   .services = { edge.service },
                                   .steps = std::move( steps ),
                                   .origin = TestOrigin::Generated } );
    }

    std::sort( cases.begin(), cases.end(), []( const TestCase& a, const TestCase& b ) { return a.id < b.id; } );
    return TestLibrary( std::move( cases ) );
}

ComposedLibraryResult compose_libraries( const TestLibrary& t1, const TestLibrary& t2, const ServiceSet& satisfied,
                                         const TestLibrary& tnew )
{
    auto split = satisfied_tests( t1, t2, satisfied );
    for ( const auto& c : tnew.cases() )
        if ( t1.find( c.id ) || t2.find( c.id ) )
            throw DuplicateTestId( "generated test id '" + c.id + "' collides with an authored case" );

    auto final_cases = split.retained.cases();
    final_cases.insert( final_cases.end(), tnew.cases().begin(), tnew.cases().end() );
    return { std::move( split.retained ), std::move( split.removed ), tnew, TestLibrary( std::move( final_cases ) ) };
}

namespace
{

detail::ojson case_object( const TestCase& c )
{
    detail::ojson obj;
    obj[ "id" ] = c.id;
    obj[ "owner" ] = c.owner;
    obj[ "origin" ] = c.origin == TestOrigin::Generated ? "generated" : "library";
    obj[ "services" ] = detail::service_array( c.services );
    auto steps = detail::ojson::array();
    for ( const auto& step : c.steps ) {
        detail::ojson s;
        s[ "event" ] = step.event.str();
        if ( step.expected_state ) {
            detail::ojson state;
            state[ "component" ] = step.expected_state->component;
            state[ "state" ] = step.expected_state->state;
            s[ "expected_state" ] = std::move( state );
        }
        auto actions = detail::ojson::array();
        for ( const auto& a : step.expected_actions )
            actions.push_back( a.str() );
        s[ "expected_actions" ] = std::move( actions );
        steps.push_back( std::move( s ) );
    }
    obj[ "steps" ] = std::move( steps );
    return obj;
}

detail::ojson library_object( const TestLibrary& library )
{
    auto cases = detail::ojson::array();
    for ( const auto& c : library.cases() )
        cases.push_back( case_object( c ) );
    detail::ojson obj;
    obj[ "cases" ] = std::move( cases );
    return obj;
}

TestCase case_value( const detail::ojson& obj )
{
    constexpr const char* what = "test case";
    TestCase c;
    c.id = detail::string_field( obj, "id", what );
    c.owner = detail::string_field( obj, "owner", what );
    auto origin = detail::string_field( obj, "origin", what );
    if ( origin == "generated" )
        c.origin = TestOrigin::Generated;
    else if ( origin != "library" )
        throw SchemaError( "test case " + c.id + ": unknown origin '" + origin + "'" );
    c.services = detail::service_set_field( obj, "services", what );

    for ( const auto& s : detail::array_field( obj, "steps", what ) ) {
        TestStep step{ detail::service_value( detail::field( s, "event", what ), what ), std::nullopt, {} };
        if ( auto it = s.find( "expected_state" ); it != s.end() )
            step.expected_state = StateRef{ detail::string_field( *it, "component", what ),
                                             detail::string_field( *it, "state", what ) };
        for ( const auto& a : detail::array_field( s, "expected_actions", what ) )
            step.expected_actions.push_back( detail::service_value( a, what ) );
        c.steps.push_back( std::move( step ) );
    }
    return c;
}

} // namespace

std::string library_to_json( const TestLibrary& library )
{
    return detail::dump( library_object( library ) );
}

TestLibrary library_from_json( const std::string& text )
{
    auto doc = detail::parse_document( text, "test library" );
    std::vector< TestCase > cases;
    for ( const auto& c : detail::array_field( doc, "cases", "test library" ) )
        cases.push_back( case_value( c ) );
    try {
        return TestLibrary( std::move( cases ) );
    } catch ( const std::invalid_argument& e ) {
        throw SchemaError( std::string( "test library: " ) + e.what() );
    }
}

std::string composed_library_to_json( const ComposedLibraryResult& result )
{
    detail::ojson doc;
    doc[ "retained" ] = library_object( result.retained );
    doc[ "removed" ] = library_object( result.removed );
    doc[ "generated" ] = library_object( result.generated );
    doc[ "final" ] = library_object( result.final );
    return detail::dump( doc );
}

} // namespace cig
