#include "cig/interface_model.hpp"

#include "cig/errors.hpp"
#include "json_util.hpp"

#include <stdexcept>

namespace cig
{

namespace
{

std::string join_names( const ServiceSet& set )
{
    std::string out;
    for ( const auto& s : set ) {
        if ( !out.empty() )
            out += ", ";
        out += s.str();
    }
    return out;
}

} // namespace

Component make_component( std::string name, ServiceSet provided, ServiceSet required, InternalMap internal_map )
{
    require_identifier( name, "component name" );

    auto overlap = set_intersection( provided, required );
    if ( !overlap.empty() )
        throw DisjointnessViolation( "component " + name + " both provides and requires: " + join_names( overlap ) );

    for ( const auto& [ from, to ] : internal_map ) {
        if ( !required.contains( from ) )
            throw DisjointnessViolation( "component " + name + ": internal map key '" + from.str()
                                         + "' is not a required service" );
        if ( !provided.contains( to ) )
            throw DisjointnessViolation( "component " + name + ": internal map value '" + to.str()
                                         + "' is not a provided service" );
    }

    Component c;
    c._name = std::move( name );
    c._provided = std::move( provided );
    c._required = std::move( required );
    c._internal_map = std::move( internal_map );
    return c;
}

ServiceSet CompositionResult::all_satisfied() const
{
    ServiceSet out;
    for ( const auto& step : steps )
        out.insert( step.satisfied.begin(), step.satisfied.end() );
    return out;
}

ServiceSet satisfied_services( const Component& c1, const Component& c2 )
{
    return set_union( set_intersection( c1.provided(), c2.required() ),
                      set_intersection( c2.provided(), c1.required() ) );
}

bool is_composable( const Component& c1, const Component& c2 )
{
    return !satisfied_services( c1, c2 ).empty();
}

CompositionResult compose( const Component& c1, const Component& c2 )
{
    auto satisfied = satisfied_services( c1, c2 );
    if ( satisfied.empty() )
        throw NotComposable( c1.name(), c2.name() );

    auto composed = make_component( c1.name() + "_x_" + c2.name(),
                                    set_difference( set_union( c1.provided(), c2.provided() ), satisfied ),
                                    set_difference( set_union( c1.required(), c2.required() ), satisfied ) );

    return CompositionResult{ .composed = std::move( composed ),
                              .satisfied = satisfied,
                              .left_name = c1.name(),
                              .right_name = c2.name(),
                              .left = c1,
                              .right = c2,
                              .fold_order = { c1.name(), c2.name() },
                              .steps = { CompositionStep{ c1.name(), c2.name(), satisfied } } };
}

CompositionResult compose_many( std::span< const Component > components )
{
    if ( components.size() < 2 )
        throw std::invalid_argument( "compose_many needs at least two components" );

    auto result = compose( components[ 0 ], components[ 1 ] );
    for ( std::size_t i = 2; i < components.size(); ++i ) {
        auto next = compose( result.composed, components[ i ] );
        next.fold_order = std::move( result.fold_order );
        next.fold_order.push_back( components[ i ].name() );
        result.steps.push_back( next.steps.front() );
        next.steps = std::move( result.steps );
        result = std::move( next );
    }
    return result;
}

namespace
{

detail::ojson component_object( const Component& c )
{
    detail::ojson obj;
    obj[ "name" ] = c.name();
    obj[ "provided" ] = detail::service_array( c.provided() );
    obj[ "required" ] = detail::service_array( c.required() );
    if ( !c.internal_map().empty() ) {
        detail::ojson map = detail::ojson::object();
        for ( const auto& [ from, to ] : c.internal_map() )
            map[ from.str() ] = to.str();
        obj[ "internal_map" ] = std::move( map );
    }
    return obj;
}

} // namespace

std::string component_to_json( const Component& component )
{
    return detail::dump( component_object( component ) );
}

Component component_from_json( const std::string& text )
{
    constexpr const char* what = "component";
    auto doc = detail::parse_document( text, what );
    auto name = detail::string_field( doc, "name", what );
    auto provided = detail::service_set_field( doc, "provided", what );
    auto required = detail::service_set_field( doc, "required", what );

    InternalMap map;
    if ( auto it = doc.find( "internal_map" ); it != doc.end() ) {
        if ( !it->is_object() )
            throw SchemaError( "component: field 'internal_map' must be an object" );
        for ( const auto& [ key, value ] : it->items() ) {
            if ( !is_identifier( key ) )
                throw SchemaError( "component: invalid service name '" + key + "'" );
            map.emplace( ServiceName( key ), detail::service_value( value, what ) );
        }
    }

    try {
        return make_component( std::move( name ), std::move( provided ), std::move( required ), std::move( map ) );
    } catch ( const InvalidIdentifier& e ) {
        throw SchemaError( std::string( "component: " ) + e.what() );
    }
}

std::string composition_to_json( const CompositionResult& result )
{
    detail::ojson doc;
    doc[ "fold_order" ] = result.fold_order;
    doc[ "composed" ] = component_object( result.composed );
    doc[ "satisfied" ] = detail::service_array( result.all_satisfied() );
    auto steps = detail::ojson::array();
    for ( const auto& step : result.steps ) {
        detail::ojson s;
        s[ "left" ] = step.left_name;
        s[ "right" ] = step.right_name;
        s[ "satisfied" ] = detail::service_array( step.satisfied );
        steps.push_back( std::move( s ) );
    }
    doc[ "steps" ] = std::move( steps );
    return detail::dump( doc );
}

ServiceSet satisfied_from_composition_json( const std::string& text )
{
    auto doc = detail::parse_document( text, "composition" );
    return detail::service_set_field( doc, "satisfied", "composition" );
}

} // namespace cig
