#include "cig/cig_builder.hpp"

#include "cig/errors.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <tuple>

namespace cig
{

std::string to_string( const StateRef& ref )
{
    return ref.component + "." + ref.state;
}

Classification Classification::interface( bool provided, bool required )
{
    if ( !provided && !required )
        return intermediate();
    return Classification( static_cast< std::uint8_t >( ( provided ? bit( Kind::Provided ) : 0 )
                                                        | ( required ? bit( Kind::Required ) : 0 ) ) );
}

std::vector< std::string > Classification::codes() const
{
    std::vector< std::string > out;
    if ( provided() )
        out.emplace_back( "P" );
    if ( required() )
        out.emplace_back( "R" );
    if ( has( Kind::Intermediate ) )
        out.emplace_back( "G" );
    return out;
}

std::string Classification::label() const
{
    if ( is_removed() )
        return "Removed";
    std::string out;
    for ( const auto& code : codes() )
        out += ( out.empty() ? "" : "," ) + code;
    return out;
}

namespace
{

void append_unique( std::vector< StateRef >& list, const StateRef& ref )
{
    if ( std::find( list.begin(), list.end(), ref ) == list.end() )
        list.push_back( ref );
}

// Keeps the entries of `side` that have a partner in another component.
std::vector< StateRef > with_foreign_partner( const std::vector< StateRef >& side,
                                              const std::vector< StateRef >& partners )
{
    std::vector< StateRef > out;
    for ( const auto& ref : side ) {
        bool foreign = std::any_of( partners.begin(), partners.end(),
                                    [ & ]( const StateRef& p ) { return p.component != ref.component; } );
        if ( foreign )
            out.push_back( ref );
    }
    return out;
}

} // namespace

CrossServiceMap cross_services_without( const ChartSet& charts, const std::set< StateRef >& removed )
{
    std::map< ServiceName, std::vector< StateRef > > emitters;
    std::map< ServiceName, std::vector< StateRef > > acceptors;

    for ( const auto& chart : charts.charts() ) {
        for ( const auto& state : chart.states ) {
            StateRef ref{ chart.component_name, state };
            if ( removed.contains( ref ) )
                continue;
            for ( const auto& t : chart.transitions ) {
                if ( t.source != state )
                    continue;
                if ( t.event )
                    append_unique( acceptors[ *t.event ], ref );
                for ( const auto& a : t.actions )
                    append_unique( emitters[ a.action ], ref );
            }
        }
    }

    CrossServiceMap out;
    for ( const auto& [ service, emitting ] : emitters ) {
        auto it = acceptors.find( service );
        if ( it == acceptors.end() )
            continue;
        CrossService cross{ with_foreign_partner( emitting, it->second ), with_foreign_partner( it->second, emitting ) };
        if ( !cross.emitters.empty() && !cross.acceptors.empty() )
            out.emplace( service, std::move( cross ) );
    }
    return out;
}

CrossServiceMap cross_services( const ChartSet& charts )
{
    return cross_services_without( charts, {} );
}

std::set< StateRef > find_switching_states( const ChartSet& charts )
{
    auto cross = cross_services( charts );
    auto emits_across = [ & ]( const ServiceName& service, const StateRef& ref ) {
        auto it = cross.find( service );
        if ( it == cross.end() )
            return false;
        const auto& e = it->second.emitters;
        return std::find( e.begin(), e.end(), ref ) != e.end();
    };

    std::set< StateRef > out;
    for ( const auto& chart : charts.charts() ) {
        for ( const auto& state : chart.states ) {
            StateRef ref{ chart.component_name, state };
            bool any = false;
            bool switching = true;
            for ( const auto& t : chart.transitions ) {
                if ( t.source != state )
                    continue;
                any = true;
                bool cross_emit = std::any_of( t.actions.begin(), t.actions.end(),
                                               [ & ]( const ActionEmission& a ) { return emits_across( a.action, ref ); } );
                if ( !t.automatic() || !cross_emit ) {
                    switching = false;
                    break;
                }
            }
            if ( any && switching )
                out.insert( std::move( ref ) );
        }
    }
    return out;
}

namespace
{

struct InterfaceRoles
{
    std::set< StateRef > removed;
    std::set< StateRef > provided;
    std::set< StateRef > required;
    CrossServiceMap cross;
};

InterfaceRoles interface_roles( const ChartSet& charts )
{
    InterfaceRoles roles;
    roles.removed = find_switching_states( charts );
    // Services whose only emitters were removed no longer connect anything.
    roles.cross = cross_services_without( charts, roles.removed );
    for ( const auto& [ service, cross ] : roles.cross ) {
        roles.provided.insert( cross.emitters.begin(), cross.emitters.end() );
        roles.required.insert( cross.acceptors.begin(), cross.acceptors.end() );
    }
    return roles;
}

Classification classify( const InterfaceRoles& roles, const StateRef& ref )
{
    if ( roles.removed.contains( ref ) )
        return Classification::removed();
    return Classification::interface( roles.provided.contains( ref ), roles.required.contains( ref ) );
}

} // namespace

std::map< StateRef, Classification > classify_states( const ChartSet& charts )
{
    auto roles = interface_roles( charts );
    std::map< StateRef, Classification > out;
    for ( const auto& chart : charts.charts() )
        for ( const auto& state : chart.states ) {
            StateRef ref{ chart.component_name, state };
            out.emplace( ref, classify( roles, ref ) );
        }
    return out;
}

const CigNode* Cig::find_node( const StateRef& ref ) const
{
    auto it = std::find_if( nodes.begin(), nodes.end(), [ & ]( const CigNode& n ) { return n.ref == ref; } );
    return it == nodes.end() ? nullptr : &*it;
}

Cig build_cig( const ChartSet& charts )
{
    auto roles = interface_roles( charts );
    if ( roles.cross.empty() )
        throw NoInteraction( "no service crosses a component boundary; the charts do not interact" );

    Cig cig;
    for ( const auto& chart : charts.charts() ) {
        cig.components.push_back( chart.component_name );
        for ( const auto& state : chart.states ) {
            StateRef ref{ chart.component_name, state };
            auto kind = classify( roles, ref );
            if ( kind.is_removed() )
                cig.removed.push_back( std::move( ref ) );
            else
                cig.nodes.push_back( { std::move( ref ), kind } );
        }
    }

    for ( const auto& [ service, cross ] : roles.cross )
        for ( const auto& from : cross.emitters )
            for ( const auto& to : cross.acceptors )
                if ( from.component != to.component )
                    cig.edges.push_back( { from, to, service } );

    auto position = [ & ]( const StateRef& ref ) {
        const auto* chart = charts.find( ref.component );
        return std::pair{ charts.component_index( ref.component ), chart->state_index( ref.state ) };
    };
    std::stable_sort( cig.edges.begin(), cig.edges.end(), [ & ]( const CigEdge& a, const CigEdge& b ) {
        return std::tuple{ position( a.from ), position( a.to ), a.service }
               < std::tuple{ position( b.from ), position( b.to ), b.service };
    } );
    return cig;
}

namespace
{

std::string dot_id( const StateRef& ref )
{
    return "\"" + ref.component + "." + ref.state + "\"";
}

} // namespace

std::string cig_to_dot( const Cig& cig )
{
    std::string out = "digraph CIG {\n";
    out += "  node [shape=ellipse];\n";
    for ( const auto& component : cig.components ) {
        out += "  subgraph \"cluster_" + component + "\" {\n";
        out += "    label=\"" + component + "\";\n";
        out += "    style=dashed;\n";
        for ( const auto& node : cig.nodes ) {
            if ( node.ref.component != component )
                continue;
            out += "    " + dot_id( node.ref ) + " [label=\"" + node.ref.state + "\\n[" + node.classification.label()
                   + "]\"];\n";
        }
        out += "  }\n";
    }
    for ( const auto& edge : cig.edges )
        out += "  " + dot_id( edge.from ) + " -> " + dot_id( edge.to ) + " [label=\"" + edge.service.str() + "\"];\n";
    out += "}\n";
    return out;
}

namespace
{

detail::ojson ref_object( const StateRef& ref )
{
    detail::ojson obj;
    obj[ "component" ] = ref.component;
    obj[ "state" ] = ref.state;
    return obj;
}

StateRef ref_value( const detail::ojson& obj )
{
    constexpr const char* what = "cig state reference";
    StateRef ref{ detail::string_field( obj, "component", what ), detail::string_field( obj, "state", what ) };
    if ( !is_identifier( ref.component ) || !is_identifier( ref.state ) )
        throw SchemaError( "cig: invalid state reference '" + to_string( ref ) + "'" );
    return ref;
}

Classification classification_value( const detail::ojson& kinds )
{
    if ( !kinds.is_array() || kinds.empty() )
        throw SchemaError( "cig: 'kinds' must be a nonempty array" );
    bool p = false, r = false, g = false;
    for ( const auto& k : kinds ) {
        auto code = detail::string_value( k, "cig node kind" );
        bool& flag = code == "P" ? p : code == "R" ? r : code == "G" ? g : throw SchemaError( "cig: unknown kind '" + code + "'" );
        if ( flag )
            throw SchemaError( "cig: repeated kind '" + code + "'" );
        flag = true;
    }
    if ( g && ( p || r ) )
        throw SchemaError( "cig: kind 'G' cannot be combined with 'P' or 'R'" );
    return Classification::interface( p, r );
}

} // namespace

std::string cig_to_json( const Cig& cig )
{
    detail::ojson doc;
    doc[ "components" ] = cig.components;

    auto removed = detail::ojson::array();
    for ( const auto& ref : cig.removed )
        removed.push_back( ref_object( ref ) );
    doc[ "removed" ] = std::move( removed );

    auto nodes = detail::ojson::array();
    for ( const auto& node : cig.nodes ) {
        auto obj = ref_object( node.ref );
        obj[ "kinds" ] = node.classification.codes();
        nodes.push_back( std::move( obj ) );
    }
    doc[ "nodes" ] = std::move( nodes );

    auto edges = detail::ojson::array();
    for ( const auto& edge : cig.edges ) {
        detail::ojson obj;
        obj[ "from" ] = ref_object( edge.from );
        obj[ "to" ] = ref_object( edge.to );
        obj[ "service" ] = edge.service.str();
        edges.push_back( std::move( obj ) );
    }
    doc[ "edges" ] = std::move( edges );
    return detail::dump( doc );
}

Cig cig_from_json( const std::string& text )
{
    constexpr const char* what = "cig";
    auto doc = detail::parse_document( text, what );

    Cig cig;
    for ( const auto& c : detail::array_field( doc, "components", what ) ) {
        auto name = detail::string_value( c, what );
        if ( !is_identifier( name ) )
            throw SchemaError( "cig: invalid component name '" + name + "'" );
        if ( std::find( cig.components.begin(), cig.components.end(), name ) != cig.components.end() )
            throw SchemaError( "cig: duplicate component '" + name + "'" );
        cig.components.push_back( std::move( name ) );
    }
    auto known_component = [ & ]( const StateRef& ref ) {
        if ( std::find( cig.components.begin(), cig.components.end(), ref.component ) == cig.components.end() )
            throw SchemaError( "cig: unknown component in '" + to_string( ref ) + "'" );
    };

    for ( const auto& r : detail::array_field( doc, "removed", what ) ) {
        auto ref = ref_value( r );
        known_component( ref );
        cig.removed.push_back( std::move( ref ) );
    }

    for ( const auto& n : detail::array_field( doc, "nodes", what ) ) {
        auto ref = ref_value( n );
        known_component( ref );
        if ( cig.find_node( ref ) || std::find( cig.removed.begin(), cig.removed.end(), ref ) != cig.removed.end() )
            throw SchemaError( "cig: duplicate node '" + to_string( ref ) + "'" );
        cig.nodes.push_back( { std::move( ref ), classification_value( detail::field( n, "kinds", what ) ) } );
    }

    for ( const auto& e : detail::array_field( doc, "edges", what ) ) {
        CigEdge edge{ ref_value( detail::field( e, "from", what ) ), ref_value( detail::field( e, "to", what ) ),
                      detail::service_value( detail::field( e, "service", what ), what ) };
        const auto* from = cig.find_node( edge.from );
        const auto* to = cig.find_node( edge.to );
        if ( !from || !to )
            throw SchemaError( "cig: edge endpoint is not a node" );
        if ( edge.from.component == edge.to.component )
            throw SchemaError( "cig: edge inside component " + edge.from.component );
        if ( !from->classification.provided() || !to->classification.required() )
            throw SchemaError( "cig: edge " + to_string( edge.from ) + " -> " + to_string( edge.to )
                               + " must run from a provided to a required interface" );
        cig.edges.push_back( std::move( edge ) );
    }
    return cig;
}

} // namespace cig
