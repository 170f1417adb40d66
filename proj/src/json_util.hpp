#pragma once

// Schema helpers shared by the JSON readers and writers. Not installed.

#include "cig/errors.hpp"
#include "cig/service.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cig::detail
{

using ojson = nlohmann::ordered_json;

inline std::string dump( const ojson& doc )
{
    return doc.dump( 2 );
}

inline ojson parse_document( const std::string& text, const char* what )
{
    try {
        return ojson::parse( text );
    } catch ( const nlohmann::json::parse_error& e ) {
        throw SchemaError( std::string( what ) + ": malformed JSON: " + e.what() );
    }
}

inline const ojson& field( const ojson& obj, const char* key, const char* what )
{
    if ( !obj.is_object() )
        throw SchemaError( std::string( what ) + ": expected an object" );
    auto it = obj.find( key );
    if ( it == obj.end() )
        throw SchemaError( std::string( what ) + ": missing field '" + key + "'" );
    return *it;
}

inline const ojson& array_field( const ojson& obj, const char* key, const char* what )
{
    const auto& value = field( obj, key, what );
    if ( !value.is_array() )
        throw SchemaError( std::string( what ) + ": field '" + key + "' must be an array" );
    return value;
}

inline std::string string_value( const ojson& value, const char* what )
{
    if ( !value.is_string() )
        throw SchemaError( std::string( what ) + ": expected a string" );
    return value.get< std::string >();
}

inline std::string string_field( const ojson& obj, const char* key, const char* what )
{
    return string_value( field( obj, key, what ), what );
}

inline ServiceName service_value( const ojson& value, const char* what )
{
    auto text = string_value( value, what );
    if ( !is_identifier( text ) )
        throw SchemaError( std::string( what ) + ": invalid service name '" + text + "'" );
    return ServiceName( std::move( text ) );
}

inline ServiceSet service_set_field( const ojson& obj, const char* key, const char* what )
{
    ServiceSet out;
    for ( const auto& item : array_field( obj, key, what ) )
        out.insert( service_value( item, what ) );
    return out;
}

inline ojson service_array( const ServiceSet& set )
{
    auto out = ojson::array();
    for ( const auto& s : set )
        out.push_back( s.str() );
    return out;
}

} // namespace cig::detail
