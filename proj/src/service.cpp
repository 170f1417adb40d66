#include "cig/service.hpp"

#include "cig/errors.hpp"

#include <algorithm>
#include <iterator>

namespace cig
{

bool is_identifier( std::string_view text ) noexcept
{
    if ( text.empty() )
        return false;
    return std::all_of( text.begin(), text.end(), []( char c ) {
        return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) || c == '_';
    } );
}

void require_identifier( std::string_view text, std::string_view what )
{
    if ( !is_identifier( text ) )
        throw InvalidIdentifier( "invalid " + std::string( what ) + " '" + std::string( text ) + "'" );
}

ServiceName::ServiceName( std::string value ) : _value{ std::move( value ) }
{
    require_identifier( _value, "service name" );
}

ServiceSet services( std::initializer_list< std::string_view > names )
{
    ServiceSet out;
    for ( auto name : names )
        out.emplace( std::string( name ) );
    return out;
}

ServiceSet set_union( const ServiceSet& a, const ServiceSet& b )
{
    ServiceSet out;
    std::set_union( a.begin(), a.end(), b.begin(), b.end(), std::inserter( out, out.end() ) );
    return out;
}

ServiceSet set_intersection( const ServiceSet& a, const ServiceSet& b )
{
    ServiceSet out;
    std::set_intersection( a.begin(), a.end(), b.begin(), b.end(), std::inserter( out, out.end() ) );
    return out;
}

ServiceSet set_difference( const ServiceSet& a, const ServiceSet& b )
{
    ServiceSet out;
    std::set_difference( a.begin(), a.end(), b.begin(), b.end(), std::inserter( out, out.end() ) );
    return out;
}

} // namespace cig
