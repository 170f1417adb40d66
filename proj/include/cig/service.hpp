#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

namespace cig
{

/// True for a nonempty string of ASCII letters, digits and underscores.
[[nodiscard]] bool is_identifier( std::string_view text ) noexcept;

/// Throws InvalidIdentifier unless `is_identifier( text )`.
void require_identifier( std::string_view text, std::string_view what );

/// Name of a provided or required service. Comparison is exact string
/// comparison.
class ServiceName
{
public:
    explicit ServiceName( std::string value );

    [[nodiscard]] const std::string& str() const noexcept { return _value; }

    friend bool operator==( const ServiceName&, const ServiceName& ) = default;
    friend auto operator<=>( const ServiceName&, const ServiceName& ) = default;

private:
    std::string _value;
};

using ServiceSet = std::set< ServiceName >;

/// Convenience for literals and tests: `services( { "a", "b" } )`.
[[nodiscard]] ServiceSet services( std::initializer_list< std::string_view > names );

[[nodiscard]] ServiceSet set_union( const ServiceSet& a, const ServiceSet& b );
[[nodiscard]] ServiceSet set_intersection( const ServiceSet& a, const ServiceSet& b );
[[nodiscard]] ServiceSet set_difference( const ServiceSet& a, const ServiceSet& b );

} // namespace cig
