#pragma once

#include "cig/service.hpp"
#include "cig/statechart.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cig
{

/// A state of one component.
struct StateRef
{
    std::string component;
    std::string state;

    friend bool operator==( const StateRef&, const StateRef& ) = default;
    friend auto operator<=>( const StateRef&, const StateRef& ) = default;
};

[[nodiscard]] std::string to_string( const StateRef& ref );

/// Interface role of a state. Removed excludes everything else; Provided and
/// Required may be combined; Intermediate stands alone.
class Classification
{
public:
    enum class Kind : std::uint8_t
    {
        Provided = 1,
        Required = 2,
        Intermediate = 4,
        Removed = 8,
    };

    [[nodiscard]] static Classification removed() { return Classification( bit( Kind::Removed ) ); }
    [[nodiscard]] static Classification intermediate() { return Classification( bit( Kind::Intermediate ) ); }
    /// Intermediate when neither flag is set.
    [[nodiscard]] static Classification interface( bool provided, bool required );

    [[nodiscard]] bool has( Kind kind ) const noexcept { return ( _bits & bit( kind ) ) != 0; }
    [[nodiscard]] bool provided() const noexcept { return has( Kind::Provided ); }
    [[nodiscard]] bool required() const noexcept { return has( Kind::Required ); }
    [[nodiscard]] bool is_removed() const noexcept { return has( Kind::Removed ); }

    /// Short codes in fixed order: "P", "R", "G"; empty for Removed.
    [[nodiscard]] std::vector< std::string > codes() const;
    /// "P", "R", "P,R", "G" or "Removed".
    [[nodiscard]] std::string label() const;

    friend bool operator==( const Classification&, const Classification& ) = default;

private:
    explicit Classification( std::uint8_t bits ) : _bits{ bits } {}
    static constexpr std::uint8_t bit( Kind k ) { return static_cast< std::uint8_t >( k ); }

    std::uint8_t _bits;
};

/// Who emits a service as an action and who accepts it as a trigger, across
/// component boundaries. Both lists are in component order, then state
/// declaration order.
struct CrossService
{
    std::vector< StateRef > emitters;
    std::vector< StateRef > acceptors;

    friend bool operator==( const CrossService&, const CrossService& ) = default;
};

using CrossServiceMap = std::map< ServiceName, CrossService >;

/// Services that are emitted in one component and accepted in another. An
/// emitter is listed only if some acceptor lives in a different component,
/// and vice versa; services left with an empty side are omitted.
[[nodiscard]] CrossServiceMap cross_services( const ChartSet& charts );

/// States whose outgoing transitions are all automatic and each emit at
/// least one cross-component service. Such states only hand control over to
/// another component.
[[nodiscard]] std::set< StateRef > find_switching_states( const ChartSet& charts );

/// `cross_services` with the transitions leaving `removed` states ignored.
[[nodiscard]] CrossServiceMap cross_services_without( const ChartSet& charts, const std::set< StateRef >& removed );

[[nodiscard]] std::map< StateRef, Classification > classify_states( const ChartSet& charts );

struct CigNode
{
    StateRef ref;
    Classification classification;

    friend bool operator==( const CigNode&, const CigNode& ) = default;
};

/// `from` provides `service`, `to` requires it.
struct CigEdge
{
    StateRef from;
    StateRef to;
    ServiceName service;

    friend bool operator==( const CigEdge&, const CigEdge& ) = default;
};

/// Component interaction graph. Components act as containers of their
/// interface nodes. All vectors are in deterministic order.
struct Cig
{
    std::vector< std::string > components;
    std::vector< StateRef > removed;
    std::vector< CigNode > nodes;
    std::vector< CigEdge > edges;

    [[nodiscard]] const CigNode* find_node( const StateRef& ref ) const;

    friend bool operator==( const Cig&, const Cig& ) = default;
};

/// Throws NoInteraction when no service crosses a component boundary after
/// switching states are removed.
[[nodiscard]] Cig build_cig( const ChartSet& charts );

[[nodiscard]] std::string cig_to_dot( const Cig& cig );

[[nodiscard]] std::string cig_to_json( const Cig& cig );
/// Throws SchemaError for malformed JSON, missing fields, or edges and nodes
/// that do not refer to known nodes and components.
[[nodiscard]] Cig cig_from_json( const std::string& text );

} // namespace cig
