#pragma once

#include "cig/interface_model.hpp"
#include "cig/service.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cig
{

/// An action emitted on a transition. Parameters are kept verbatim
/// ("1", "2..max") and never interpreted.
struct ActionEmission
{
    ServiceName action;
    std::vector< std::string > params;

    friend bool operator==( const ActionEmission&, const ActionEmission& ) = default;
};

struct Transition
{
    std::string source;
    std::string target;
    /// Absent for an automatic transition.
    std::optional< ServiceName > event;
    /// Opaque; only kept for round-tripping.
    std::optional< std::string > guard;
    std::vector< ActionEmission > actions;

    [[nodiscard]] bool automatic() const noexcept { return !event.has_value(); }
    [[nodiscard]] bool emits( const ServiceName& service ) const;

    friend bool operator==( const Transition&, const Transition& ) = default;
};

/// A flat state machine describing one component.
struct Statechart
{
    std::string component_name;
    std::vector< std::string > states;
    std::string initial;
    std::vector< Transition > transitions;

    [[nodiscard]] bool has_state( std::string_view state ) const;
    /// Position of `state` in declaration order; states.size() if absent.
    [[nodiscard]] std::size_t state_index( std::string_view state ) const;

    friend bool operator==( const Statechart&, const Statechart& ) = default;
};

/// Throws the matching ParseError subclass (with line 0) when the chart
/// breaks a structural invariant.
void validate( const Statechart& chart );

/// Charts of distinct components, in a fixed order.
class ChartSet
{
public:
    ChartSet() = default;
    /// Validates every chart; throws DuplicateComponent on a repeated name.
    explicit ChartSet( std::vector< Statechart > charts );

    [[nodiscard]] const std::vector< Statechart >& charts() const noexcept { return _charts; }
    [[nodiscard]] std::size_t size() const noexcept { return _charts.size(); }
    /// nullptr if no chart has that component name.
    [[nodiscard]] const Statechart* find( std::string_view component ) const;
    [[nodiscard]] std::size_t component_index( std::string_view component ) const;

private:
    std::vector< Statechart > _charts;
};

/// Parses one statechart document:
///
///     component <Id>
///     state <Id>
///     initial <Id>
///     transition <Src> -> <Dst> [on <Event>] [guard [<text>]] [do <Action>[(<p>,...)]]...
///     end
///
/// '#' starts a comment outside brackets and parentheses. `end` is optional
/// but nothing may follow it.
[[nodiscard]] Statechart parse_statechart( std::string_view text );

/// Canonical text; `parse_statechart( serialize_statechart( c ) ) == c`.
[[nodiscard]] std::string serialize_statechart( const Statechart& chart );

/// Triggers become provided services and emitted actions required ones.
/// Throws DisjointnessViolation if a name is both.
[[nodiscard]] Component extract_interfaces( const Statechart& chart );

} // namespace cig
