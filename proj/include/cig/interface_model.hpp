#pragma once

#include "cig/service.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cig
{

/// Maps required services onto the provided services that depend on them.
using InternalMap = std::map< ServiceName, ServiceName >;

/// A component seen only through its interfaces: the services it provides
/// and the services it requires. The two sets never overlap.
class Component
{
public:
    [[nodiscard]] const std::string& name() const noexcept { return _name; }
    [[nodiscard]] const ServiceSet& provided() const noexcept { return _provided; }
    [[nodiscard]] const ServiceSet& required() const noexcept { return _required; }
    [[nodiscard]] const InternalMap& internal_map() const noexcept { return _internal_map; }

    friend bool operator==( const Component&, const Component& ) = default;

private:
    friend Component make_component( std::string, ServiceSet, ServiceSet, InternalMap );

    Component() = default;

    std::string _name;
    ServiceSet _provided;
    ServiceSet _required;
    InternalMap _internal_map;
};

/// Throws InvalidIdentifier for a bad name and DisjointnessViolation when a
/// service is both provided and required, or when the internal map has a key
/// outside `required` or a value outside `provided`.
[[nodiscard]] Component make_component( std::string name, ServiceSet provided, ServiceSet required,
                                        InternalMap internal_map = {} );

/// One application of the composition operator inside a fold.
struct CompositionStep
{
    std::string left_name;
    std::string right_name;
    ServiceSet satisfied;

    friend bool operator==( const CompositionStep&, const CompositionStep& ) = default;
};

struct CompositionResult
{
    Component composed;
    /// Services matched by the last composition step.
    ServiceSet satisfied;
    std::string left_name;
    std::string right_name;
    /// Operand snapshots of the last step.
    Component left;
    Component right;
    /// Operand names in fold order; two entries for a plain `compose`.
    std::vector< std::string > fold_order;
    std::vector< CompositionStep > steps;

    /// Union of the satisfied sets of every step.
    [[nodiscard]] ServiceSet all_satisfied() const;

    friend bool operator==( const CompositionResult&, const CompositionResult& ) = default;
};

[[nodiscard]] ServiceSet satisfied_services( const Component& c1, const Component& c2 );

[[nodiscard]] bool is_composable( const Component& c1, const Component& c2 );

/// Composes two components: the satisfied services are removed from the
/// unions of the provided and required sets. The result is named
/// "left_x_right" and carries no internal map. Throws NotComposable when
/// nothing is satisfied.
[[nodiscard]] CompositionResult compose( const Component& c1, const Component& c2 );

/// Left fold of `compose` in list order. Throws NotComposable naming the
/// first failing pair, or std::invalid_argument for fewer than two inputs.
[[nodiscard]] CompositionResult compose_many( std::span< const Component > components );

/// Serialized as {"name","provided","required","internal_map"?} with sorted
/// arrays; 2-space indentation, no trailing newline.
[[nodiscard]] std::string component_to_json( const Component& component );
[[nodiscard]] Component component_from_json( const std::string& text );

/// {"fold_order","composed","satisfied","steps"}; "satisfied" is the union
/// over all steps.
[[nodiscard]] std::string composition_to_json( const CompositionResult& result );

/// Reads the top-level "satisfied" array of a composition document.
[[nodiscard]] ServiceSet satisfied_from_composition_json( const std::string& text );

} // namespace cig
