#include "cig/statechart.hpp"

#include "cig/errors.hpp"

#include <algorithm>
#include <set>

namespace cig
{

bool Transition::emits( const ServiceName& service ) const
{
    return std::any_of( actions.begin(), actions.end(),
                        [ & ]( const ActionEmission& a ) { return a.action == service; } );
}

bool Statechart::has_state( std::string_view state ) const
{
    return state_index( state ) < states.size();
}

std::size_t Statechart::state_index( std::string_view state ) const
{
    return static_cast< std::size_t >( std::find( states.begin(), states.end(), state ) - states.begin() );
}

namespace
{

bool is_param_token( std::string_view token )
{
    if ( token.empty() )
        return false;
    return std::none_of( token.begin(), token.end(), []( char c ) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',' || c == '(' || c == ')' || c == '['
               || c == ']' || c == '#';
    } );
}

bool is_guard_text( std::string_view text )
{
    return text.find_first_of( "[]\r\n" ) == std::string_view::npos;
}

} // namespace

void validate( const Statechart& chart )
{
    if ( !is_identifier( chart.component_name ) )
        throw SyntaxError( 0, 0, "invalid component name '" + chart.component_name + "'" );

    std::set< std::string_view > seen;
    for ( const auto& state : chart.states ) {
        if ( !is_identifier( state ) )
            throw SyntaxError( 0, 0, "invalid state name '" + state + "'" );
        if ( !seen.insert( state ).second )
            throw DuplicateState( 0, 0, "duplicate state '" + state + "' in " + chart.component_name );
    }

    if ( chart.initial.empty() )
        throw MissingInitial( 0, 0, "no initial state in " + chart.component_name );
    if ( !seen.contains( chart.initial ) )
        throw UnknownState( 0, 0, "initial state '" + chart.initial + "' is not declared" );

    for ( const auto& t : chart.transitions ) {
        for ( const auto* end : { &t.source, &t.target } )
            if ( !seen.contains( *end ) )
                throw UnknownState( 0, 0, "transition references undeclared state '" + *end + "'" );
        if ( t.guard && !is_guard_text( *t.guard ) )
            throw SyntaxError( 0, 0, "guard text may not contain brackets or line breaks" );
        for ( const auto& a : t.actions )
            for ( const auto& p : a.params )
                if ( !is_param_token( p ) )
                    throw SyntaxError( 0, 0, "invalid parameter token '" + p + "'" );
    }
}

ChartSet::ChartSet( std::vector< Statechart > charts ) : _charts{ std::move( charts ) }
{
    std::set< std::string_view > names;
    for ( const auto& chart : _charts ) {
        validate( chart );
        if ( !names.insert( chart.component_name ).second )
            throw DuplicateComponent( 0, 0, "duplicate component '" + chart.component_name + "'" );
    }
}

const Statechart* ChartSet::find( std::string_view component ) const
{
    auto it = std::find_if( _charts.begin(), _charts.end(),
                            [ & ]( const Statechart& c ) { return c.component_name == component; } );
    return it == _charts.end() ? nullptr : &*it;
}

std::size_t ChartSet::component_index( std::string_view component ) const
{
    auto it = std::find_if( _charts.begin(), _charts.end(),
                            [ & ]( const Statechart& c ) { return c.component_name == component; } );
    return static_cast< std::size_t >( it - _charts.begin() );
}

namespace
{

bool is_ident_char( char c )
{
    return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) || c == '_';
}

bool is_space( char c )
{
    return c == ' ' || c == '\t' || c == '\r';
}

// Drops a '#' comment that is not inside [...] or (...).
std::string_view strip_comment( std::string_view line )
{
    int depth = 0;
    for ( std::size_t i = 0; i < line.size(); ++i ) {
        char c = line[ i ];
        if ( c == '[' || c == '(' )
            ++depth;
        else if ( ( c == ']' || c == ')' ) && depth > 0 )
            --depth;
        else if ( c == '#' && depth == 0 )
            return line.substr( 0, i );
    }
    return line;
}

class LineScanner
{
public:
    LineScanner( std::string_view text, std::size_t line ) : _text{ text }, _line{ line } {}

    void skip_space()
    {
        while ( _pos < _text.size() && is_space( _text[ _pos ] ) )
            ++_pos;
    }

    bool at_end()
    {
        skip_space();
        return _pos >= _text.size();
    }

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _pos + 1; }

    bool peek( char c )
    {
        skip_space();
        return _pos < _text.size() && _text[ _pos ] == c;
    }

    std::string identifier( const char* what )
    {
        skip_space();
        auto start = _pos;
        while ( _pos < _text.size() && is_ident_char( _text[ _pos ] ) )
            ++_pos;
        if ( start == _pos || ( _pos < _text.size() && !is_space( _text[ _pos ] ) && !is_delimiter( _text[ _pos ] ) ) )
            fail( start, std::string( "expected " ) + what );
        return std::string( _text.substr( start, _pos - start ) );
    }

    void literal( std::string_view token )
    {
        skip_space();
        if ( _text.substr( _pos, token.size() ) != token )
            fail( _pos, "expected '" + std::string( token ) + "'" );
        _pos += token.size();
    }

    // Text between '[' and the next ']', verbatim.
    std::string bracketed()
    {
        skip_space();
        if ( _pos >= _text.size() || _text[ _pos ] != '[' )
            fail( _pos, "expected '[' to open guard" );
        auto open = _pos++;
        auto close = _text.find_first_of( "[]", _pos );
        if ( close == std::string_view::npos || _text[ close ] == '[' )
            fail( open, "unterminated guard" );
        std::string out( _text.substr( _pos, close - _pos ) );
        _pos = close + 1;
        return out;
    }

    std::vector< std::string > params()
    {
        auto open = _pos++;
        auto close = _text.find( ')', _pos );
        if ( close == std::string_view::npos )
            fail( open, "unterminated parameter list" );
        auto body = _text.substr( _pos, close - _pos );

        std::vector< std::string > out;
        auto all_blank = std::all_of( body.begin(), body.end(), is_space );
        if ( !all_blank ) {
            std::size_t start = 0;
            while ( true ) {
                auto comma = body.find( ',', start );
                auto piece = body.substr( start, comma == std::string_view::npos ? body.npos : comma - start );
                auto first = piece.find_first_not_of( " \t\r" );
                auto last = piece.find_last_not_of( " \t\r" );
                auto token = first == piece.npos ? std::string_view{} : piece.substr( first, last - first + 1 );
                if ( !is_param_token( token ) )
                    fail( _pos + start, "invalid parameter token '" + std::string( token ) + "'" );
                out.emplace_back( token );
                if ( comma == std::string_view::npos )
                    break;
                start = comma + 1;
            }
        }
        _pos = close + 1;
        return out;
    }

    [[noreturn]] void fail( std::size_t pos, const std::string& message ) const
    {
        throw SyntaxError( _line, pos + 1, message );
    }

private:
    static bool is_delimiter( char c ) { return c == '(' || c == '[' || c == '-'; }

    std::string_view _text;
    std::size_t _line;
    std::size_t _pos = 0;
};

struct StateUse
{
    std::string name;
    std::size_t line;
    std::size_t column;
};

} // namespace

Statechart parse_statechart( std::string_view text )
{
    Statechart chart;
    bool have_component = false;
    bool ended = false;
    std::size_t line_no = 0;
    std::size_t last_line = 0;
    std::optional< StateUse > initial_use;
    std::vector< StateUse > endpoint_uses;
    std::set< std::string > declared;

    std::size_t begin = 0;
    while ( begin <= text.size() ) {
        auto nl = text.find( '\n', begin );
        auto raw = text.substr( begin, nl == std::string_view::npos ? text.npos : nl - begin );
        begin = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        LineScanner in( strip_comment( raw ), line_no );
        if ( in.at_end() )
            continue;
        last_line = line_no;

        if ( ended )
            in.fail( in.column() - 1, "content after 'end'" );

        auto keyword_col = in.column();
        auto keyword = in.identifier( "a declaration keyword" );

        if ( keyword == "component" ) {
            if ( have_component )
                throw DuplicateComponent( line_no, keyword_col, "second component header in one document" );
            chart.component_name = in.identifier( "component name" );
            have_component = true;
        } else if ( !have_component ) {
            throw SyntaxError( line_no, keyword_col, "expected 'component' header before '" + keyword + "'" );
        } else if ( keyword == "state" ) {
            auto col = ( in.skip_space(), in.column() );
            auto name = in.identifier( "state name" );
            if ( !declared.insert( name ).second )
                throw DuplicateState( line_no, col, "duplicate state '" + name + "'" );
            chart.states.push_back( std::move( name ) );
        } else if ( keyword == "initial" ) {
            if ( initial_use )
                throw SyntaxError( line_no, keyword_col, "initial state already declared" );
            auto col = ( in.skip_space(), in.column() );
            chart.initial = in.identifier( "initial state name" );
            initial_use = StateUse{ chart.initial, line_no, col };
        } else if ( keyword == "transition" ) {
            Transition t;
            auto src_col = ( in.skip_space(), in.column() );
            t.source = in.identifier( "source state" );
            in.literal( "->" );
            auto dst_col = ( in.skip_space(), in.column() );
            t.target = in.identifier( "target state" );
            endpoint_uses.push_back( { t.source, line_no, src_col } );
            endpoint_uses.push_back( { t.target, line_no, dst_col } );

            // Clauses in grammar order: on, guard, do*.
            int stage = 0;
            while ( !in.at_end() ) {
                auto clause_col = in.column();
                auto clause = in.identifier( "'on', 'guard' or 'do'" );
                if ( clause == "on" && stage < 1 ) {
                    t.event = ServiceName( in.identifier( "event name" ) );
                    stage = 1;
                } else if ( clause == "guard" && stage < 2 ) {
                    t.guard = in.bracketed();
                    stage = 2;
                } else if ( clause == "do" ) {
                    auto action = ServiceName( in.identifier( "action name" ) );
                    std::vector< std::string > params;
                    if ( in.peek( '(' ) )
                        params = in.params();
                    t.actions.push_back( { std::move( action ), std::move( params ) } );
                    stage = 3;
                } else {
                    in.fail( clause_col - 1, "unexpected '" + clause + "' in transition" );
                }
            }
            chart.transitions.push_back( std::move( t ) );
        } else if ( keyword == "end" ) {
            ended = true;
        } else {
            in.fail( keyword_col - 1, "unknown declaration '" + keyword + "'" );
        }

        if ( !in.at_end() )
            in.fail( in.column() - 1, "unexpected trailing text" );
    }

    if ( !have_component )
        throw SyntaxError( std::max< std::size_t >( last_line, 1 ), 1, "missing 'component' header" );
    if ( initial_use && !declared.contains( initial_use->name ) )
        throw UnknownState( initial_use->line, initial_use->column,
                            "initial state '" + initial_use->name + "' is not declared" );
    for ( const auto& use : endpoint_uses )
        if ( !declared.contains( use.name ) )
            throw UnknownState( use.line, use.column, "transition references undeclared state '" + use.name + "'" );
    if ( !initial_use )
        throw MissingInitial( last_line, 1, "no 'initial' declaration in " + chart.component_name );

    return chart;
}

std::string serialize_statechart( const Statechart& chart )
{
    std::string out = "component " + chart.component_name + "\n";
    for ( const auto& state : chart.states )
        out += "state " + state + "\n";
    out += "initial " + chart.initial + "\n";
    for ( const auto& t : chart.transitions ) {
        out += "transition " + t.source + " -> " + t.target;
        if ( t.event )
            out += " on " + t.event->str();
        if ( t.guard )
            out += " guard [" + *t.guard + "]";
        for ( const auto& a : t.actions ) {
            out += " do " + a.action.str();
            if ( !a.params.empty() ) {
                out += "(";
                for ( std::size_t i = 0; i < a.params.size(); ++i )
                    out += ( i ? "," : "" ) + a.params[ i ];
                out += ")";
            }
        }
        out += "\n";
    }
    out += "end\n";
    return out;
}

Component extract_interfaces( const Statechart& chart )
{
    ServiceSet triggers;
    ServiceSet actions;
    for ( const auto& t : chart.transitions ) {
        if ( t.event )
            triggers.insert( *t.event );
        for ( const auto& a : t.actions )
            actions.insert( a.action );
    }
    return make_component( chart.component_name, std::move( triggers ), std::move( actions ) );
}

} // namespace cig
