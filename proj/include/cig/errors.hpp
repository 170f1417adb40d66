#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cig
{

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidIdentifier : public Error
{
public:
    using Error::Error;
};

/// A name is both provided and required by one component.
class DisjointnessViolation : public Error
{
public:
    using Error::Error;
};

class NotComposable : public Error
{
public:
    NotComposable( std::string left, std::string right )
            : Error( "not composable: S is empty (" + left + ", " + right + ")" ),
              _left{ std::move( left ) }, _right{ std::move( right ) }
    {
    }

    [[nodiscard]] const std::string& left() const { return _left; }
    [[nodiscard]] const std::string& right() const { return _right; }

private:
    std::string _left;
    std::string _right;
};

/// Failure while reading or validating statechart text. Line and column are
/// 1-based; line 0 means no source position is known.
class ParseError : public Error
{
public:
    ParseError( std::size_t line, std::size_t column, const std::string& message )
            : Error( line == 0 ? message
                               : std::to_string( line ) + ":" + std::to_string( column ) + ": " + message ),
              _line{ line }, _column{ column }
    {
    }

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

class SyntaxError : public ParseError
{
public:
    using ParseError::ParseError;
};

class UnknownState : public ParseError
{
public:
    using ParseError::ParseError;
};

class DuplicateState : public ParseError
{
public:
    using ParseError::ParseError;
};

class MissingInitial : public ParseError
{
public:
    using ParseError::ParseError;
};

class DuplicateComponent : public ParseError
{
public:
    using ParseError::ParseError;
};

/// Charts share no cross-component service, so no CIG exists.
class NoInteraction : public Error
{
public:
    using Error::Error;
};

class SchemaError : public Error
{
public:
    using Error::Error;
};

class DuplicateTestId : public Error
{
public:
    using Error::Error;
};

class UnreachableProvider : public Error
{
public:
    using Error::Error;
};

} // namespace cig
