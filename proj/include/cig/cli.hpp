#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cig::cli
{

/// Exit codes of the `cig` binary.
enum ExitCode : int
{
    Success = 0,
    DomainError = 1, ///< NotComposable, NoInteraction, DuplicateTestId, UnreachableProvider
    InputError = 2,  ///< usage, unreadable files, parse and schema errors
};

struct RunReport
{
    std::string command;
    std::vector< std::string > inputs;
    std::vector< std::string > warnings;
    int exit_code = Success;
};

/// Runs one `cig` invocation. `args` excludes the program name. Results go
/// to `out` (or the --out file), diagnostics and warnings to `err`.
RunReport run( std::span< const std::string > args, std::ostream& out, std::ostream& err );

} // namespace cig::cli
