#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace wtfc {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;        //!< I/O or unexpected runtime error
inline constexpr int invalid_input = 2;  //!< usage or validation error
inline constexpr int skipped_rows = 3;   //!< rows skipped without --allow-skips
}  // namespace exit_code

using EnvLookup = std::function<char const*(char const*)>;

/// Run the command line `args` (without the program name).
int run_cli(std::vector<std::string> const& args,
            std::ostream& out,
            std::ostream& err,
            EnvLookup const& getenv);

}  // namespace wtfc
