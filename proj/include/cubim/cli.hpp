#pragma once

#include <iosfwd>

namespace cubim {

// Full command-line front end: parses argv, dispatches to the library,
// writes exactly one JSON document (or the help text) to `out`.
// Exit code 0 = success/verdict, 2 = inconclusive, 3 = invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cubim
