#pragma once

// Command-line front end.  Exit codes: 0 success, 1 usage or malformed
// document, 2 unphysical/inadmissible input, 3 internal-consistency failure
// (including --verify disagreements).

#include <iosfwd>

namespace gpm::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpm::cli
