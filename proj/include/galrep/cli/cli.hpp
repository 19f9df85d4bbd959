#pragma once

#include <iosfwd>

namespace galrep::cli {

/// Runs the galrep command line. Returns 0 on success, 1 when a verification
/// fails and 2 on usage or input errors.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace galrep::cli
