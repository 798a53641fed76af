#pragma once

#include <iosfwd>

namespace rriqa::cli {

// Entry point of the rriqa tool. Returns 0 on success, 1 on domain
// errors (one-line diagnostic on `err`) and 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rriqa::cli
