#pragma once

#include <iosfwd>

namespace knlab {

// Entry point of the knlab tool. Returns 0 (clean), 1 (counterexample or
// refutation found) or 2 (usage, input or internal error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knlab
