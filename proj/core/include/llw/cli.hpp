#pragma once

#include <iosfwd>

namespace llw {

/// 0 on success, 1 when a checked property fails, 2 on usage errors and refusals.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace llw
