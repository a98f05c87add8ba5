// Command-line front end.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace synk {

/// Runs one command (args exclude the program name). Returns 0 on success or
/// when the checked property holds, 1 when it is violated or refuted, and 2 on
/// usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace synk
