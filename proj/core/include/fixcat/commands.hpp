#pragma once

// The command surface of the fixcat tool. Exit codes: 0 when every verdict
// passes, 1 when a checked property fails, 2 on input errors.

#include <ostream>
#include <string>
#include <vector>

namespace fixcat::cli {

inline constexpr int kPass = 0;
inline constexpr int kPropertyFails = 1;
inline constexpr int kInputError = 2;

// Command names in the order they are listed by --help.
const std::vector<std::string>& command_names();

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fixcat::cli
