#ifndef TL_CLI_HPP
#define TL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tl::cli {

// Exit codes of the tl command.
inline constexpr int kOk = 0;        // success, or the checked property holds
inline constexpr int kRefuted = 1;   // the checked property fails; a witness is printed
inline constexpr int kUsage = 2;     // usage, parse or precondition error
inline constexpr int kResource = 3;  // a resource guard was exceeded

// Runs one tl subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tl::cli

#endif
