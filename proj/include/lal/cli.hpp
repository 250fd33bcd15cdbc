#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

namespace lal {

// Exit codes: 0 success, 1 parse or type error, 2 bound violation or a run
// that got stuck or ran out of fuel, 3 I/O error.
struct CheckCmd {
  std::string path;
  bool emit_derivation = false;
};
struct RunCmd {
  std::string path;
  std::uint64_t max_steps = 10'000'000;
  bool trace = false;
};
struct BoundCmd {
  std::string path;
};
struct VerifyCmd {
  std::string path;
  std::uint64_t fuel_cap = 10'000'000;
  bool json = false;
};
struct CorpusCmd {
  std::string dir;
  std::uint64_t fuel_cap = 10'000'000;
  bool json = false;
};
using Command = std::variant<CheckCmd, RunCmd, BoundCmd, VerifyCmd, CorpusCmd>;

int run_command(const Command& cmd, std::ostream& out, std::ostream& err);

}  // namespace lal
