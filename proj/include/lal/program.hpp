#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lal/term.hpp"
#include "lal/type.hpp"

namespace lal {

struct RegionDecl {
  std::string name;
  std::uint64_t depth;
  TypePtr content;
};

struct Program {
  std::vector<RegionDecl> regions;
  std::optional<std::uint64_t> level;
  TermPtr main;
};

// Declared level, or max(depth(main), max region depth) when absent.
std::uint64_t effective_level(const Program& prog);

}  // namespace lal
