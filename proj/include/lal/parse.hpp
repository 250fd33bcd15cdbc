#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "lal/program.hpp"

namespace lal {

struct SyntaxError : std::runtime_error {
  std::size_t line;
  std::size_t col;

  SyntaxError(std::size_t line_, std::size_t col_, const std::string& message)
      : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + message),
        line(line_),
        col(col_) {}
};

// A non-value appeared where the grammar requires a syntactic value
// (arithmetic operand, let-bound term, set payload).
struct ValueExpected : SyntaxError {
  using SyntaxError::SyntaxError;
};

// `level N ;` and `region r : depth N, type T ;` headers, then the main term.
// Bare identifiers matching a declared region name parse as region constants.
Program parse_program(const std::string& source);

// Convenience entry points for a single term or type with no headers.
TermPtr parse_term_str(const std::string& source);
TypePtr parse_type_str(const std::string& source);

}  // namespace lal
