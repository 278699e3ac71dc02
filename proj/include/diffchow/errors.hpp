// Error hierarchy. The CLI maps parse_error to exit status 2, math_error
// (and derived) to exit status 1.
#ifndef DIFFCHOW_ERRORS_HPP
#define DIFFCHOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diffchow {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to different ring contexts.
struct context_error : error {
  using error::error;
};

// A mathematical negative: failed shape test, incoherent charset, ...
struct math_error : error {
  using error::error;
};

// The Kolchin polynomial is not of the Chow-admissible form.
struct shape_error : math_error {
  using math_error::math_error;
};

// An internal cross-check failed (e.g. a non-principal elimination ideal).
struct consistency_error : error {
  using error::error;
};

struct parse_error : error {
  int line;
  int col;
  parse_error(int l, int c, const std::string& msg)
      : error("line " + std::to_string(l) + ", col " + std::to_string(c) +
              ": " + msg),
        line(l),
        col(c) {}
};

}  // namespace diffchow

#endif
