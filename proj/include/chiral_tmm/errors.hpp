#pragma once

#include <stdexcept>
#include <string>

namespace chiral_tmm {

enum class ErrorKind {
  InvalidInput,           // parameter outside its domain
  SingularInterface,      // degenerate eigenwave basis at an interface
  EvanescentOverflow,     // |Im(k_z d)| too large to exponentiate
  ResonanceSingularity,   // near-singular transfer block or global system
  NegligibleTransmission, // rotation requested with no transmitted power
  Config,                 // scenario configuration problem
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) which failure class occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chiral_tmm
