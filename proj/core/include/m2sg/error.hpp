#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace m2sg {

/// Failure categories. The command-line tool maps these onto exit codes.
enum class Errc {
  precondition,      ///< an operation's documented precondition does not hold
  parse,             ///< malformed textual or JSON input
  cap_exceeded,      ///< an enumeration or closure ran past its configured cap
  field_mismatch,    ///< scalars from different cyclotomic fields were mixed
  division_by_zero,
  unsupported,       ///< the request is outside what the library can decide
  internal,          ///< a self-check inside the library failed
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, Errc code, const char* what) {
  if (!condition) {
    throw Error(code, what);
  }
}

}  // namespace m2sg
