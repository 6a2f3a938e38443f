#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qgeo {

/// Library-wide exception. `code()` is a short stable identifier
/// ("shape", "not-hermitian", ...) intended for programmatic handling;
/// `what()` carries "code: detail".
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& detail) {
  throw Error(std::move(code), detail);
}

}  // namespace qgeo
