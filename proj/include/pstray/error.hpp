#pragma once

#include <stdexcept>
#include <string>

namespace pstray {

enum class ErrorKind {
  Input,           // empty input, reserved sentinel token, malformed spec
  Classification,  // token in neither alphabet
  Rank,            // symbol outside the canonical universe
  Query,           // empty pattern and other query misuse
  Construction,    // internal consistency failure while building
  Load,            // corrupt, truncated or inconsistent index file
  Version,         // wrong magic or unsupported format version
  OracleCapacity,  // brute-force oracle asked for more than it can enumerate
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pstray
