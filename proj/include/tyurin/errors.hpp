#pragma once

#include <stdexcept>
#include <string>

namespace tyurin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VarMismatch : Error { using Error::Error; };
struct TruncMismatch : Error { using Error::Error; };
struct AlgebraMismatch : Error { using Error::Error; };
struct UnknownGenerator : Error { using Error::Error; };
struct NonMonomialImage : Error { using Error::Error; };
struct WindowOverflow : Error { using Error::Error; };
struct WindowTooSmall : Error { using Error::Error; };
struct UnknownExample : Error { using Error::Error; };
struct UnknownN : Error { using Error::Error; };
struct DegenerateParameters : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct ConfigError : Error {
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), field(std::move(path)) {}
  std::string field;
};

} // namespace tyurin

namespace tyurin {
struct LogResidue : Error { using Error::Error; };
}
