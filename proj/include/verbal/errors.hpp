#pragma once

#include <stdexcept>
#include <string>

namespace verbal {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedTable : Error {
  using Error::Error;
};
struct SizeCapExceeded : Error {
  using Error::Error;
};
struct NotNormal : Error {
  using Error::Error;
};
struct ArityMismatch : Error {
  using Error::Error;
};
struct ArityCapExceeded : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct EngineMismatch : Error {
  using Error::Error;
};
struct CheckFailed : Error {
  using Error::Error;
};
struct SizeMismatch : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct DiameterViolation : Error {
  using Error::Error;
};
struct WindowNotClosed : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace verbal
