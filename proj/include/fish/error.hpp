#pragma once

#include <stdexcept>
#include <string>

namespace fish {

enum class ErrorKind {
  kSchema,     // missing column, malformed header
  kValue,      // field value outside its domain
  kIntegrity,  // duplicate or unknown ids
  kDomain,     // operation precondition violated
  kCapacity,   // enumeration guard exceeded
  kConfig,     // inconsistent run or generator configuration
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace fish
