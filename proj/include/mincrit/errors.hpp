#pragma once

#include <stdexcept>
#include <string>

namespace mincrit {

enum class ErrorKind {
  Domain,             // zero input, singular matrix, ...
  UnsupportedDomain,  // operation not defined for this coefficient domain
  Budget,             // degree / node / size budget exceeded
  Precondition,       // caller violated a documented precondition
  IrrationalCriticalLocus,
  NotMinimallyCritical,
  Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace mincrit
