#pragma once
#include <stdexcept>
#include <string>

namespace cusp {

enum class ErrorKind {
  InvalidArgument,  // bad user input (shape, range)
  Precondition,     // mathematically invalid request, e.g. Witt violation
  Parse,            // malformed JSON / file
  Numerical,        // non-convergence, singular matrix
  GuardRail,        // truncation or resolution rule violated
  Internal,         // broken invariant inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cusp
