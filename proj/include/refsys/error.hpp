#ifndef REFSYS_ERROR_HPP
#define REFSYS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace refsys {

enum class ErrorKind {
  structural,  // malformed tables, mismatched composition boundaries
  ill_formed,  // refinement side-conditions fail
  capability,  // the model lacks the requested structure or a size bound is hit
  validation,  // a law or hypothesis check failed where success was required
  parse,       // signature or judgment text could not be read
  soundness,   // a rule produced a morphism that is not valid over its judgment
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

}  // namespace refsys

#endif
