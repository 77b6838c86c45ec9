#ifndef BIQ_ERRORS_HPP
#define BIQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace biq {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  explicit ParseError(const std::string& msg)
      : std::runtime_error(msg), position(0) {}
  size_t position;
};

struct ZeroDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroElement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A nonzero element turned out not to be invertible: the parameter
// specialization is not a division algebra.
struct ZeroDivisor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CtxMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidQuadruple : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoExtension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotDecomposed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace biq

#endif
