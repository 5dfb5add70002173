#pragma once

#include <stdexcept>
#include <string>

namespace locglob {

// Exit-code classes used by the CLI: usage (1), unsupported (2),
// capacity (3), internal consistency (4).
enum class ErrorClass { usage = 1, unsupported = 2, capacity = 3, internal = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), cls_(cls), kind_(kind) {}

  ErrorClass error_class() const noexcept { return cls_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorClass cls_;
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorClass::usage, "domain error", w) {}
};
struct NonDivisibleError : Error {
  explicit NonDivisibleError(const std::string& w) : Error(ErrorClass::usage, "non-divisibility", w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(ErrorClass::usage, "precondition", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorClass::usage, "parse error", w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorClass::usage, "validation error", w) {}
};
struct UnsolvableError : Error {
  explicit UnsolvableError(const std::string& w) : Error(ErrorClass::usage, "unsolvable", w) {}
};
struct ContentError : Error {
  explicit ContentError(const std::string& w) : Error(ErrorClass::usage, "content error", w) {}
};
struct RankError : Error {
  explicit RankError(const std::string& w) : Error(ErrorClass::usage, "rank error", w) {}
};
struct ClassificationError : Error {
  explicit ClassificationError(const std::string& w) : Error(ErrorClass::usage, "classification error", w) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& w) : Error(ErrorClass::unsupported, "unsupported", w) {}
};
struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error(ErrorClass::capacity, "capacity exceeded", w) {}
};
struct SearchExhaustedError : Error {
  explicit SearchExhaustedError(const std::string& w) : Error(ErrorClass::capacity, "search exhausted", w) {}
};
struct CertificationError : Error {
  explicit CertificationError(const std::string& w) : Error(ErrorClass::usage, "certification failed", w) {}
};
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& w) : Error(ErrorClass::internal, "internal consistency", w) {}
};

}  // namespace locglob
