#pragma once

#include <stdexcept>
#include <string>

namespace qem {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// parameter/structural problems, method preconditions, and resource caps.

// A user-supplied value is outside its documented domain.
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Objects with incompatible shapes or malformed contents were combined.
class StructuralError : public std::invalid_argument {
public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

// The mitigation method does not apply (noise resistance >= 1).
class MethodInapplicableError : public std::runtime_error {
public:
  explicit MethodInapplicableError(const std::string& what) : std::runtime_error(what) {}
};

// A hard cap on problem size or sampling budget would be exceeded.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qem
