#pragma once

#include <stdexcept>
#include <string>

namespace attninv {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonSquareError : Error {
  explicit NonSquareError(const std::string& what) : Error(what) {}
};

struct SizeCapExceededError : Error {
  explicit SizeCapExceededError(const std::string& what) : Error(what) {}
};

struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

struct ContextEqualsTargetError : Error {
  explicit ContextEqualsTargetError(const std::string& what) : Error(what) {}
};

struct DimensionTooSmallError : Error {
  explicit DimensionTooSmallError(const std::string& what) : Error(what) {}
};

struct NotBottleneckedError : Error {
  explicit NotBottleneckedError(const std::string& what) : Error(what) {}
};

struct DegreeMismatchError : Error {
  explicit DegreeMismatchError(const std::string& what) : Error(what) {}
};

struct IndexOutOfRangeError : Error {
  explicit IndexOutOfRangeError(const std::string& what) : Error(what) {}
};

struct DependentLineVectorsError : Error {
  explicit DependentLineVectorsError(const std::string& what) : Error(what) {}
};

struct VariableMismatchError : Error {
  explicit VariableMismatchError(const std::string& what) : Error(what) {}
};

struct UnknownExampleError : Error {
  explicit UnknownExampleError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace attninv
