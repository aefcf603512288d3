#ifndef VISTAIN_ERRORS_HPP
#define VISTAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vistain {

// Process exit classes used by the CLI: 1 = usage (handled by the flag
// parser), 2 = bad input data or I/O, 3 = numeric failure.
enum class ErrorClass { data = 2, numeric = 3 };

class Error : public std::runtime_error {
public:
  Error(ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

private:
  ErrorClass cls_;
};

struct InvalidInputError : Error {
  explicit InvalidInputError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct InsufficientTissueError : Error {
  explicit InsufficientTissueError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct DegenerateHistogramError : Error {
  explicit DegenerateHistogramError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct DegenerateInputError : Error {
  explicit DegenerateInputError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct InsufficientSamplesError : Error {
  explicit InsufficientSamplesError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct StateError : Error {
  explicit StateError(const std::string& msg) : Error(ErrorClass::data, msg) {}
};

struct SingularMatrixError : Error {
  explicit SingularMatrixError(const std::string& msg) : Error(ErrorClass::numeric, msg) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(ErrorClass::numeric, msg) {}
};

}  // namespace vistain

#endif
