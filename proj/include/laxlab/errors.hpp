#ifndef LAXLAB_ERRORS_HPP
#define LAXLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace laxlab {

struct NonTraceless : std::runtime_error {
  explicit NonTraceless(const std::string& what) : std::runtime_error(what) {}
};

struct LengthMismatch : std::runtime_error {
  explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroSpectralParameter : std::runtime_error {
  ZeroSpectralParameter() : std::runtime_error("spectral parameter zeta must be nonzero") {}
};

struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct JetOrderTooLow : std::runtime_error {
  explicit JetOrderTooLow(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidIndex : std::runtime_error {
  explicit InvalidIndex(const std::string& what) : std::runtime_error(what) {}
};

struct CflViolation : std::runtime_error {
  explicit CflViolation(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalBlowup : std::runtime_error {
  explicit NumericalBlowup(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientSamples : std::runtime_error {
  explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct ValidationError : std::runtime_error {
  std::string key;
  ValidationError(std::string key_, const std::string& what)
      : std::runtime_error(key_ + ": " + what), key(std::move(key_)) {}
};

}  // namespace laxlab

#endif
