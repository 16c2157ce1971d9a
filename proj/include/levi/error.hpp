#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace levi {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A supplied certificate (tail bound, geometric ratio, bijection inverse,
/// chain, partition) is contradicted by a sampled value.
class CertificateViolation : public Error {
 public:
  using Error::Error;
};

class WindowInconsistency : public CertificateViolation {
 public:
  using CertificateViolation::CertificateViolation;
};

class DominationViolated : public CertificateViolation {
 public:
  DominationViolated(std::uint64_t index)
      : CertificateViolation("domination violated at index " + std::to_string(index)),
        index_(index) {}
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

class ChainInvalid : public CertificateViolation {
 public:
  using CertificateViolation::CertificateViolation;
};

class PartitionInvalid : public CertificateViolation {
 public:
  using CertificateViolation::CertificateViolation;
};

/// A series that had to converge for the operation could not be certified.
class NotCertified : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression or scenario text; offset is a byte position in the
/// expression, or the line number for scenario files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed expression that cannot be evaluated (unbound name,
/// non-integer exponent, ...).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace levi
