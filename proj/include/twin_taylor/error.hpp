#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twin_taylor {

enum class ErrorKind {
  InvalidArgument,
  InvalidPrecision,
  InvalidEnclosure,
  DivisionByIntervalContainingZero,
  NegativeOperand,
  BasePointMismatch,
  ZeroConstantTerm,
  NonzeroLowOrderCoefficient,
  TailBoundUnavailable,
  RatioConditionViolated,
  OrderExceedsTruncation,
  HypothesisNotCertified,
  InternalCrossCheckMismatch,
  DomainViolation,
  PoleProximity,
  ParseError,
  UsageError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace twin_taylor
