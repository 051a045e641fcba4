#pragma once

#include <stdexcept>
#include <string>

namespace bkm {

enum class ErrorKind {
  RejectNotBkm,
  NotSymmetrizable,
  NonIntegralDifference,
  CutoffTooLargeForBudget,
  NotFreeCase,
  CaseNotCovered,
  NotDominant,
  HypothesisFails,
  PremiseFails,
  UnboundedWithoutBox,
  NotASolution,
  InvalidInput,
};

const char* error_name(ErrorKind kind);

class BkmError : public std::runtime_error {
 public:
  BkmError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace bkm
