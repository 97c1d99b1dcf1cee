#pragma once

#include <stdexcept>
#include <string>

namespace aal {

enum class Errc {
  CapExceeded,
  GroupMismatch,
  EmptySet,
  BadThreshold,
  BadDelta,
  BadEps,
  NotSymmetric,
  EmptyIntersection,
  EnergyTooSmall,
  NoCandidate,
  NoGoodTuples,
  UnboundedBody,
  TruncationSuspected,
  HypothesisFails,
  EqualityCertificateFails,
  CannotFindIndependent,
  TooFewFactors,
  NonInjectiveAP,
  ParseError,
  Overflow,
};

const char* errc_name(Errc c);

/// Workbench error carrying a machine-checkable code next to the message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace aal
