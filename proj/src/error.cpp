#include "aal/error.hpp"

namespace aal {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::EmptySet: return "EmptySet";
    case Errc::BadThreshold: return "BadThreshold";
    case Errc::BadDelta: return "BadDelta";
    case Errc::BadEps: return "BadEps";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::EnergyTooSmall: return "EnergyTooSmall";
    case Errc::NoCandidate: return "NoCandidate";
    case Errc::NoGoodTuples: return "NoGoodTuples";
    case Errc::UnboundedBody: return "UnboundedBody";
    case Errc::TruncationSuspected: return "TruncationSuspected";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::EqualityCertificateFails: return "EqualityCertificateFails";
    case Errc::CannotFindIndependent: return "CannotFindIndependent";
    case Errc::TooFewFactors: return "TooFewFactors";
    case Errc::NonInjectiveAP: return "NonInjectiveAP";
    case Errc::ParseError: return "ParseError";
    case Errc::Overflow: return "Overflow";
  }
  return "UnknownError";
}

}  // namespace aal
