#include "cahs/common.hpp"

namespace cahs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateTransform: return "DegenerateTransform";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DivergenceSuspected: return "DivergenceSuspected";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::ProbeNearZero: return "ProbeNearZero";
    case ErrorKind::NearCriticalPoint: return "NearCriticalPoint";
    case ErrorKind::PoleInTerm: return "PoleInTerm";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::AmbiguousRoot: return "AmbiguousRoot";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::UnresolvedSingularity: return "UnresolvedSingularity";
    case ErrorKind::AZero: return "AZero";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::PickIndefinite: return "PickIndefinite";
    case ErrorKind::RankCollapse: return "RankCollapse";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::LftPole: return "LftPole";
  }
  return "Unknown";
}

}  // namespace cahs
