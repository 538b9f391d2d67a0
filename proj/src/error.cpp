#include "wedge/error.hpp"

namespace wedge {

const char* err_name(Err e) {
  switch (e) {
    case Err::Detached: return "Detached";
    case Err::NotSupersonic: return "NotSupersonic";
    case Err::NearSonic: return "NearSonic";
    case Err::NotSubsonic: return "NotSubsonic";
    case Err::DegeneratePoint: return "DegeneratePoint";
    case Err::Stagnation: return "Stagnation";
    case Err::NoSubsonicRoot: return "NoSubsonicRoot";
    case Err::ParallelJump: return "ParallelJump";
    case Err::SonicDegeneracy: return "SonicDegeneracy";
    case Err::TransformDegenerate: return "TransformDegenerate";
    case Err::RootBracketFail: return "RootBracketFail";
    case Err::EllipticityLost: return "EllipticityLost";
    case Err::ObliquenessLost: return "ObliquenessLost";
    case Err::SolverDiverged: return "SolverDiverged";
    case Err::LeftDeltaBall: return "LeftDeltaBall";
    case Err::MaxIterations: return "MaxIterations";
    case Err::OuterDiverged: return "OuterDiverged";
    case Err::JacobianDegenerate: return "JacobianDegenerate";
    case Err::InsufficientAnnuli: return "InsufficientAnnuli";
    case Err::BadExponents: return "BadExponents";
    case Err::PreconditionViolated: return "PreconditionViolated";
    case Err::EmptySweep: return "EmptySweep";
    case Err::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace wedge
