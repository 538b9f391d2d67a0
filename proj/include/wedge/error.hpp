// Typed errors for solver preconditions and divergence conditions.
#pragma once

#include <stdexcept>
#include <string>

namespace wedge {

enum class Err {
  Detached,
  NotSupersonic,
  NearSonic,
  NotSubsonic,
  DegeneratePoint,
  Stagnation,
  NoSubsonicRoot,
  ParallelJump,
  SonicDegeneracy,
  TransformDegenerate,
  RootBracketFail,
  EllipticityLost,
  ObliquenessLost,
  SolverDiverged,
  LeftDeltaBall,
  MaxIterations,
  OuterDiverged,
  JacobianDegenerate,
  InsufficientAnnuli,
  BadExponents,
  PreconditionViolated,
  EmptySweep,
  ConfigError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace wedge
