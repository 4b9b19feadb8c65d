#ifndef KRULL_ERRORS_HPP
#define KRULL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace krull {

enum class Err {
  InvalidDescriptor,
  ShapeMismatch,
  UnsupportedRing,
  ResourceExhausted,
  ZeroDenominator,
  NotACollapse,
  CapExceeded,
  NotADependence,
  LeadingNotMonic,
  BoundTooLow,
  MalformedDecomposition,
  NotLocalCollapse,
  NotComaximal,
  MalformedFraction,
  MalformedWitness,
  NotExpressible,
  NotAnnihilator,
  CoefficientEscapesIdeal,
  PreconditionBreach,
  NotARelation,
  SaturationRefutes,
  NoUnitCoefficient,
  NotVariableTail,
  InternalMismatch,
  InputError,
};

const char* err_name(Err e);

class KrullError : public std::runtime_error {
 public:
  KrullError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw KrullError(code, what); }

}  // namespace krull

#endif
