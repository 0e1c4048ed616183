#pragma once

#include <stdexcept>
#include <string>

namespace crkit {

/// Domain error with a stable machine-readable name, surfaced by the CLI as
/// {"error": name} with exit code 2.
class error : public std::runtime_error {
  public:
    error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

#define CRKIT_ERROR(id)                                              \
    class id : public error {                                        \
      public:                                                        \
        explicit id(const std::string& what) : error(#id, what) {}   \
    }

CRKIT_ERROR(LogBranchFailure);
CRKIT_ERROR(NonConvergent);
CRKIT_ERROR(NotNull);
CRKIT_ERROR(NotSiegel);
CRKIT_ERROR(InfiniteOperand);
CRKIT_ERROR(NotExterior);
CRKIT_ERROR(NotInGroup);
CRKIT_ERROR(AmbiguousNearBoundary);
CRKIT_ERROR(NotElliptic);
CRKIT_ERROR(NotRationalType);
CRKIT_ERROR(IdentityInput);
CRKIT_ERROR(NotClosed);
CRKIT_ERROR(NotOnTorus);
CRKIT_ERROR(CurvesTooClose);
CRKIT_ERROR(NotUnipotent);
CRKIT_ERROR(CircleHitsFixedPoint);
CRKIT_ERROR(NonUnimodular);
CRKIT_ERROR(NotCoprime);
CRKIT_ERROR(IrrationalElliptic);
CRKIT_ERROR(UnsupportedEllipticType);
CRKIT_ERROR(UnknownFamily);
CRKIT_ERROR(NonRealDelta);
CRKIT_ERROR(DegenerateDenominator);
CRKIT_ERROR(NegativeDelta);
CRKIT_ERROR(InvariantViolation);
CRKIT_ERROR(ModelMismatch);

#undef CRKIT_ERROR

}  // namespace crkit
