#pragma once

#include <stdexcept>
#include <string>

namespace qcond {

// Base class for all domain errors. `name()` is the stable identifier
// reported by the CLI (exit-code mapping and report output).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define QCOND_DEFINE_ERROR(NAME)                                     \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

QCOND_DEFINE_ERROR(InvalidDimension);
QCOND_DEFINE_ERROR(NotLagrangian);
QCOND_DEFINE_ERROR(NotTransverse);
QCOND_DEFINE_ERROR(SingularGraph);
QCOND_DEFINE_ERROR(FewerThanThreePoints);
QCOND_DEFINE_ERROR(ParallelLines);
QCOND_DEFINE_ERROR(MissingSupportTags);
QCOND_DEFINE_ERROR(UnboundedRegion);
QCOND_DEFINE_ERROR(InvalidGrid);
QCOND_DEFINE_ERROR(UnknownDescriptor);
QCOND_DEFINE_ERROR(ZeroDenominator);
QCOND_DEFINE_ERROR(UnboundedFirstSet);
QCOND_DEFINE_ERROR(ZeroTimeSeparation);
QCOND_DEFINE_ERROR(CoincidentTimes);
QCOND_DEFINE_ERROR(CausticTime);
QCOND_DEFINE_ERROR(UnboundedConditionSet);
QCOND_DEFINE_ERROR(QuadratureNotConverged);
QCOND_DEFINE_ERROR(DegenerateDirections);
QCOND_DEFINE_ERROR(HypothesisViolation);
QCOND_DEFINE_ERROR(DegeneratePairing);
QCOND_DEFINE_ERROR(UnsupportedChainLength);
QCOND_DEFINE_ERROR(ConfigParseError);

#undef QCOND_DEFINE_ERROR

}  // namespace qcond
