// errors.hpp: exception hierarchy shared by every qsc module

#pragma once

#include <stdexcept>
#include <string>

namespace qsc {

/// Base for all errors raised by the simulator. Callers that only care
/// about "something was invalid" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QSC_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

QSC_DEFINE_ERROR(InvalidArgument);
QSC_DEFINE_ERROR(DimensionMismatch);
QSC_DEFINE_ERROR(NonHermitianInput);
QSC_DEFINE_ERROR(InvalidState);
QSC_DEFINE_ERROR(AngleOutOfRange);
QSC_DEFINE_ERROR(ProbabilityNotNormalized);
QSC_DEFINE_ERROR(NonUnitaryPropagator);
QSC_DEFINE_ERROR(WeightsNotNormalized);
QSC_DEFINE_ERROR(NoiseNotSupported);
QSC_DEFINE_ERROR(SingularSystem);
QSC_DEFINE_ERROR(CouplingOutOfRange);
QSC_DEFINE_ERROR(UnknownSampler);
QSC_DEFINE_ERROR(EmptyInput);
QSC_DEFINE_ERROR(ZeroDetuning);

#undef QSC_DEFINE_ERROR

}  // namespace qsc
