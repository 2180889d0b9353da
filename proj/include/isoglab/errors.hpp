#pragma once

#include <stdexcept>
#include <string>

namespace isoglab {

// Precondition / input violations. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal contracts. The CLI maps these to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

#define ISOGLAB_ERROR(Name)                                                  \
    class Name : public Error {                                             \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

ISOGLAB_ERROR(FieldMismatch);
ISOGLAB_ERROR(DivisionByZero);
ISOGLAB_ERROR(FieldTooLarge);
ISOGLAB_ERROR(CurveMismatch);
ISOGLAB_ERROR(ExtensionTooLarge);
ISOGLAB_ERROR(SamplingFailure);
ISOGLAB_ERROR(BadGroupOrder);
ISOGLAB_ERROR(NotASubgroup);
ISOGLAB_ERROR(KernelNotGaloisStable);
ISOGLAB_ERROR(LinkMismatch);
ISOGLAB_ERROR(UnsupportedPrime);
ISOGLAB_ERROR(TooLargeForExact);
ISOGLAB_ERROR(BadActionElement);
ISOGLAB_ERROR(BadGenerator);
ISOGLAB_ERROR(NotInSubgroup);
ISOGLAB_ERROR(NotSupersingular);
ISOGLAB_ERROR(EigenvalueNotFound);
ISOGLAB_ERROR(NotPrime);
ISOGLAB_ERROR(BasisSamplingFailure);
ISOGLAB_ERROR(DegenerateKernel);
ISOGLAB_ERROR(MalformedCiphertext);
ISOGLAB_ERROR(BadDirectionSet);
ISOGLAB_ERROR(BadInput);
ISOGLAB_ERROR(CurveSearchExhausted);

#undef ISOGLAB_ERROR

#define ISOGLAB_FATAL(Name)                                                          \
    class Name : public InternalError {                                              \
    public:                                                                          \
        explicit Name(const std::string& what) : InternalError(#Name ": " + what) {} \
    }

ISOGLAB_FATAL(Ambiguous);
ISOGLAB_FATAL(NoPath);
ISOGLAB_FATAL(IrreducibilityCheckFailed);

#undef ISOGLAB_FATAL

}  // namespace isoglab
