#pragma once

#include <stdexcept>
#include <string>

namespace qskew {

// Base class for all validation and protocol errors. Messages name the
// violated invariant and the measured violation.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QSKEW_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// state / operator validation
QSKEW_DEFINE_ERROR(NotHermitian);
QSKEW_DEFINE_ERROR(NotUnitTrace);
QSKEW_DEFINE_ERROR(NotPositive);
QSKEW_DEFINE_ERROR(DimensionMismatch);
QSKEW_DEFINE_ERROR(NotUnitary);
QSKEW_DEFINE_ERROR(NotUnitVector);

// channels
QSKEW_DEFINE_ERROR(IncompleteKraus);
QSKEW_DEFINE_ERROR(NonIncoherentEnvironment);
QSKEW_DEFINE_ERROR(TooFewFlagStates);

// measures
QSKEW_DEFINE_ERROR(DegenerateSpectrum);
QSKEW_DEFINE_ERROR(EmptyGroup);

// interferometry / shots
QSKEW_DEFINE_ERROR(ZeroSensitivityAncilla);
QSKEW_DEFINE_ERROR(ZeroPhase);
QSKEW_DEFINE_ERROR(AncillaNotBasisElement);
QSKEW_DEFINE_ERROR(IncompleteTable);
QSKEW_DEFINE_ERROR(InvalidProbability);

// randlab / cli
QSKEW_DEFINE_ERROR(RankOutOfRange);
QSKEW_DEFINE_ERROR(UnknownSuite);
QSKEW_DEFINE_ERROR(ParseError);
QSKEW_DEFINE_ERROR(InvalidArgument);

#undef QSKEW_DEFINE_ERROR

}  // namespace qskew
