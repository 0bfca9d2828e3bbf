#pragma once

#include <stdexcept>
#include <string>

namespace gaitlift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GAITLIFT_DEFINE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

GAITLIFT_DEFINE_ERROR(InvalidNetwork);
GAITLIFT_DEFINE_ERROR(InvalidColoring);
GAITLIFT_DEFINE_ERROR(NotBalanced);
GAITLIFT_DEFINE_ERROR(UnknownNetwork);
GAITLIFT_DEFINE_ERROR(UnresolvedSymbol);
GAITLIFT_DEFINE_ERROR(InvalidParameters);
GAITLIFT_DEFINE_ERROR(DimensionMismatch);
GAITLIFT_DEFINE_ERROR(NonFinite);
GAITLIFT_DEFINE_ERROR(NoOscillation);
GAITLIFT_DEFINE_ERROR(IrregularPeriod);
GAITLIFT_DEFINE_ERROR(ClosureFailure);
GAITLIFT_DEFINE_ERROR(NoConvergence);
GAITLIFT_DEFINE_ERROR(StructureMismatch);
GAITLIFT_DEFINE_ERROR(EpsilonOutOfRange);
GAITLIFT_DEFINE_ERROR(FormatError);

#undef GAITLIFT_DEFINE_ERROR

}  // namespace gaitlift
