#pragma once

#include <stdexcept>
#include <string>

namespace qmem {

struct NonHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPsdError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadDimError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompleteKrausError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonzeroAError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ellipsoid fitting / reconstruction
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooFewPointsError : FitError {
  using FitError::FitError;
};
struct DegenerateDataError : FitError {
  using FitError::FitError;
};
struct NotAnEllipsoidError : FitError {
  using FitError::FitError;
};
struct NoValidCandidateError : FitError {
  using FitError::FitError;
};
struct BadResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// circuit simulator
struct BadTargetsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadShotsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace qmem
