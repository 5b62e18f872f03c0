#pragma once

#include <stdexcept>

namespace prox {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct EmptyStreamError : Error { using Error::Error; };
struct DegenerateLandmarksError : Error { using Error::Error; };
struct IllConditionedError : Error { using Error::Error; };
struct NotDetectedError : Error { using Error::Error; };

// signal
struct BadWindowError : Error { using Error::Error; };
struct BadSigmaError : Error { using Error::Error; };
struct DegenerateTraceError : Error { using Error::Error; };

// model
struct ShapeMismatchError : Error { using Error::Error; };
struct MissingDurationError : Error { using Error::Error; };
struct NonFiniteLossError : Error { using Error::Error; };

// eval
struct TooFewSubjectsError : Error { using Error::Error; };
struct EmptyPredictionListError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };
struct EmptyInputError : Error { using Error::Error; };

// synth
struct InvalidSpecError : Error { using Error::Error; };

// io
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace prox
