#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curvest {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

/// Circumradius/Menger input contains coincident points.
struct DegenerateTriple : Error {
    using Error::Error;
};

/// Opposite-side test called with a chord endpoint equal to the apex.
struct DegeneratePair : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

struct OffShapeError : Error {
    using Error::Error;
};

struct NonSmoothPointError : Error {
    using Error::Error;
};

/// Cloud is smaller than the sample-size gate demands.
struct InsufficientSamples : Error {
    std::uint64_t required;

    InsufficientSamples(std::uint64_t required_, std::uint64_t provided)
        : Error("insufficient samples: need at least " + std::to_string(required_) +
                " points, got " + std::to_string(provided)),
          required(required_) {}
};

/// No pair of neighbors brackets the query point within epsilon.
struct NoBracketingPair : Error {
    using Error::Error;
};

struct EmptyNeighborhood : Error {
    using Error::Error;
};

struct EmptyConjugateSet : Error {
    using Error::Error;
};

struct EmptyScoreSet : Error {
    using Error::Error;
};

/// The witness chords of the first principal direction are collinear.
struct DegenerateNormal : Error {
    using Error::Error;
};

} // namespace curvest
