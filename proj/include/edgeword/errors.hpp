#ifndef EDGEWORD_ERRORS_HPP
#define EDGEWORD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edgeword {

// Base class so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotIrreducible : Error {
    using Error::Error;
};
struct NotAperiodic : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct SameState : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct NotClassic : Error {
    using Error::Error;
};
struct HorizonTooShort : Error {
    using Error::Error;
};
struct AlphabetTooLarge : Error {
    using Error::Error;
};
struct InvalidDistribution : Error {
    using Error::Error;
};
struct DegenerateVariance : Error {
    using Error::Error;
};
struct BadInput : Error {
    using Error::Error;
};

// Raised when a word game is one of the known exceptional pairs; carries the
// classifier tag so the CLI can still print the certificate and exit 2.
struct ExceptionalPair : Error {
    std::string tag;
    ExceptionalPair(const std::string& msg, std::string tag_)
        : Error(msg), tag(std::move(tag_)) {}
};

// Raised when an exact computation would exceed the memory cap; carries the
// estimate so the caller can report it.
struct ResourceCap : Error {
    unsigned long long estimated_bytes;
    unsigned long long cap_bytes;
    ResourceCap(const std::string& msg, unsigned long long est, unsigned long long cap)
        : Error(msg), estimated_bytes(est), cap_bytes(cap) {}
};

} // namespace edgeword

#endif
