#ifndef COFIN_ERRORS_HPP
#define COFIN_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cofin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateArg : Error {
    using Error::Error;
};

struct DuplicateVal : Error {
    using Error::Error;
};

struct InvalidPerm : Error {
    using Error::Error;
};

struct EmptyWord : Error {
    using Error::Error;
};

struct UnknownLetter : Error {
    using Error::Error;
};

struct UnknownElement : Error {
    using Error::Error;
};

struct BadGroupTable : Error {
    using Error::Error;
};

struct KindMismatch : Error {
    using Error::Error;
};

struct AlreadyDefined : Error {
    using Error::Error;
};

struct NotEmbedKind : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

/// The admissible-extension set has cofinite complement only under the
/// usual representation hypotheses; degenerate ground assignments can
/// make the complement infinite, which is reported rather than truncated.
struct UnboundedForbiddenSet : Error {
    using Error::Error;
};

struct SearchExhausted : Error {
    SearchExhausted(std::uint64_t bound, std::string what)
        : Error(std::move(what)), bound(bound) {}
    std::uint64_t bound;
};

struct NoDisjointOrbit : Error {
    using Error::Error;
};

struct UnsupportedDescriptor : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace cofin

#endif
