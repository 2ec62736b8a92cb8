#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace invsurf {

// Base class for every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- jet / numeric errors -----------------------------------------------------

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NonFiniteSample : public Error {
public:
    using Error::Error;
};

// --- expression language ------------------------------------------------------

// Parse failure; offset is a byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(const std::string& what, std::size_t offset)
        : Error(what + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class ArityError : public Error {
public:
    using Error::Error;
};

// --- curves and surfaces ------------------------------------------------------

class DegenerateCurvature : public Error {
public:
    using Error::Error;
};

class IrregularPoint : public Error {
public:
    using Error::Error;
};

class UnknownCurve : public Error {
public:
    using Error::Error;
};

class InvalidParam : public Error {
public:
    using Error::Error;
};

class SingularPoint : public Error {
public:
    using Error::Error;
};

class ExcludedPoint : public Error {
public:
    using Error::Error;
};

class CenterHit : public Error {
public:
    using Error::Error;
};

// --- verification and scenes --------------------------------------------------

class EmptyGrid : public Error {
public:
    using Error::Error;
};

class CurveNotArcLength : public Error {
public:
    using Error::Error;
};

// Scene file problem; message carries "file:line: what".
class SceneError : public Error {
public:
    SceneError(const std::string& file, int line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace invsurf
