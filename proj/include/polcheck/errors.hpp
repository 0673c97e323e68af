#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace polcheck {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
};

class SpecMismatch : public Error {
   public:
    using Error::Error;
};

/// Substitution drove a denominator to the zero element.
class DenominatorVanishes : public Error {
   public:
    using Error::Error;
};

class InvalidSpec : public Error {
   public:
    using Error::Error;
};

class InvalidImage : public Error {
   public:
    using Error::Error;
};

class UnsupportedSpec : public Error {
   public:
    using Error::Error;
};

class ArityTooLarge : public Error {
   public:
    using Error::Error;
};

class InconsistentPeeling : public Error {
   public:
    using Error::Error;
};

class NameError : public Error {
   public:
    using Error::Error;
};

class TypeMismatch : public Error {
   public:
    using Error::Error;
};

/// Parse failure with a location and the set of tokens that would have been accepted.
class SyntaxError : public Error {
   public:
    SyntaxError(std::string message, std::size_t position, std::set<std::string> expected,
                std::size_t line = 0, std::size_t column = 0)
        : Error(std::move(message)),
          position_(position),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::set<std::string>& expected() const noexcept { return expected_; }

   private:
    std::size_t position_;
    std::size_t line_;
    std::size_t column_;
    std::set<std::string> expected_;
};

}  // namespace polcheck
