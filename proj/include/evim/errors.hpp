#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Belief algebra.
class NotNormalized : public Error {
    using Error::Error;
};
class NegativeMass : public Error {
    using Error::Error;
};
class TotalConflict : public Error {
    using Error::Error;
};

// Input.
class MissingFile : public Error {
  public:
    explicit MissingFile(std::string path)
        : Error("cannot open input file: " + path), path_(std::move(path)) {}
    const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

class ParseError : public Error {
  public:
    ParseError(std::string file, std::size_t line, const std::string &what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line) {}
    const std::string &file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

  private:
    std::string file_;
    std::size_t line_;
};

class UnknownNode : public Error {
    using Error::Error;
};

// Estimation.
class DegenerateScale : public Error {
    using Error::Error;
};

// Selection and evaluation.
class AlreadySeed : public Error {
    using Error::Error;
};
class KTooLarge : public Error {
    using Error::Error;
};
class TooLargeToEnumerate : public Error {
    using Error::Error;
};
class InfeasibleSpec : public Error {
    using Error::Error;
};

} // namespace evim
