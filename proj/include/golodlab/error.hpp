#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace golodlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad polynomial text, bad spec document, inconsistent shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A computation needs data beyond a stored degree window.
class CapError : public Error {
 public:
  using Error::Error;
};

/// An invariant that must hold by construction was observed to fail.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace golodlab
