#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigsum {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed series text. `offset` is the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// A well-formed sum that lies outside the supported family.
class Unsupported : public Error {
 public:
  Unsupported(std::string reason, std::string subterm);

  const std::string& reason() const noexcept { return reason_; }
  const std::string& subterm() const noexcept { return subterm_; }

 private:
  std::string reason_;
  std::string subterm_;
};

/// Argument outside the mathematical domain of an evaluator (t <= 0, u >= 1, pole hit).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integrand returned NaN or infinity at an interior node.
class NonFinite : public Error {
 public:
  explicit NonFinite(double at);
  double at() const noexcept { return at_; }

 private:
  double at_;
};

}  // namespace trigsum
