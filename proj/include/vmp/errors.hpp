#pragma once

#include <stdexcept>
#include <string>

namespace vmp {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    using Error::Error;
};

class AsymptoticRegimeError : public Error {
  public:
    using Error::Error;
};

class GammaPoleError : public Error {
  public:
    using Error::Error;
};

class SeriesBudgetError : public Error {
  public:
    using Error::Error;
};

class BracketError : public Error {
  public:
    using Error::Error;
};

// Carries the name of the first polynomial that disagreed.
class ChainMismatchError : public Error {
  public:
    ChainMismatchError(std::string poly, const std::string& detail);
    const std::string& polynomial() const noexcept { return poly_; }

  private:
    std::string poly_;
};

}  // namespace vmp
