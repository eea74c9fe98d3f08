#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coendo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalType : public Error {
 public:
  using Error::Error;
};

// Thrown when an enumeration would exceed its configured cap. `exact_size`
// carries the size that was computed without enumerating (0 when unknown).
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t exact_size)
      : Error(what), exact_size_(exact_size) {}
  std::uint64_t exact_size() const noexcept { return exact_size_; }

 private:
  std::uint64_t exact_size_;
};

class NotASublattice : public Error {
 public:
  using Error::Error;
};

class NotFullRank : public Error {
 public:
  using Error::Error;
};

class BadCharacteristic : public Error {
 public:
  using Error::Error;
};

class InvalidDatum : public Error {
 public:
  using Error::Error;
};

class MissingCount : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace coendo
