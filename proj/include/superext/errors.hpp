#pragma once

#include <stdexcept>
#include <string>

namespace superext {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: empty subsets, non-homomorphisms, size mismatches.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A size cap was exceeded (ground set, enumeration tier, table size).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A search exhausted its node budget before finishing.
class ResourceError : public Error {
 public:
  ResourceError(std::string const& what, unsigned long long nodes)
      : Error(what), nodes_(nodes) {}
  unsigned long long nodes() const noexcept { return nodes_; }

 private:
  unsigned long long nodes_;
};

// Input files that cannot be decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace superext
