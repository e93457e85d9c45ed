#pragma once

#include <stdexcept>
#include <string>

namespace rdfpg {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A term (IRI, blank node, literal, triple) violates its construction invariants.
class InvalidTerm : public Error {
 public:
  using Error::Error;
};

/// Inconsistent mapping configuration (prefix clash, malformed strategy, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rdfpg
