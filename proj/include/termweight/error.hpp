#pragma once

#include <stdexcept>
#include <string>

namespace termweight {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A corpus file or directory could not be read or contains no documents.
class IngestionError : public Error {
 public:
  using Error::Error;
};

/// A train/test split could not be produced under the requested policy.
class SplitError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment, scheme or classifier configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Internal data disagree with each other (e.g. a term id outside the vocabulary).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed sidecar, vector, model or report file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace termweight
