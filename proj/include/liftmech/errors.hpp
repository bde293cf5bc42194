#pragma once

#include <stdexcept>
#include <string>

namespace liftmech {

/** Base class for all errors raised by this library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** A probability entry is negative beyond tolerance. */
class NegativeEntryError : public Error {
 public:
  explicit NegativeEntryError(const std::string& what) : Error(what) {}
};

/** A distribution does not sum to one within the input tolerance. */
class NotNormalizedError : public Error {
 public:
  explicit NotNormalizedError(const std::string& what) : Error(what) {}
};

/** A marginal of the joint distribution vanishes. */
class ZeroMarginalError : public Error {
 public:
  explicit ZeroMarginalError(const std::string& what) : Error(what) {}
};

/** Vector or matrix dimensions do not agree. */
class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

/** A mechanism's columns do not mix back to the data marginal. */
class MixtureMismatchError : public Error {
 public:
  explicit MixtureMismatchError(const std::string& what) : Error(what) {}
};

/** A lift bound that does not define a usable polytope. */
class InvalidBoundError : public Error {
 public:
  explicit InvalidBoundError(const std::string& what) : Error(what) {}
};

/** The mixture program has no feasible point; indicates a caller bug. */
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/** A parameter lies outside its documented validity range. */
class OutOfRangeError : public Error {
 public:
  explicit OutOfRangeError(const std::string& what) : Error(what) {}
};

/** Rejection sampling exceeded its retry budget. */
class RejectionOverflowError : public Error {
 public:
  explicit RejectionOverflowError(const std::string& what) : Error(what) {}
};

/** Malformed configuration or command-line input. */
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/** Filesystem failure while reading or writing results. */
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

/** An internal invariant was violated; always a bug. */
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace liftmech
