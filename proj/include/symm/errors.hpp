#pragma once

#include <stdexcept>
#include <string>

namespace symm {

// Base of every error thrown by the library. Negative decisions (not
// symmetric, not symmetrizable) are returned as values, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ValueError : public Error {
 public:
  using Error::Error;
};

class SingularResolvent : public Error {
 public:
  using Error::Error;
};

class SingularTransform : public Error {
 public:
  using Error::Error;
};

class SingularBlock : public Error {
 public:
  using Error::Error;
};

class ExhaustedRetries : public Error {
 public:
  using Error::Error;
};

class NotSymmetricMatrix : public Error {
 public:
  using Error::Error;
};

// Non-diagonalizable system matrix; general Jordan structure is unsupported.
class Defective : public Error {
 public:
  using Error::Error;
};

// Operation requires n+m distinct real eigenvalues.
class WrongStructure : public Error {
 public:
  using Error::Error;
};

class PatternLimitExceeded : public Error {
 public:
  using Error::Error;
};

class MinimalityError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class SingularA : public Error {
 public:
  using Error::Error;
};

class IllPosedLoop : public Error {
 public:
  using Error::Error;
};

}  // namespace symm
