// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_ERRORS_HPP
#define F3R_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace f3r {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: Matrix Market streams, solver spec strings, stencil names.
class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Zero/negative pivots, fp16-underflowed factor diagonals, missing diagonal.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Structural solver failures (indefinite operator in CG, missing replica).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace f3r

#endif  // F3R_ERRORS_HPP
