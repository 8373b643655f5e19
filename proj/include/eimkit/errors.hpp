// SPDX-License-Identifier: Apache-2.0
//
// Error types thrown across the library. Every error derives from
// eimkit::Error so callers (notably the CLI) can map them uniformly.

#pragma once

#include <stdexcept>
#include <string>

namespace eimkit {

struct Error : std::runtime_error {
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed input text (CSV rows, JSON documents).
struct ParseError : Error {
  using Error::Error;
};

// Shape mismatches: ragged CSV rows, wrong vector lengths, inconsistent
// coordinate dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// Values outside the admissible set, e.g. NaN/Inf snapshot entries.
struct ValueError : Error {
  using Error::Error;
};

// A configuration that violates its own invariants (bad dMax, bad norm spec).
struct InvalidConfig : Error {
  using Error::Error;
};

// A square factorization met a pivot below the admissible floor.
// `step` identifies the greedy step the matrix belonged to, -1 outside a build.
struct SingularMatrix : Error {
  SingularMatrix(const std::string& what_arg, long step_arg)
      : Error(what_arg), step(step_arg) {}
  long step;
};

// The greedy met a singular interpolation matrix while its pivot was still
// above the stopping threshold. This should not happen in exact arithmetic;
// it signals floating-point breakdown and aborts the build loudly.
struct NumericalBreakdown : Error {
  NumericalBreakdown(const std::string& what_arg, long step_arg,
                     double pivot_arg, double condition_arg)
      : Error(what_arg), step(step_arg), pivot(pivot_arg),
        condition(condition_arg) {}
  long step;
  double pivot;
  double condition;
};

// The normalized-residual recursion hit a zero pivot; the model is corrupted.
struct DegeneratePivot : Error {
  using Error::Error;
};

// A discard request would remove every interpolation point / form.
struct AllDropped : Error {
  using Error::Error;
};

// The greedy could not reach the requested rank on the given grids.
struct BuildFailure : Error {
  using Error::Error;
};

}  // namespace eimkit
