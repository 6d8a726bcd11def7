#pragma once

#include <stdexcept>
#include <string>

namespace stocksent {

// Base for every data-level failure. The CLI maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: empty series, nMax < 1, degenerate split, size mismatch.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents (missing column, bad row length, unparseable cell).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A parsed value that violates a domain constraint (negative price).
class ValueError : public Error {
 public:
  using Error::Error;
};

// Collection-level inconsistency: duplicate ids or dates, a class missing
// from a pairwise SVM subproblem.
class DataError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace stocksent
