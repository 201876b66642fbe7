#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subshift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or geometry violation by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed stage, pattern, sparse-set or assignment file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// The admissibility predicate cannot be met at the requested geometry.
class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

// A sparse average over an empty index set is undefined.
class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

// The embedding could not keep a substituted word admissible.
class DensityViolation : public Error {
 public:
  DensityViolation(int level, std::uint64_t changed, std::uint64_t budget,
                   const std::string& detail)
      : Error(detail), level_(level), changed_(changed), budget_(budget) {}

  int level() const noexcept { return level_; }
  std::uint64_t changed_blocks() const noexcept { return changed_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  int level_;
  std::uint64_t changed_;
  std::uint64_t budget_;
};

}  // namespace subshift
