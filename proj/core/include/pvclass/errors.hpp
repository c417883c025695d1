#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pvclass {

/// Bad argument value (alpha outside (0,1), mismatched dimensions, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structural problem with a data set: empty class, ragged rows, unknown label.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fit could not be computed because a matrix lost positive definiteness.
///
/// `pivot()` is the failing Cholesky column; `edit_index()` is set when the
/// failure happened inside an edited refit (swap index, removed row, ...).
class DegenerateFitError : public std::runtime_error {
 public:
  DegenerateFitError(const std::string& what, std::size_t pivot,
                     std::optional<std::size_t> edit_index = std::nullopt)
      : std::runtime_error(what), pivot_(pivot), edit_index_(edit_index) {}

  std::size_t pivot() const noexcept { return pivot_; }
  std::optional<std::size_t> edit_index() const noexcept { return edit_index_; }

 private:
  std::size_t pivot_;
  std::optional<std::size_t> edit_index_;
};

/// Thrown by the Cholesky routines on a non-positive pivot.
class SingularMatrixError : public DegenerateFitError {
 public:
  using DegenerateFitError::DegenerateFitError;
};

}  // namespace pvclass
