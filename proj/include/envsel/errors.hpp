#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace envsel {

// Input data broke a structural contract (monotonicity, CSV layout, ...).
class validation_error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit validation_error(const std::string& what, std::size_t index = npos)
      : std::runtime_error(what), index_(index) {}

  // Index of the first offending element, or npos when not positional.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Design matrix is numerically rank-deficient.
class singular_fit_error : public std::runtime_error {
 public:
  // Marks the intercept column rather than a feature column.
  static constexpr std::size_t intercept = static_cast<std::size_t>(-1);

  singular_fit_error(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}

  // 0-based feature column that could not be pivoted, or `intercept`.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// A confidence measure was requested where it is undefined (V(0) = 0).
class undefined_measure_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or replaced.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace envsel
