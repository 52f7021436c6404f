#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubefree {

/// Argument outside its documented range (residue >= 2^n, layer index > n+1, ...).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Structurally invalid argument (even scaling factor, bad permutation, empty multiset).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration would exceed its configured budget, or a
/// construction does not fit in the ambient group.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t required = 0, std::uint64_t budget = 0)
      : std::runtime_error(what), required_(required), budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A compression was requested at a site where its hypotheses do not hold.
class InapplicableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cubefree
