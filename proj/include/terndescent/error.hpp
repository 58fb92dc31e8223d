#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace terndescent {

enum class ErrorKind {
  invalid_position,
  nontermination_risk,
  malformed_table,
  not_a_ring,
  bound_exceeded,
  foreign_element,
  arity_mismatch,
  empty_subset,
  not_a_monomorphism,
  not_a_subalgebra,
  bad_embedding,
  parse_error,
  ill_formed_rule,
  invalid_algebra,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All library failures surface as this exception; `kind()` distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace terndescent
