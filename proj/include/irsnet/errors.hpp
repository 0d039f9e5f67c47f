#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace irsnet {

// First failing field constraint during validation; `field` names it.
struct violated_invariant : std::runtime_error {
  std::string field;
  violated_invariant(std::string f, const std::string& detail)
      : std::runtime_error("invariant violated: " + f + ": " + detail),
        field(std::move(f)) {}
};

// Argument outside a formula's domain.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bound subterm evaluated to inf or nan; `subterm` names the block.
struct non_finite : std::runtime_error {
  std::string subterm;
  explicit non_finite(std::string term)
      : std::runtime_error("non-finite bound term: " + term),
        subterm(std::move(term)) {}
};

// tau outside the open interval (0, tau_max) of a tail bound.
struct tau_out_of_domain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace irsnet
