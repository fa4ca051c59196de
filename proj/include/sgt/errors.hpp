#pragma once

#include <stdexcept>
#include <string>

namespace sgt {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad letters, unparsable text, mismatched alphabets.
struct input_error : error {
  using error::error;
};

// An operation was called outside its domain (e.g. inverting a
// non-automorphism).
struct domain_error : error {
  using error::error;
};

// The operation is only defined for a class of inputs we can check
// (e.g. factor languages of non-primitive substitutions).
struct unsupported_error : error {
  using error::error;
};

// A supplied generating set is not a basis of the subgroup at hand.
struct basis_error : error {
  using error::error;
};

// A word was expected to lie in a subgroup but does not.
struct membership_error : error {
  using error::error;
};

// Broken internal invariant; indicates a bug rather than bad input.
struct internal_error : error {
  using error::error;
};

}  // namespace sgt
