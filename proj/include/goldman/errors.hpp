#pragma once

#include <stdexcept>
#include <string>

namespace goldman {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation requires a non-central element but |trace| is within eps of 2.
struct DegenerateElement : Error {
  using Error::Error;
};

// Conjugacy-dependent solve asked for elements in different conjugacy classes.
struct TraceMismatch : Error {
  using Error::Error;
};

// Tuple length does not match the surface data it is paired with.
struct ArityMismatch : Error {
  using Error::Error;
};

// A point claimed to satisfy the defining relations does not, beyond tolerance.
struct NotInVariety : Error {
  using Error::Error;
};

// Rejection sampling exceeded its attempt budget.
struct SamplerStuck : Error {
  using Error::Error;
};

// Two inputs that must share surface data / variety kind do not.
struct SpecMismatch : Error {
  using Error::Error;
};

// Raw coordinates fail validation (norm too far from 1, bad field, ...).
struct InvalidElement : Error {
  using Error::Error;
};

}  // namespace goldman
