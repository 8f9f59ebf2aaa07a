#pragma once

#include <stdexcept>

namespace jrpulse {

// Requested off-resonance fraction outside the validity range of a
// construction (the sandwich angles become unreal).
struct OutOfRangeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Construction degenerates at the requested angle (180 degree sandwich).
struct DegenerateError : std::domain_error {
  using std::domain_error::domain_error;
};

// Sequence cannot be realised physically (negative delay in a timed mode).
struct NonPhysicalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reserved policy slot with no implementation behind it.
struct NotImplementedError : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed serialized input (gate / sequence / system descriptions).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jrpulse
