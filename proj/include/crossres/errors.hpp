#pragma once

#include <stdexcept>

namespace crossres {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document (edge list, GraphML, GML, layout JSON).
struct ParseError : Error {
  using Error::Error;
};

/// A drawing violates the straight-line drawing invariants.
struct InvalidDrawingError : Error {
  using Error::Error;
};

/// A randomized placement procedure exhausted its attempt budget.
struct CapacityError : Error {
  using Error::Error;
};

}  // namespace crossres
