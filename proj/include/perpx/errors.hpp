#pragma once

#include <stdexcept>
#include <string>

namespace perpx {

/* Raised on malformed user input or violated operation preconditions. */
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Raised when two independent computation routes disagree, or an internal
 * invariant that mathematics guarantees is found broken.  Seeing one of
 * these is always a bug (or a wrong input silently accepted earlier). */
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Raised when a configurable enumeration cap is exceeded. */
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace perpx
