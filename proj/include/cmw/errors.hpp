#pragma once

#include <stdexcept>
#include <string>

namespace cmw {

/// Malformed input, mixed fields, violated preconditions.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A truncation (ideal-norm bound, prime bound, depth) is too shallow for the
/// requested computation.  Never silently replaced by a partial answer.
struct insufficient_bound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Working precision cannot reach the requested accuracy.
struct precision_unreachable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integer-relation search found nothing acceptable.
struct no_relation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cached artifact failed its checksum, or an artifact could not be read.
struct artifact_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cmw
