#pragma once

#include "pc4pm/core/timestamp.hpp"

namespace pc4pm {

// Execution settings shared by every log transformation: the stamp written
// into appended operation records and the data-parallel worker count.
// Outputs never depend on `workers`.
struct RunContext {
  Timestamp applied_at = Timestamp::now();
  unsigned workers = 1;
};

}  // namespace pc4pm
