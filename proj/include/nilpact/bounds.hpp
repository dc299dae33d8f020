#pragma once

namespace nilpact {

// Exhaustiveness budget for an operation. Returns `def` unless the
// environment variable NILPOTENT_ACTIONS_BOUND is set, in which case that
// value overrides every default uniformly.
long long exhaustive_bound(long long def);

}  // namespace nilpact
