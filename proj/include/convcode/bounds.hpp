#pragma once

#include <cstddef>

#include "convcode/constructions.hpp"

namespace convcode {

/// Minimum total access (reads + writes) of a stable linear MDS conversion:
/// rF + lambda * min(kI, rF) when rI >= rF, rF + lambda * kI otherwise.
std::size_t access_lower_bound(const MergeParams& p);

/// Minimum number of blocks read from each initial stripe.
std::size_t read_lower_bound_per_stripe(const MergeParams& p);

/// Largest number of blocks that can be carried over unchanged: lambda * kI.
std::size_t max_unchanged(const MergeParams& p);

/// Cost of reading every data block and writing every final parity: nF.
std::size_t baseline_access(const MergeParams& p);

}  // namespace convcode
