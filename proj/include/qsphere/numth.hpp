#pragma once

// Small exact number-theory helpers shared by the field builders and the
// construction validators.  Everything is deterministic trial division; the
// inputs are parameter-sized (64-bit), not cryptographic.

#include <map>
#include <vector>

#include "qsphere/common.hpp"

namespace qsphere {

bool is_prime_u64(u64 n);
std::map<u64, u32> factor_u64(u64 n);  // prime -> multiplicity, n >= 1

// Largest power of p dividing n ("the p-part"), n >= 1.
u64 p_part(u64 n, u64 p);

// Exact checked power; throws ParamError past 2^63.
u64 pow_u64_checked(u64 base, u32 exp);

}  // namespace qsphere
