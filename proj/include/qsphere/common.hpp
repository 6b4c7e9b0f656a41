#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsphere {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Rejected input: bad parameters, unsupported sizes, malformed literals.
struct ParamError : std::invalid_argument {
  explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// A verified mathematical statement failed on concrete data.  Thrown only by
// code paths that promise a property (canonical forms, closure sizes, ...);
// bulk checkers return reports instead of throwing.
struct CheckError : std::runtime_error {
  explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsphere
