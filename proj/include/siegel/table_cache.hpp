#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "siegel/prime_tools.hpp"

namespace siegel {

// Layout, all integers little-endian:
//   "PPT1" | u64 limit | u64 count | count x (u64 value, binary64 cumulative)
void save_table(const std::filesystem::path& path, const PrimePowerTable& table);

/// Throws InvalidArgument on a malformed or inconsistent file.
PrimePowerTable load_table(const std::filesystem::path& path);

/// `$SIEGEL_MARGIN_CACHE/ppt_<limit>.bin`, or nullopt when the variable is unset.
std::optional<std::filesystem::path> default_cache_path(std::uint64_t limit);

/// Load from `path` when it exists, otherwise build and (if a path is given)
/// write the cache for next time.
PrimePowerTable load_or_build(std::uint64_t limit, const std::optional<std::filesystem::path>& path);

}  // namespace siegel
