#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "pstray/tray.hpp"

namespace pstray {

// On-disk layout, all integers little-endian u64:
//   "PSTRAY01" | version | n | pi | sigma | flags
//   sections, each: tag | byte length | payload
//     1 alphabet, 2 text, 3 psa, 4 plcp, 5 tree, 6 tray
//   FNV-1a 64 checksum of every preceding byte
inline constexpr std::string_view kIndexMagic = "PSTRAY01";
inline constexpr std::uint64_t kIndexVersion = 1;

std::string serialize(const PSTrayIndex& index);

// Parses and fully validates an index image. Throws Error(Version) for a
// wrong magic or version and Error(Load) for anything else.
PSTrayIndex deserialize(std::string_view bytes);

void save(const PSTrayIndex& index, const std::filesystem::path& path);
PSTrayIndex load(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace pstray
