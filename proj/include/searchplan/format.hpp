#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace searchplan {

// Shortest decimal text that parses back to exactly `v`; ".inf" / "-.inf"
// for infinities.
std::string format_number(double v);

// 64-bit FNV-1a over a byte range.
std::uint64_t fnv1a(std::span<const unsigned char> bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t v);

}  // namespace searchplan
