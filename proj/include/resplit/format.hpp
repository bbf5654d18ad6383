#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace resplit {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace resplit
