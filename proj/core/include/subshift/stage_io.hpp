#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "subshift/construction.hpp"

namespace subshift {

inline constexpr int kFormatVersion = 1;

/// JSON stage file; patterns as row-major "0"/"1" strings.
std::string stage_to_json(const Stage& s);
Stage stage_from_json(std::string_view text);

void write_stage_file(const std::filesystem::path& path, const Stage& s);
Stage read_stage_file(const std::filesystem::path& path);

/// Whole file as a string; throws FormatError when unreadable.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace subshift
