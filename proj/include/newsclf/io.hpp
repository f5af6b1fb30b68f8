#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace newsclf::io {

/// Whole file as bytes. Throws IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Opens for binary write, creating parent directories. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

std::ifstream open_input(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace newsclf::io
