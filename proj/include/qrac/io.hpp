#pragma once

#include <string>

namespace qrac {

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::string& path);

/// Writes via a temporary sibling and rename, so readers never observe a
/// half-written file.
void write_text_file_atomic(const std::string& path, const std::string& content);

} // namespace qrac
