#pragma once

#include <iosfwd>
#include <string>

#include "rfskit/pattern.hpp"

namespace rfskit {

/// One object per line: {"id": string, "label": integer|null, "points":
/// [[number,...],...]}. An empty points array is a valid empty pattern.
/// The feature dimension is taken from the first point seen and every
/// later point must match it.
Dataset parse_dataset_jsonl(std::istream& in);
Dataset read_dataset_jsonl(const std::string& path);

void emit_dataset_jsonl(const Dataset& data, std::ostream& out);

/// Writes through a temp file in the same directory plus rename, so readers
/// never observe a half-written file.
void write_dataset_jsonl(const Dataset& data, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace rfskit
