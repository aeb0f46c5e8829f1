#pragma once

#include <span>
#include <string>
#include <vector>

#include "clgen/edge_skip.hpp"

namespace clgen {

enum class EdgeFormat { text, binary };

const char* format_name(EdgeFormat f);
EdgeFormat format_from_name(const std::string& name);
const char* format_extension(EdgeFormat f);

// Text: one "u v" pair per line. Binary: 16-byte header (8-byte magic
// "CLGEDGE1", u32 version, u32 reserved), u64 record count, then 2x u64
// little-endian pairs.
void write_edges(std::span<const Edge> edges, EdgeFormat format, const std::string& path);

// Sniffs the binary magic; falls back to text.
std::vector<Edge> read_edges(const std::string& path);

}  // namespace clgen
