#include "clgen/edge_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>

namespace clgen {

namespace {

constexpr char kMagic[8] = {'C', 'L', 'G', 'E', 'D', 'G', 'E', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t x) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b.data(), 4);
}

void put_u64(std::ostream& out, std::uint64_t x) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}

bool get_u32(std::istream& in, std::uint32_t& x) {
  std::array<char, 4> b;
  if (!in.read(b.data(), 4)) return false;
  x = 0;
  for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[static_cast<std::size_t>(i)])) << (8 * i);
  return true;
}

bool get_u64(std::istream& in, std::uint64_t& x) {
  std::array<char, 8> b;
  if (!in.read(b.data(), 8)) return false;
  x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[static_cast<std::size_t>(i)])) << (8 * i);
  return true;
}

std::vector<Edge> read_edges_text(std::istream& in, const std::string& path) {
  std::vector<Edge> edges;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    Edge e;
    if (!(row >> e.u >> e.v)) {
      throw error(path + ": malformed edge at line " + std::to_string(lineno));
    }
    edges.push_back(e);
  }
  return edges;
}

}  // namespace

const char* format_name(EdgeFormat f) { return f == EdgeFormat::text ? "text" : "bin"; }

EdgeFormat format_from_name(const std::string& name) {
  if (name == "text") return EdgeFormat::text;
  if (name == "bin" || name == "binary") return EdgeFormat::binary;
  throw error("unknown edge format: " + name);
}

const char* format_extension(EdgeFormat f) { return f == EdgeFormat::text ? ".txt" : ".bin"; }

void write_edges(std::span<const Edge> edges, EdgeFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open for writing: " + path);
  if (format == EdgeFormat::text) {
    for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
  } else {
    out.write(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_u32(out, 0);
    put_u64(out, static_cast<std::uint64_t>(edges.size()));
    for (const Edge& e : edges) {
      put_u64(out, static_cast<std::uint64_t>(e.u));
      put_u64(out, static_cast<std::uint64_t>(e.v));
    }
  }
  if (!out) throw error("write failed: " + path);
}

std::vector<Edge> read_edges(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open edge file: " + path);

  char head[8] = {};
  in.read(head, sizeof(head));
  if (in.gcount() == 8 && std::memcmp(head, kMagic, 8) == 0) {
    std::uint32_t version = 0;
    std::uint32_t reserved = 0;
    std::uint64_t count = 0;
    if (!get_u32(in, version) || !get_u32(in, reserved) || !get_u64(in, count)) {
      throw error(path + ": truncated edge header");
    }
    if (version != kVersion) {
      throw error(path + ": unsupported edge file version " + std::to_string(version));
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t u = 0;
      std::uint64_t v = 0;
      if (!get_u64(in, u) || !get_u64(in, v)) {
        throw error(path + ": truncated at record " + std::to_string(i) + " of " +
                    std::to_string(count));
      }
      edges.push_back(Edge{static_cast<node_t>(u), static_cast<node_t>(v)});
    }
    return edges;
  }

  in.clear();
  in.seekg(0);
  return read_edges_text(in, path);
}

}  // namespace clgen
