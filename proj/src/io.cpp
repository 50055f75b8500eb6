#include "ran/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

namespace ran {

namespace {

using Triple = std::array<Vertex, 3>;

struct TripleHash {
  std::size_t operator()(const Triple& k) const noexcept {
    std::uint64_t h = mix64(k[0]);
    h = mix64(h ^ k[1]);
    return static_cast<std::size_t>(mix64(h ^ k[2]));
  }
};

Triple sorted_triple(Vertex a, Vertex b, Vertex c) {
  Triple k{a, b, c};
  std::sort(k.begin(), k.end());
  return k;
}

bool parse_edge_line(const std::string& line, Edge& edge) {
  const char* p = line.data();
  const char* end = p + line.size();
  auto skip_space = [&] {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  };
  skip_space();
  auto [p1, ec1] = std::from_chars(p, end, edge.first);
  if (ec1 != std::errc{}) return false;
  p = p1;
  if (p == end || (*p != ' ' && *p != '\t')) return false;
  skip_space();
  auto [p2, ec2] = std::from_chars(p, end, edge.second);
  if (ec2 != std::errc{}) return false;
  p = p2;
  skip_space();
  return p == end;
}

void put_varint(std::ostream& out, std::uint64_t value) {
  char buf[10];
  int len = 0;
  do {
    auto byte = static_cast<unsigned char>(value & 0x7f);
    value >>= 7;
    if (value != 0) byte |= 0x80;
    buf[len++] = static_cast<char>(byte);
  } while (value != 0);
  out.write(buf, len);
}

std::uint64_t get_varint(std::istream& in) {
  std::uint64_t value = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw Error("snapshot truncated inside a varint");
    value |= static_cast<std::uint64_t>(c & 0x7f) << shift;
    if ((c & 0x80) == 0) return value;
  }
  throw Error("snapshot varint longer than 64 bits");
}

void put_u64(std::ostream& out, std::uint64_t value) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw Error("snapshot header truncated");
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return value;
}

constexpr char kMagic[4] = {'R', 'A', 'N', '1'};

}  // namespace

void export_edges(const RanGraph& graph, std::ostream& out) {
  std::string buffer;
  buffer.reserve(1 << 16);
  char num[24];
  for (const auto& [u, v] : graph.edges()) {
    auto r = std::to_chars(num, num + sizeof num, u);
    buffer.append(num, r.ptr);
    buffer.push_back(' ');
    r = std::to_chars(num, num + sizeof num, v);
    buffer.append(num, r.ptr);
    buffer.push_back('\n');
    if (buffer.size() > (1 << 16) - 32) {
      out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
      buffer.clear();
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw Error("failed writing edge list");
}

RanGraph import_edges(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error("edge list line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    Edge e;
    if (!parse_edge_line(line, e)) throw fail("expected \"u v\", got \"" + line + "\"");
    if (e.first >= e.second) throw fail("expected u < v");
    edges.push_back(e);
  }
  if (in.bad()) throw Error("failed reading edge list");

  if (edges.size() < 3 || edges.size() % 3 != 0) {
    throw Error("edge list has " + std::to_string(edges.size()) + " edges; expected 3t + 3");
  }
  const std::array<Edge, 3> triangle{{{1, 2}, {1, 3}, {2, 3}}};
  if (!std::equal(triangle.begin(), triangle.end(), edges.begin())) {
    throw Error("edge list must start with the triangle 1 2, 1 3, 2 3");
  }

  const std::uint64_t t = edges.size() / 3 - 1;
  std::unordered_set<Triple, TripleHash> active;
  active.reserve(2 * t + 1);
  active.insert({1, 2, 3});
  for (std::uint64_t step = 1; step <= t; ++step) {
    const auto v = static_cast<Vertex>(step + 3);
    auto* group = edges.data() + 3 * step;
    std::sort(group, group + 3);
    for (int i = 0; i < 3; ++i) {
      if (group[i].second != v || (i > 0 && group[i].first == group[i - 1].first)) {
        line_no = 3 * step + static_cast<std::size_t>(i) + 1;
        throw fail("step " + std::to_string(step) + " must join vertex " + std::to_string(v) +
                   " to three distinct earlier vertices");
      }
    }
    const Vertex a = group[0].first, b = group[1].first, c = group[2].first;
    if (active.erase(sorted_triple(a, b, c)) == 0) {
      line_no = 3 * step + 1;
      throw fail("vertices " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) +
                 " do not bound an active face");
    }
    active.insert(sorted_triple(b, c, v));
    active.insert(sorted_triple(a, c, v));
    active.insert(sorted_triple(a, b, v));
  }
  return RanGraph(t, std::nullopt, std::move(edges));
}

void write_snapshot(const RanGraph& graph, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  put_u64(out, graph.t());
  put_u64(out, graph.seed().value_or(0));
  for (Vertex v = 1; v <= graph.n(); ++v) {
    const auto nbrs = graph.neighbors_unchecked(v);
    put_varint(out, nbrs.size());
    Vertex prev = 0;
    for (Vertex w : nbrs) {
      put_varint(out, w - prev);
      prev = w;
    }
  }
  if (!out) throw Error("failed writing snapshot");
}

RanGraph read_snapshot(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error("not a RAN1 snapshot");
  }
  const std::uint64_t t = get_u64(in);
  const std::uint64_t seed = get_u64(in);
  if (t > 0xffffffffULL - 8) throw Error("snapshot step count out of range");
  const std::uint64_t n = t + 3;

  // Each vertex's smaller neighbors are the corners of the face it was
  // inserted into, so creation order is recoverable from adjacency alone.
  std::vector<Edge> edges;
  edges.reserve(3 * t + 3);
  for (std::uint64_t v = 1; v <= n; ++v) {
    const std::uint64_t degree = get_varint(in);
    if (degree > n) throw Error("snapshot degree out of range at vertex " + std::to_string(v));
    std::uint64_t w = 0;
    std::size_t smaller = 0;
    for (std::uint64_t i = 0; i < degree; ++i) {
      const std::uint64_t delta = get_varint(in);
      if (delta == 0 && i > 0) throw Error("snapshot has a repeated neighbor at vertex " + std::to_string(v));
      w += delta;
      if (w == 0 || w > n || w == v) throw Error("snapshot neighbor out of range at vertex " + std::to_string(v));
      if (w < v) {
        ++smaller;
        edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
      }
    }
    const std::size_t expected = v <= 3 ? v - 1 : 3;
    if (smaller != expected) {
      throw Error("snapshot vertex " + std::to_string(v) + " has " + std::to_string(smaller) +
                  " earlier neighbors; expected " + std::to_string(expected));
    }
  }
  if (edges.size() != 3 * t + 3) throw Error("snapshot edge count mismatch");
  // Vertices 2 and 3 contribute (1,2) then (1,3), (2,3): already creation order.
  return RanGraph(t, seed, std::move(edges));
}

}  // namespace ran
