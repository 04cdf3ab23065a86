#pragma once

// Text formats for Graph:
//   edge list  first line "n", then one "u v" pair per line (0-indexed)
//   graph6     McKay's short form, n <= 62

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dspec/graph.hpp"

namespace dspec {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_int(std::string_view token, long long& value) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Blank lines and lines starting with '#' are ignored.
inline Graph parse_edge_list(std::string_view text) {
  long long n = -1;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (n < 0) {
      if (tokens.size() != 1 || !detail::parse_int(tokens[0], n) || n < 0)
        throw ParseError("expected a single non-negative vertex count", line_no, 0);
      continue;
    }
    long long u = 0, v = 0;
    if (tokens.size() != 2 || !detail::parse_int(tokens[0], u) || !detail::parse_int(tokens[1], v))
      throw ParseError("expected \"u v\"", line_no, 0);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("endpoint out of range [0, " + std::to_string(n) + ")", line_no, 0);
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no, 0);
    const Edge e(static_cast<int>(u), static_cast<int>(v));
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == e)
        throw ParseError("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             "} (first seen on line " + std::to_string(edge_line[i]) + ")",
                         line_no, 0);
    edges.push_back(e);
    edge_line.push_back(line_no);
  }
  if (n < 0) throw ParseError("missing vertex count", line_no, 0);
  return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

/// Accepts an optional ">>graph6<<" header and surrounding whitespace.
inline Graph parse_graph6(std::string_view text) {
  std::string_view s = detail::trim(text);
  constexpr std::string_view header = ">>graph6<<";
  std::size_t offset = 0;
  if (s.substr(0, header.size()) == header) {
    s.remove_prefix(header.size());
    offset = header.size();
  }
  if (s.empty()) throw ParseError("empty graph6 string", 0, offset + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126) throw ParseError("byte outside graph6 range [63,126]", 0, offset + i + 1);
  }
  if (s[0] == 126) throw ParseError("graph6 long form (n > 62) is not supported", 0, offset + 1);

  const int n = s[0] - 63;
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2;
  const std::size_t expected = 1 + (bits + 5) / 6;
  if (s.size() != expected)
    throw ParseError("graph6 length " + std::to_string(s.size()) + " does not match n=" + std::to_string(n) +
                         " (expected " + std::to_string(expected) + ")",
                     0, offset + std::min(s.size(), expected) + 1);

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u, ++k) {
      const int chunk = s[1 + k / 6] - 63;
      if (chunk & (1 << (5 - k % 6))) edges.emplace_back(u, v);
    }
  for (; k % 6 != 0; ++k) {
    const int chunk = s[1 + k / 6] - 63;
    if (chunk & (1 << (5 - k % 6))) throw ParseError("non-zero graph6 padding bit", 0, offset + 2 + k / 6);
  }
  return Graph(n, std::move(edges));
}

inline std::string to_graph6(const Graph& g) {
  const int n = g.order();
  if (n > 62) throw ContractError("graph6 short form supports at most 62 vertices");
  std::string out(1, static_cast<char>(n + 63));
  int chunk = 0, filled = 0;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) {
      chunk = (chunk << 1) | (g.has_edge(u, v) ? 1 : 0);
      if (++filled == 6) {
        out += static_cast<char>(chunk + 63);
        chunk = filled = 0;
      }
    }
  if (filled > 0) out += static_cast<char>((chunk << (6 - filled)) + 63);
  return out;
}

/// Edge list when the first non-blank byte is a digit or '#', graph6 otherwise.
inline Graph parse_graph(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty input", 1, 1);
  const char c = s.front();
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '#') return parse_edge_list(text);
  return parse_graph6(text);
}

}  // namespace dspec
