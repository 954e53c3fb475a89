#include "cssample/io.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <unordered_set>

#include "cssample/common.hpp"

namespace css {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

element_t parse_element(const Token& tok, std::size_t line_no) {
  const std::string_view t = tok.text;
  for (char c : t) {
    if (c < '0' || c > '9') {
      throw ParseError(line_no, tok.column,
                       "expected a non-negative integer, got '" +
                           std::string(t) + "'");
    }
  }
  element_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError(line_no, tok.column,
                     "item id '" + std::string(t) + "' does not fit in 64 bits");
  }
  if (value >= kMersenne61) {
    throw ParseError(line_no, tok.column,
                     "item id must be below 2^61 - 1");
  }
  return value;
}

bool is_content(std::string_view line) {
  for (char c : line) {
    if (is_blank(c)) continue;
    return c != '#';
  }
  return false;
}

}  // namespace

std::vector<BSet> read_transactions(std::istream& in,
                                    std::optional<std::size_t> b_max) {
  std::vector<BSet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_content(line)) continue;
    std::vector<element_t> items;
    for (const Token& tok : tokenize(line)) {
      items.push_back(parse_element(tok, line_no));
    }
    BSet t(std::move(items));
    if (b_max && t.size() > *b_max) {
      throw IngestError(line_no, "transaction has " + std::to_string(t.size()) +
                                     " distinct items, above the declared "
                                     "bound " +
                                     std::to_string(*b_max));
    }
    out.push_back(std::move(t));
  }
  return out;
}

IncidenceStream read_incidence(std::istream& in,
                               std::optional<std::size_t> max_degree) {
  IncidenceStream g;
  std::unordered_set<element_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_content(line)) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(line_no, line.size() + 1,
                       "expected ':' after the vertex id");
    }
    const auto head = tokenize(std::string_view(line).substr(0, colon));
    if (head.size() != 1) {
      const std::size_t col = head.size() > 1 ? head[1].column : colon + 1;
      throw ParseError(line_no, col, "expected exactly one vertex id before ':'");
    }
    const element_t vertex = parse_element(head[0], line_no);

    std::vector<element_t> neighbors;
    for (Token tok : tokenize(std::string_view(line).substr(colon + 1))) {
      tok.column += colon + 1;  // column within the whole line
      neighbors.push_back(parse_element(tok, line_no));
    }
    BSet nb(std::move(neighbors));

    // Re-run the stream invariants here so the error carries the file line
    // rather than the entry ordinal.
    if (!seen.insert(vertex).second) {
      throw IngestError(line_no,
                        "vertex " + std::to_string(vertex) + " repeated");
    }
    if (nb.contains(vertex)) {
      throw IngestError(line_no,
                        "self-loop at vertex " + std::to_string(vertex));
    }
    if (max_degree && nb.size() > *max_degree) {
      throw IngestError(line_no, "vertex " + std::to_string(vertex) + " has " +
                                     std::to_string(nb.size()) +
                                     " neighbors, above the declared max "
                                     "degree " +
                                     std::to_string(*max_degree));
    }
    g.add(vertex, std::move(nb));
  }
  return g;
}

}  // namespace css
