#include "ccl/core/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "ccl/core/error.hpp"

namespace ccl::io {
namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_dim(const std::string& tok, int line) {
  if (tok.empty() || tok.size() > 6) throw ParseError(line, "bad dimension '" + tok + "'");
  for (char c : tok)
    if (c < '0' || c > '9') throw ParseError(line, "bad dimension '" + tok + "'");
  int v = std::stoi(tok);
  if (v < 1) throw ParseError(line, "dimension must be positive");
  return v;
}

struct Header {
  std::string kind;
  int rows, cols;
};

Header parse_header(const std::vector<std::string>& lines) {
  if (lines.empty()) throw ParseError(1, "missing header");
  auto toks = split_ws(lines[0]);
  if (toks.size() != 3) throw ParseError(1, "malformed header, expected '<kind> <rows> <cols>'");
  return {toks[0], parse_dim(toks[1], 1), parse_dim(toks[2], 1)};
}

// Rows after the header; trailing blank lines are tolerated.
void check_row_count(const std::vector<std::string>& lines, int rows) {
  std::size_t last = lines.size();
  while (last > 1 && lines[last - 1].find_first_not_of(" \t") == std::string::npos) --last;
  if (static_cast<int>(last) - 1 < rows)
    throw ParseError(static_cast<int>(last) + 1, "expected " + std::to_string(rows) + " rows");
  if (static_cast<int>(last) - 1 > rows)
    throw ParseError(rows + 2, "unexpected content after the last row");
}

}  // namespace

AnyMatrix parse_matrix(std::string_view text) {
  auto lines = split_lines(text);
  Header h = parse_header(lines);
  bool boolean = h.kind == "bool";
  if (!boolean && h.kind != "sign") throw ParseError(1, "unknown matrix kind '" + h.kind + "'");
  // Row checks run before the count check so ragged rows are named first.
  for (int i = 0; i < h.rows && i + 1 < static_cast<int>(lines.size()); ++i) {
    const std::string& row = lines[i + 1];
    if (static_cast<int>(row.size()) != h.cols)
      throw ParseError(i + 2, "ragged row: expected " + std::to_string(h.cols) + " symbols, got " +
                                  std::to_string(row.size()));
  }
  check_row_count(lines, h.rows);
  if (boolean) {
    std::vector<std::uint8_t> bits;
    for (int i = 0; i < h.rows; ++i)
      for (char c : lines[i + 1]) {
        if (c != '0' && c != '1') throw ParseError(i + 2, std::string("illegal symbol '") + c + "'");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
      }
    return BooleanMatrix(h.rows, h.cols, std::move(bits));
  }
  std::vector<std::int8_t> signs;
  for (int i = 0; i < h.rows; ++i)
    for (char c : lines[i + 1]) {
      if (c != '+' && c != '-') throw ParseError(i + 2, std::string("illegal symbol '") + c + "'");
      signs.push_back(c == '+' ? 1 : -1);
    }
  return SignMatrix(h.rows, h.cols, std::move(signs));
}

BooleanMatrix parse_boolean_matrix(std::string_view text) {
  auto m = parse_matrix(text);
  if (auto* b = std::get_if<BooleanMatrix>(&m)) return *b;
  throw ParseError(1, "expected a bool matrix");
}

SignMatrix parse_sign_matrix(std::string_view text) {
  auto m = parse_matrix(text);
  if (auto* s = std::get_if<SignMatrix>(&m)) return *s;
  throw ParseError(1, "expected a sign matrix");
}

std::string serialize(const BooleanMatrix& m) {
  std::string out = "bool " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string serialize(const SignMatrix& m) {
  std::string out = "sign " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j) > 0 ? '+' : '-');
    out.push_back('\n');
  }
  return out;
}

InputDistribution parse_distribution(std::string_view text) {
  auto lines = split_lines(text);
  Header h = parse_header(lines);
  if (h.kind != "dist") throw ParseError(1, "expected 'dist' header");
  check_row_count(lines, h.rows);
  std::vector<Rational> w;
  for (int i = 0; i < h.rows; ++i) {
    auto toks = split_ws(lines[i + 1]);
    if (static_cast<int>(toks.size()) != h.cols)
      throw ParseError(i + 2, "ragged row: expected " + std::to_string(h.cols) + " weights");
    for (const auto& t : toks) {
      try {
        w.push_back(parse_rational(t));
      } catch (const ParseError& e) {
        throw ParseError(i + 2, e.what());
      }
    }
  }
  try {
    return InputDistribution(h.rows, h.cols, std::move(w));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize(const InputDistribution& d) {
  std::string out = "dist " + std::to_string(d.rows()) + " " + std::to_string(d.cols()) + "\n";
  for (int i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) {
      if (j) out.push_back(' ');
      out += to_string(d(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace ccl::io
