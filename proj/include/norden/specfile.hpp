#pragma once

// Manifold description files: a small TOML subset.
//
//   name = "example"                # optional
//   [chart]
//   dimension = 2
//   coordinates = ["x", "y"]        # optional, default x1..xd
//   box = [[-1, 1], [-1, 1]]        # optional, default [-1, 1] per coordinate
//   [metric]
//   components = [["1 + x^2"], ["0", "-(1 + x^2)"]]   # rows; lower triangle suffices
//   [complex_structure]
//   components = [["0", "-1"], ["1", "0"]]            # J^i_j, row i
//   [connection]                    # optional
//   components = ["...", ...]       # d^3 entries, Gamma^k_ij in (k, i, j) order
//
// Values are strings, numbers and (nested, possibly multi-line) arrays.
// Comments start with '#'.

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "norden/connections.hpp"
#include "norden/core.hpp"
#include "norden/expr.hpp"
#include "norden/geometry.hpp"

namespace norden {

/// Malformed description file; the message starts with "source:line:".
class SpecError : public InvalidInputError {
 public:
  SpecError(const std::string& source, int line, const std::string& what)
      : InvalidInputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct SpecValue {
  enum class Kind { string, number, array };
  Kind kind = Kind::number;
  std::string text;
  double number = 0.0;
  std::vector<SpecValue> items;
  int line = 0;
};

struct SpecEntry {
  SpecValue value;
  int line = 0;
};

/// section name ("" for top level) -> key -> value
using SpecDocument = std::map<std::string, std::map<std::string, SpecEntry>>;

namespace detail {

class SpecReader {
 public:
  SpecReader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  SpecDocument read() {
    SpecDocument doc;
    std::string section;
    doc[section];
    for (;;) {
      skip_blank();
      if (at_end()) break;
      const int line = line_;
      if (peek() == '[') {
        ++pos_;
        section = bare_key("section name");
        skip_inline_ws();
        if (at_end() || peek() != ']') fail("expected ']' after section name");
        ++pos_;
        if (doc.count(section) && section != "") fail("duplicate section [" + section + "]");
        doc[section];
        end_of_line();
        continue;
      }
      const std::string key = bare_key("key");
      skip_inline_ws();
      if (at_end() || peek() != '=') fail("expected '=' after key '" + key + "'");
      ++pos_;
      SpecValue v = value();
      auto& table = doc[section];
      if (table.count(key)) fail("duplicate key '" + key + "'");
      table[key] = SpecEntry{std::move(v), line};
      end_of_line();
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SpecError(source_, line_, what); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_inline_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    while (!at_end() && peek() != '\n') ++pos_;
  }

  /// Whitespace, newlines and comments.
  void skip_blank() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek())))
        advance();
      else if (peek() == '#')
        skip_comment();
      else
        break;
    }
  }

  void end_of_line() {
    skip_inline_ws();
    if (!at_end() && peek() == '#') skip_comment();
    if (!at_end() && peek() != '\n') fail(std::string("unexpected '") + peek() + "' after value");
  }

  std::string bare_key(const char* what) {
    skip_inline_ws();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  SpecValue value() {
    skip_inline_ws();
    if (at_end() || peek() == '\n') fail("missing value");
    SpecValue v;
    v.line = line_;
    if (peek() == '"') {
      v.kind = SpecValue::Kind::string;
      v.text = string_literal();
    } else if (peek() == '[') {
      v.kind = SpecValue::Kind::array;
      advance();
      for (;;) {
        skip_blank();
        if (at_end()) fail("unterminated array");
        if (peek() == ']') {
          advance();
          break;
        }
        v.items.push_back(value());
        skip_blank();
        if (at_end()) fail("unterminated array");
        if (peek() == ',') {
          advance();
        } else if (peek() != ']') {
          fail(std::string("expected ',' or ']' in array, found '") + peek() + "'");
        }
      }
    } else {
      v.kind = SpecValue::Kind::number;
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '-' ||
                           peek() == '+' || peek() == '_'))
        ++pos_;
      const std::string_view tok = text_.substr(start, pos_ - start);
      if (tok.empty()) fail(std::string("unexpected '") + peek() + "'");
      const char* first = tok.data() + (tok.front() == '+' ? 1 : 0);
      auto [end, ec] = std::from_chars(first, tok.data() + tok.size(), v.number);
      if (ec != std::errc{} || end != tok.data() + tok.size())
        fail("invalid number '" + std::string(tok) + "' (expression strings must be quoted)");
    }
    return v;
  }

  std::string string_literal() {
    advance();
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated string");
        const char e = peek();
        advance();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace detail

inline SpecDocument read_spec_document(std::string_view text, const std::string& source = "<spec>") {
  return detail::SpecReader(text, source).read();
}

/// A parsed description: the structure and the connection, if one is given.
struct ManifoldSpec {
  Structure structure;
  std::optional<ConnectionField> connection;
};

namespace detail {

class SpecBuilder {
 public:
  SpecBuilder(const SpecDocument& doc, std::string source) : doc_(doc), source_(std::move(source)) {}

  ManifoldSpec build() {
    for (const auto& [section, keys] : doc_) {
      static const std::map<std::string, std::vector<std::string>> known = {
          {"", {"name"}},
          {"chart", {"dimension", "coordinates", "box"}},
          {"metric", {"components"}},
          {"complex_structure", {"components"}},
          {"connection", {"components"}},
      };
      auto it = known.find(section);
      if (it == known.end()) throw SpecError(source_, first_line(keys), "unknown section [" + section + "]");
      for (const auto& [key, entry] : keys)
        if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
          throw SpecError(source_, entry.line, "unknown key '" + key + "'" +
                                                   (section.empty() ? "" : " in [" + section + "]"));
    }

    const Chart chart = read_chart();
    std::string name = "spec";
    if (const SpecEntry* e = find("", "name")) name = as_string(e->value, "name");

    const int d = chart.dim();
    const SpecEntry& mc = require("metric", "components");
    std::vector<Expr> g(static_cast<std::size_t>(d * d));
    const auto& rows = as_array(mc.value, "metric components");
    if (static_cast<int>(rows.size()) != d)
      throw SpecError(source_, mc.line, "metric needs " + std::to_string(d) + " rows");
    std::vector<bool> given(static_cast<std::size_t>(d * d), false);
    for (int i = 0; i < d; ++i) {
      const auto& row = as_array(rows[i], "metric row");
      if (static_cast<int>(row.size()) != d && static_cast<int>(row.size()) != i + 1)
        throw SpecError(source_, rows[i].line,
                        "metric row " + std::to_string(i + 1) + " needs " + std::to_string(i + 1) + " or " +
                            std::to_string(d) + " entries");
      for (int j = 0; j < static_cast<int>(row.size()); ++j) {
        g[static_cast<std::size_t>(i * d + j)] = expression(row[j], chart, "metric (" + std::to_string(i + 1) + "," +
                                                                              std::to_string(j + 1) + ")");
        given[static_cast<std::size_t>(i * d + j)] = true;
      }
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (!given[static_cast<std::size_t>(i * d + j)]) g[static_cast<std::size_t>(i * d + j)] = g[static_cast<std::size_t>(j * d + i)];

    const SpecEntry& jc = require("complex_structure", "components");
    std::vector<Expr> jv;
    const auto& jrows = as_array(jc.value, "complex_structure components");
    if (static_cast<int>(jrows.size()) != d)
      throw SpecError(source_, jc.line, "complex_structure needs " + std::to_string(d) + " rows");
    for (int i = 0; i < d; ++i) {
      const auto& row = as_array(jrows[i], "complex_structure row");
      if (static_cast<int>(row.size()) != d)
        throw SpecError(source_, jrows[i].line, "complex_structure row " + std::to_string(i + 1) + " needs " +
                                                    std::to_string(d) + " entries");
      for (int j = 0; j < d; ++j)
        jv.push_back(expression(row[j], chart, "J (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"));
    }

    ManifoldSpec out{[&] {
      try {
        return make_structure(name, MetricField(chart, g), ComplexStructureField(chart, jv));
      } catch (const SpecError&) {
        throw;
      } catch (const Error& e) {
        throw SpecError(source_, mc.line, e.what());
      }
    }(), std::nullopt};

    if (const SpecEntry* cc = find("connection", "components")) {
      const auto& items = as_array(cc->value, "connection components");
      if (static_cast<int>(items.size()) != d * d * d)
        throw SpecError(source_, cc->line, "connection needs " + std::to_string(d * d * d) + " entries");
      std::vector<Expr> gamma;
      for (int n = 0; n < d * d * d; ++n)
        gamma.push_back(expression(items[n], chart,
                                   "Gamma^" + std::to_string(n / (d * d) + 1) + "_" +
                                       std::to_string(n / d % d + 1) + std::to_string(n % d + 1)));
      out.connection = ConnectionField::from_expressions(chart, std::move(gamma), "explicit (" + source_ + ")");
    }
    return out;
  }

 private:
  static int first_line(const std::map<std::string, SpecEntry>& keys) {
    int line = 1;
    for (const auto& [k, e] : keys) line = line == 1 ? e.line : std::min(line, e.line);
    return line;
  }

  const SpecEntry* find(const std::string& section, const std::string& key) const {
    auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const SpecEntry& require(const std::string& section, const std::string& key) const {
    if (const SpecEntry* e = find(section, key)) return *e;
    if (!doc_.count(section)) throw SpecError(source_, 1, "missing section [" + section + "]");
    throw SpecError(source_, 1, "missing key '" + key + "' in [" + section + "]");
  }

  const std::vector<SpecValue>& as_array(const SpecValue& v, const std::string& what) const {
    if (v.kind != SpecValue::Kind::array) throw SpecError(source_, v.line, what + " must be an array");
    return v.items;
  }

  std::string as_string(const SpecValue& v, const std::string& what) const {
    if (v.kind != SpecValue::Kind::string) throw SpecError(source_, v.line, what + " must be a string");
    return v.text;
  }

  double as_number(const SpecValue& v, const std::string& what) const {
    if (v.kind != SpecValue::Kind::number) throw SpecError(source_, v.line, what + " must be a number");
    return v.number;
  }

  Expr expression(const SpecValue& v, const Chart& chart, const std::string& what) const {
    if (v.kind == SpecValue::Kind::number) return Expr::constant(v.number);
    const std::string text = as_string(v, what);
    try {
      return parse_expr(text, chart.names());
    } catch (const ParseError& e) {
      throw SpecError(source_, v.line, what + ": " + e.what() + " in \"" + text + "\"");
    }
  }

  Chart read_chart() const {
    const SpecEntry& de = require("chart", "dimension");
    const double dd = as_number(de.value, "dimension");
    if (dd != static_cast<int>(dd)) throw SpecError(source_, de.line, "dimension must be an integer");
    const int d = static_cast<int>(dd);
    std::vector<std::string> names;
    if (const SpecEntry* ce = find("chart", "coordinates"))
      for (const auto& item : as_array(ce->value, "coordinates")) names.push_back(as_string(item, "coordinate name"));
    std::vector<Interval> box;
    if (const SpecEntry* be = find("chart", "box")) {
      for (const auto& item : as_array(be->value, "box")) {
        const auto& pair = as_array(item, "box interval");
        if (pair.size() != 2) throw SpecError(source_, item.line, "box interval needs two numbers");
        box.push_back({as_number(pair[0], "box bound"), as_number(pair[1], "box bound")});
      }
    }
    try {
      return Chart(d, names, box);
    } catch (const InvalidInputError& e) {
      throw SpecError(source_, de.line, e.what());
    }
  }

  const SpecDocument& doc_;
  std::string source_;
};

}  // namespace detail

inline ManifoldSpec parse_manifold_spec(std::string_view text, const std::string& source = "<spec>") {
  const SpecDocument doc = read_spec_document(text, source);
  return detail::SpecBuilder(doc, source).build();
}

inline ManifoldSpec load_manifold_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifold_spec(ss.str(), path);
}

}  // namespace norden
