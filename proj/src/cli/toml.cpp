#include "hpq/cli/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hpq/errors.hpp"

namespace hpq::toml {

double Number::as_double() const {
  std::string t;
  for (char c : text)
    if (c != '_') t += c;
  return std::stod(t);
}

long long Number::as_int() const {
  if (!integral) throw ConfigError("expected an integer, got " + text);
  std::string t;
  for (char c : text)
    if (c != '_') t += c;
  return std::stoll(t);
}

const std::string& Value::string() const {
  if (!is_string()) throw ConfigError("expected a string");
  return std::get<std::string>(data);
}

const Number& Value::number() const {
  if (!is_number()) throw ConfigError("expected a number");
  return std::get<Number>(data);
}

bool Value::boolean() const {
  if (!is_bool()) throw ConfigError("expected a boolean");
  return std::get<bool>(data);
}

const Array& Value::array() const {
  if (!is_array()) throw ConfigError("expected an array");
  return std::get<Array>(data);
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Document run() {
    Document doc;
    std::string section;
    doc[section];
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        skip_inline_space();
        section = bare_key();
        while (peek() == '.') {
          ++pos_;
          section += "." + bare_key();
        }
        skip_inline_space();
        expect(']');
        if (doc.count(section) && !doc[section].empty()) fail("duplicate section [" + section + "]");
        doc[section];
      } else {
        std::string key = peek() == '"' ? basic_string() : bare_key();
        skip_inline_space();
        expect('=');
        skip_inline_space();
        Value v = value();
        if (doc[section].count(key)) fail("duplicate key '" + key + "'");
        doc[section].emplace(std::move(key), std::move(v));
      }
      end_of_line();
    }
    return doc;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }

  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      break;
    }
  }

  // Whitespace, comments and newlines inside arrays.
  void skip_array_space() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\r' || peek() == '\n') {
        if (peek() == '\n') ++line_;
        ++pos_;
        continue;
      }
      break;
    }
  }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (!eof()) {
      if (peek() != '\n') fail("unexpected trailing characters");
      ++pos_;
      ++line_;
    }
  }

  std::string bare_key() {
    const size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::string basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  std::string literal_string() {
    expect('\'');
    const size_t start = pos_;
    while (!eof() && peek() != '\'' && peek() != '\n') ++pos_;
    if (peek() != '\'') fail("unterminated literal string");
    std::string out = s_.substr(start, pos_ - start);
    ++pos_;
    return out;
  }

  Number number() {
    const size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || std::string_view("+-._").find(peek()) !=
                                                                              std::string_view::npos)) {
      ++pos_;
    }
    Number n{s_.substr(start, pos_ - start), true};
    if (n.text.find_first_of(".eE") != std::string::npos) n.integral = false;
    // Validate with the standard parser.
    std::string clean;
    for (char c : n.text)
      if (c != '_') clean += c;
    if (!clean.empty() && clean[0] == '+') clean.erase(0, 1);
    double d = 0.0;
    const auto res = std::from_chars(clean.data(), clean.data() + clean.size(), d);
    if (clean.empty() || res.ec != std::errc() || res.ptr != clean.data() + clean.size()) {
      fail("malformed value '" + n.text + "'");
    }
    return n;
  }

  Value value() {
    const char c = peek();
    if (c == '"') return Value{basic_string()};
    if (c == '\'') return Value{literal_string()};
    if (c == '[') {
      ++pos_;
      Array arr;
      skip_array_space();
      while (peek() != ']') {
        arr.push_back(value());
        skip_array_space();
        if (peek() == ',') {
          ++pos_;
          skip_array_space();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      ++pos_;
      return Value{std::move(arr)};
    }
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return Value{true};
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return Value{false};
    }
    if (c == '{') fail("inline tables are not supported");
    return Value{number()};
  }
};

}  // namespace

Document parse(const std::string& text) { return Parser(text).run(); }

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace hpq::toml
