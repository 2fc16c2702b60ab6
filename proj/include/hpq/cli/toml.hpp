#pragma once

// Reader for the subset of TOML used by run configurations: [section]
// headers, key = value pairs, basic and literal strings, integers, floats,
// booleans, and (nested, multi-line) arrays. Numeric literals keep their
// source text so decimals can be re-read at any precision.

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace hpq::toml {

struct Value;
using Array = std::vector<Value>;

struct Number {
  std::string text;
  bool integral = false;
  double as_double() const;
  long long as_int() const;
};

struct Value {
  std::variant<std::string, Number, bool, Array> data;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const { return std::holds_alternative<Number>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
  const std::string& string() const;
  const Number& number() const;
  bool boolean() const;
  const Array& array() const;
};

/// section name ("" for keys before the first header) -> key -> value.
using Document = std::map<std::string, std::map<std::string, Value>>;

/// Throws ConfigError with a line number on malformed input.
Document parse(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace hpq::toml
