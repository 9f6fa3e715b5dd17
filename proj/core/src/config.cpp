#include "qhlab/config.hpp"

#include "qhlab/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qhlab {

using nlohmann::json;

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  json document() {
    json root = json::object();
    json* section = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        section = &open_section(root);
      } else {
        std::string key = parse_key();
        skip_inline_ws();
        expect('=');
        skip_inline_ws();
        json value = parse_value();
        insert(*section, key, std::move(value));
        end_of_statement();
      }
    }
    return root;
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + what);
  }
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  char get() {
    char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  void skip_comment() {
    while (!eof() && peek() != '\n') get();
  }
  void skip_inline_ws() {
    while (peek() == ' ' || peek() == '\t' || peek() == '\r') get();
  }
  // Whitespace, newlines and comments.
  void skip_blank_lines() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') get();
      else if (c == '#' || c == ';') skip_comment();
      else break;
    }
  }
  void end_of_statement() {
    skip_inline_ws();
    if (peek() == '#' || peek() == ';') skip_comment();
    if (!eof() && peek() != '\n') fail("unexpected text after value");
  }

  static bool key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

  std::string parse_key() {
    if (peek() == '"') return parse_string();
    std::string k;
    while (key_char(peek())) k += get();
    if (k.empty()) fail("expected a key");
    return k;
  }

  void insert(json& obj, const std::string& key, json value) {
    if (obj.contains(key)) fail("duplicate key '" + key + "'");
    obj[key] = std::move(value);
  }

  json& open_section(json& root) {
    expect('[');
    json* cur = &root;
    while (true) {
      skip_inline_ws();
      std::string name = parse_key();
      if (!cur->contains(name)) (*cur)[name] = json::object();
      cur = &(*cur)[name];
      if (!cur->is_object()) fail("section '" + name + "' clashes with a value");
      skip_inline_ws();
      if (peek() == '.') {
        get();
        continue;
      }
      break;
    }
    expect(']');
    end_of_statement();
    return *cur;
  }

  std::string parse_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated string");
        char e = get();
        switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(std::string("unknown escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  json parse_value() {
    char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_record();
    std::string word;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || std::string("+-._").find(peek()) != std::string::npos))
      word += get();
    if (word.empty()) fail("expected a value");
    if (word == "true") return true;
    if (word == "false") return false;
    if (word == "inf" || word == "+inf") return "inf";
    bool integral = word.find_first_of(".eE") == std::string::npos;
    if (integral) {
      long long v = 0;
      auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
      if (ec == std::errc() && p == word.data() + word.size()) return v;
    }
    std::istringstream is(word);
    is.imbue(std::locale::classic());
    double d = 0.0;
    is >> d;
    if (!is || !(is >> std::ws).eof()) fail("cannot read value '" + word + "'");
    return d;
  }

  json parse_array() {
    expect('[');
    json a = json::array();
    while (true) {
      skip_blank_lines();
      if (peek() == ']') {
        get();
        return a;
      }
      a.push_back(parse_value());
      skip_blank_lines();
      if (peek() == ',') get();
      else if (peek() != ']') fail("expected ',' or ']' in array");
    }
  }

  json parse_record() {
    expect('{');
    json r = json::object();
    while (true) {
      skip_blank_lines();
      if (peek() == '}') {
        get();
        return r;
      }
      std::string key = parse_key();
      skip_inline_ws();
      if (peek() == '=' || peek() == ':') get();
      else fail("expected '=' after record key");
      skip_blank_lines();
      insert(r, key, parse_value());
      skip_blank_lines();
      if (peek() == ',') get();
      else if (peek() != '}') fail("expected ',' or '}' in record");
    }
  }
};

} // namespace

json parse_config(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
  }
  return Parser(text).document();
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

} // namespace qhlab
