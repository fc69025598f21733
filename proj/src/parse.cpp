#include "twistkit/parse.hpp"

#include <cctype>

namespace twistkit {

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }

  [[noreturn]] void fail(const std::string& why) {
    throw Precondition("parse error at position " + std::to_string(i) + ": " +
                       why + " in '" + s + "'");
  }

  MPoly parse_expr() {
    MPoly acc = parse_term();
    while (true) {
      if (eat('+'))
        acc += parse_term();
      else if (eat('-'))
        acc -= parse_term();
      else
        return acc;
    }
  }

  MPoly parse_term() {
    MPoly acc = parse_power();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++i;
        acc = acc * parse_power();
      } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c))) {
        acc = acc * parse_power();  // juxtaposition
      } else {
        return acc;
      }
    }
  }

  MPoly parse_power() {
    MPoly base = parse_atom();
    if (eat('^')) {
      long e = parse_int();
      if (e < 0) fail("negative exponent");
      return base.pow(e);
    }
    return base;
  }

  long parse_int() {
    skip();
    bool neg = eat('-');
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected integer");
    long v = std::stol(s.substr(start, i - start));
    return neg ? -v : v;
  }

  MPoly parse_atom() {
    skip();
    if (eat('(')) {
      MPoly inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (eat('-')) return -parse_atom();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return MPoly::constant(Int(s.substr(start, i - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      return MPoly::variable(var_id(s.substr(start, i - start)));
    }
    fail("unexpected character");
  }
};

}  // namespace

MPoly parse_poly(const std::string& text) {
  Parser p(text);
  MPoly r = p.parse_expr();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return r;
}

std::vector<MPoly> parse_poly_list(const std::string& text) {
  std::vector<MPoly> out;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(parse_poly(text.substr(start, i - start)));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return out;
}

}  // namespace twistkit
