#include "cdlab/kernel/expr.hpp"

#include <cctype>
#include <string>

#include "cdlab/kernel/error.hpp"

namespace cdlab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Real parse() {
    Real v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Config, "bad expression '" + std::string(s_) + "': " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Real expr() {
    Real v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }

  Real term() {
    Real v = unary();
    for (;;) {
      if (eat('*')) v = v * unary();
      else if (eat('/')) v = v / unary();
      else return v;
    }
  }

  Real unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Real power() {
    Real base = primary();
    if (eat('^')) return pow(base, unary());
    return base;
  }

  Real primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Real v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (id == "pi") return pi();
      if (id == "e") return exp(Real(1));
      if (!eat('(')) fail("unknown identifier " + id);
      Real arg = expr();
      if (!eat(')')) fail("missing ')'");
      if (id == "sqrt") return sqrt(arg);
      if (id == "exp") return exp(arg);
      if (id == "log") return log(arg);
      if (id == "sin") return sin(arg);
      if (id == "cos") return cos(arg);
      fail("unknown function " + id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Real number() {
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    return Real(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Real parse_real_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace cdlab
