/* Element syntax: integers/residues as optional-sign decimal, polynomials as
   e.g. "3/2*X^2*Y - 1" with explicit '*', '^' powers, case-sensitive
   variables. Parentheses are accepted on input. */

#include <cctype>

#include "krull/rings.hpp"

namespace krull {

namespace {

struct Parser {
  const Ring& ring;
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void err(const std::string& msg) const {
    fail(Err::InputError, "parse error at position " + std::to_string(pos) + ": " + msg +
                              " in \"" + text + "\"");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  mpz_class number() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) err("expected a number");
    return mpz_class(text.substr(start, pos - start));
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
    }
    if (pos == start) err("expected a variable name");
    return text.substr(start, pos - start);
  }

  RingElement atom() {
    skip_ws();
    if (eat('(')) {
      RingElement e = expr();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = number();
      skip_ws();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        mpz_class den = number();
        if (den == 0) err("zero denominator");
        return ring.from_mpq(mpq_class(num, den));
      }
      return ring.from_mpz(num);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      const auto& vars = ring.descriptor().vars;
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return ring.variable(i);
      err("unknown variable '" + name + "'");
    }
    err("expected a number or variable");
  }

  RingElement factor() {
    RingElement base = atom();
    if (eat('^')) {
      mpz_class e = number();
      if (e < 0 || !e.fits_ulong_p()) err("bad exponent");
      return ring.pow(base, e.get_ui());
    }
    return base;
  }

  RingElement term() {
    bool negative = false;
    for (;;) {
      if (eat('-')) {
        negative = !negative;
      } else if (eat('+')) {
        // no-op
      } else {
        break;
      }
    }
    RingElement acc = factor();
    while (eat('*')) acc = ring.mul(acc, factor());
    return negative ? ring.neg(acc) : acc;
  }

  RingElement expr() {
    RingElement acc = term();
    for (;;) {
      skip_ws();
      if (pos >= text.size()) break;
      if (text[pos] == '+') {
        ++pos;
        acc = ring.add(acc, term());
      } else if (text[pos] == '-') {
        ++pos;
        acc = ring.sub(acc, term());
      } else {
        break;
      }
    }
    return acc;
  }
};

}  // namespace

RingElement Ring::parse(const std::string& text) const {
  Parser p{*this, text};
  RingElement e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  return e;
}

}  // namespace krull
