#include "glfrob/ideal_expr.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "glfrob/errors.hpp"

namespace glfrob {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream out;
    out << what << " at position " << pos;
    throw parse_error(out.str());
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  long long integer() {
    skip();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected integer");
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000000) fail("integer too large");
      ++pos;
    }
    return v;
  }
};

struct IdealParser {
  Cursor cur;
  const PrimeContext& ctx;

  GLIdeal expr() {
    GLIdeal acc = term();
    while (cur.eat('+')) acc = ideal_sum(acc, term(), ctx);
    return acc;
  }

  GLIdeal term() {
    GLIdeal acc = factor();
    while (cur.eat('*')) acc = ideal_product(acc, factor(), ctx);
    return acc;
  }

  GLIdeal factor() {
    GLIdeal base = atom();
    if (cur.eat('^')) {
      long long e = cur.integer();
      if (e < 1) cur.fail("exponent must be positive");
      GLIdeal acc = base;
      for (long long i = 1; i < e; ++i) acc = ideal_product(acc, base, ctx);
      return acc;
    }
    return base;
  }

  GLIdeal atom() {
    if (cur.eat('(')) {
      GLIdeal inner = expr();
      cur.expect(')');
      return inner;
    }
    if (!cur.eat('m')) cur.fail("expected 'm' or '('");
    int level = 0;
    if (cur.eat('[')) {
      cur.expect('p');
      cur.expect('^');
      long long k = cur.integer();
      if (k < 1) cur.fail("bracket level must be >= 1");
      if (k > 30) cur.fail("bracket level too large");
      level = static_cast<int>(k);
      cur.expect(']');
    }
    std::vector<int> b(static_cast<size_t>(level) + 1, 0);
    b[static_cast<size_t>(level)] = 1;
    return GLIdeal{{DigitVector(std::move(b))}};
  }
};

}  // namespace

GLIdeal parse_ideal(const std::string& text, const PrimeContext& ctx) {
  IdealParser p{{text}, ctx};
  GLIdeal out = p.expr();
  if (p.cur.peek() != '\0') p.cur.fail("unexpected trailing input");
  return canonicalize(std::move(out.gens), ctx);
}

MonomialExponent parse_monomial(const std::string& text) {
  Cursor cur{text};
  std::map<long long, int> exps;
  if (cur.peek() == '1') {
    ++cur.pos;
    if (cur.peek() != '\0') cur.fail("unexpected trailing input");
    return MonomialExponent{};
  }
  while (true) {
    if (!cur.eat('x')) cur.fail("expected variable 'x<i>'");
    long long idx = cur.integer();
    if (idx < 1) cur.fail("variable index must be >= 1");
    long long e = 1;
    if (cur.eat('^')) {
      e = cur.integer();
      if (e < 1) cur.fail("exponent must be positive");
    }
    exps[idx] += static_cast<int>(e);
    if (!cur.eat('*')) break;
  }
  if (cur.peek() != '\0') cur.fail("unexpected trailing input");
  std::vector<int> parts;
  for (const auto& [idx, e] : exps) parts.push_back(e);
  return MonomialExponent(std::move(parts));
}

}  // namespace glfrob
