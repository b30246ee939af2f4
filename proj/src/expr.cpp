#include "polymv/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

namespace polymv {

namespace {

std::shared_ptr<CoeffExpr> make_node(ExprKind k) {
  auto n = std::make_shared<CoeffExpr>();
  n->kind = k;
  return n;
}

}  // namespace

ExprPtr CoeffExpr::constant(double v) {
  auto n = make_node(ExprKind::kConstant);
  n->value = v;
  return n;
}

ExprPtr CoeffExpr::var(int k) {
  if (k < 1) throw std::invalid_argument("component index must be >= 1");
  auto n = make_node(ExprKind::kVar);
  n->index = k;
  return n;
}

ExprPtr CoeffExpr::abs(ExprPtr e) {
  auto n = make_node(ExprKind::kAbs);
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr CoeffExpr::pow(ExprPtr e, std::int64_t p, std::int64_t q) {
  if (p < 0) throw std::invalid_argument("pow: exponent numerator must be >= 0");
  if (q < 1) throw std::invalid_argument("pow: exponent denominator must be >= 1");
  const std::int64_t g = std::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (q % 2 == 0 && !structurally_nonneg(*e))
    throw std::invalid_argument(
        "pow: even root requires a structurally nonnegative argument");
  auto n = make_node(ExprKind::kPow);
  n->pow_num = p;
  n->pow_den = q;
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr CoeffExpr::exp(ExprPtr e) {
  auto n = make_node(ExprKind::kExp);
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr CoeffExpr::sum(std::vector<ExprPtr> terms) {
  if (terms.empty()) throw std::invalid_argument("sum: needs at least one term");
  std::vector<ExprPtr> flat;
  for (auto& t : terms) {
    if (t->kind == ExprKind::kSum)
      flat.insert(flat.end(), t->children.begin(), t->children.end());
    else
      flat.push_back(std::move(t));
  }
  if (flat.size() == 1) return flat[0];
  auto n = make_node(ExprKind::kSum);
  n->children = std::move(flat);
  return n;
}

ExprPtr CoeffExpr::product(std::vector<ExprPtr> factors) {
  if (factors.empty())
    throw std::invalid_argument("product: needs at least one factor");
  std::vector<ExprPtr> flat;
  double lead = 1.0;
  bool has_lead = false;
  for (auto& f : factors) {
    if (f->kind == ExprKind::kProduct) {
      flat.insert(flat.end(), f->children.begin(), f->children.end());
    } else if (f->kind == ExprKind::kConstant) {
      lead *= f->value;
      has_lead = true;
    } else if (f->kind == ExprKind::kScale) {
      lead *= f->value;
      has_lead = true;
      flat.push_back(f->children[0]);
    } else {
      flat.push_back(std::move(f));
    }
  }
  ExprPtr core;
  if (flat.empty()) return constant(lead);
  if (flat.size() == 1) {
    core = flat[0];
  } else {
    auto n = make_node(ExprKind::kProduct);
    n->children = std::move(flat);
    core = n;
  }
  if (has_lead && lead != 1.0) return scale(lead, core);
  return core;
}

ExprPtr CoeffExpr::scale(double a, ExprPtr e) {
  if (e->kind == ExprKind::kConstant) return constant(a * e->value);
  if (e->kind == ExprKind::kScale) {
    a *= e->value;
    e = e->children[0];
  }
  if (a == 1.0) return e;
  auto n = make_node(ExprKind::kScale);
  n->value = a;
  n->children.push_back(std::move(e));
  return n;
}

ExprPtr CoeffExpr::negate(ExprPtr e) { return scale(-1.0, std::move(e)); }

bool structurally_nonneg(const CoeffExpr& e) {
  switch (e.kind) {
    case ExprKind::kConstant:
      return e.value >= 0.0;
    case ExprKind::kVar:
      return false;
    case ExprKind::kAbs:
    case ExprKind::kExp:
      return true;
    case ExprKind::kPow:
      return e.pow_num % 2 == 0 || structurally_nonneg(*e.children[0]);
    case ExprKind::kSum:
    case ExprKind::kProduct: {
      for (const auto& c : e.children)
        if (!structurally_nonneg(*c)) return false;
      return true;
    }
    case ExprKind::kScale:
      return e.value >= 0.0 && structurally_nonneg(*e.children[0]);
  }
  return false;
}

int max_var_index(const CoeffExpr& e) {
  int m = e.kind == ExprKind::kVar ? e.index : 0;
  for (const auto& c : e.children) m = std::max(m, max_var_index(*c));
  return m;
}

bool expr_equal(const CoeffExpr& a, const CoeffExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::kConstant:
      if (a.value != b.value) return false;
      break;
    case ExprKind::kVar:
      if (a.index != b.index) return false;
      break;
    case ExprKind::kPow:
      if (a.pow_num != b.pow_num || a.pow_den != b.pow_den) return false;
      break;
    case ExprKind::kScale:
      if (a.value != b.value) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!expr_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

double eval(const CoeffExpr& e, const std::vector<double>& x) {
  switch (e.kind) {
    case ExprKind::kConstant:
      return e.value;
    case ExprKind::kVar: {
      if (e.index > static_cast<int>(x.size()))
        throw std::out_of_range("eval: component index exceeds vector length");
      return x[e.index - 1];
    }
    case ExprKind::kAbs:
      return std::fabs(eval(*e.children[0], x));
    case ExprKind::kPow: {
      double v = eval(*e.children[0], x);
      if (e.pow_den == 1) return std::pow(v, static_cast<double>(e.pow_num));
      double root;
      if (e.pow_den % 2 == 1) {
        // odd real root, sign-preserving
        root = std::copysign(std::pow(std::fabs(v), 1.0 / e.pow_den), v);
      } else {
        // even denominator only reachable with nonnegative argument; clamp
        // roundoff from below
        root = std::pow(std::max(v, 0.0), 1.0 / e.pow_den);
      }
      return std::pow(root, static_cast<double>(e.pow_num));
    }
    case ExprKind::kExp:
      return std::exp(eval(*e.children[0], x));
    case ExprKind::kSum: {
      double s = 0.0;
      for (const auto& c : e.children) s += eval(*c, x);
      return s;
    }
    case ExprKind::kProduct: {
      double p = 1.0;
      for (const auto& c : e.children) p *= eval(*c, x);
      return p;
    }
    case ExprKind::kScale:
      return e.value * eval(*e.children[0], x);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!consume(c)) throw ParseError(std::string("expected ") + what, pos);
  }
};

ExprPtr parse_sum(Lexer& lx);

std::int64_t parse_integer(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  bool neg = lx.consume('-');
  lx.skip_ws();
  std::size_t digits = lx.pos;
  while (lx.pos < lx.s.size() &&
         std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
    ++lx.pos;
  if (lx.pos == digits) throw ParseError("expected integer", start);
  std::int64_t v = std::stoll(lx.s.substr(digits, lx.pos - digits));
  return neg ? -v : v;
}

double parse_number(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.s.size()) {
    char c = lx.s[lx.pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      ++lx.pos;
    } else if ((c == 'e' || c == 'E') && lx.pos > start) {
      ++lx.pos;
      if (lx.pos < lx.s.size() && (lx.s[lx.pos] == '+' || lx.s[lx.pos] == '-'))
        ++lx.pos;
    } else {
      break;
    }
  }
  if (lx.pos == start) throw ParseError("expected number", start);
  try {
    return std::stod(lx.s.substr(start, lx.pos - start));
  } catch (const std::exception&) {
    throw ParseError("malformed number", start);
  }
}

std::string parse_ident(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.s.size() &&
         (std::isalnum(static_cast<unsigned char>(lx.s[lx.pos]))))
    ++lx.pos;
  return lx.s.substr(start, lx.pos - start);
}

ExprPtr parse_primary(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  char c = lx.peek();
  if (c == '(') {
    lx.consume('(');
    ExprPtr e = parse_sum(lx);
    lx.expect(')', "')'");
    return e;
  }
  if (c == '-') {
    lx.consume('-');
    return CoeffExpr::negate(parse_primary(lx));
  }
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
    return CoeffExpr::constant(parse_number(lx));
  if (std::isalpha(static_cast<unsigned char>(c))) {
    std::string id = parse_ident(lx);
    if (id == "abs" || id == "exp") {
      lx.expect('(', "'('");
      ExprPtr arg = parse_sum(lx);
      lx.expect(')', "')'");
      return id == "abs" ? CoeffExpr::abs(arg) : CoeffExpr::exp(arg);
    }
    if (id == "pow") {
      lx.expect('(', "'('");
      ExprPtr arg = parse_sum(lx);
      lx.expect(',', "','");
      std::int64_t p = parse_integer(lx);
      lx.expect(',', "','");
      std::int64_t q = parse_integer(lx);
      lx.expect(')', "')'");
      try {
        return CoeffExpr::pow(arg, p, q);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), start);
      }
    }
    if (id.size() >= 2 && id[0] == 'x') {
      for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i])))
          throw ParseError("unknown identifier '" + id + "'", start);
      int k = std::stoi(id.substr(1));
      if (k < 1) throw ParseError("component index must be >= 1", start);
      return CoeffExpr::var(k);
    }
    throw ParseError("unknown identifier '" + id + "'", start);
  }
  throw ParseError("unexpected character", start);
}

ExprPtr parse_term(Lexer& lx) {
  std::vector<ExprPtr> factors{parse_primary(lx)};
  while (lx.peek() == '*') {
    lx.consume('*');
    factors.push_back(parse_primary(lx));
  }
  if (factors.size() == 1) return factors[0];
  return CoeffExpr::product(std::move(factors));
}

ExprPtr parse_sum(Lexer& lx) {
  std::vector<ExprPtr> terms{parse_term(lx)};
  for (;;) {
    char c = lx.peek();
    if (c == '+') {
      lx.consume('+');
      terms.push_back(parse_term(lx));
    } else if (c == '-') {
      lx.consume('-');
      terms.push_back(CoeffExpr::negate(parse_term(lx)));
    } else {
      break;
    }
  }
  if (terms.size() == 1) return terms[0];
  return CoeffExpr::sum(std::move(terms));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// precedence: 0 sum, 1 product/scale, 2 primary
void render(const CoeffExpr& e, int parent_prec, std::string& out) {
  switch (e.kind) {
    case ExprKind::kConstant: {
      bool paren = e.value < 0 && parent_prec >= 1;
      if (paren) out += '(';
      out += format_double(e.value);
      if (paren) out += ')';
      break;
    }
    case ExprKind::kVar:
      out += "x" + std::to_string(e.index);
      break;
    case ExprKind::kAbs:
      out += "abs(";
      render(*e.children[0], 0, out);
      out += ')';
      break;
    case ExprKind::kExp:
      out += "exp(";
      render(*e.children[0], 0, out);
      out += ')';
      break;
    case ExprKind::kPow:
      out += "pow(";
      render(*e.children[0], 0, out);
      out += ", " + std::to_string(e.pow_num) + ", " + std::to_string(e.pow_den) +
             ")";
      break;
    case ExprKind::kSum: {
      bool paren = parent_prec >= 1;
      if (paren) out += '(';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const CoeffExpr& t = *e.children[i];
        if (i == 0) {
          render(t, 0, out);
          continue;
        }
        // fold a negative leading sign into " - "
        if (t.kind == ExprKind::kConstant && t.value < 0) {
          out += " - " + format_double(-t.value);
        } else if (t.kind == ExprKind::kScale && t.value < 0) {
          out += " - ";
          render(*CoeffExpr::scale(-t.value, t.children[0]), 1, out);
        } else {
          out += " + ";
          render(t, 0, out);
        }
      }
      if (paren) out += ')';
      break;
    }
    case ExprKind::kProduct: {
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " * ";
        render(*e.children[i], 1, out);
      }
      break;
    }
    case ExprKind::kScale: {
      out += format_double(e.value);
      out += " * ";
      render(*e.children[0], 1, out);
      break;
    }
  }
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  Lexer lx{text};
  ExprPtr e = parse_sum(lx);
  lx.skip_ws();
  if (lx.pos != text.size()) throw ParseError("trailing input", lx.pos);
  return e;
}

std::string render_expr(const CoeffExpr& e) {
  std::string out;
  render(e, 0, out);
  return out;
}

}  // namespace polymv
