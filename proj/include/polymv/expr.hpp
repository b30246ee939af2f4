#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace polymv {

/// Thrown on malformed expression text; `offset` is the 0-based position in
/// the input where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class ExprKind {
  kConstant,  // literal real
  kVar,       // component selector x_k, 1-based
  kAbs,       // |child|
  kPow,       // child^(p/q), p >= 0, q >= 1; q odd or child nonnegative
  kExp,       // exp(child)
  kSum,       // sum of >= 2 children
  kProduct,   // product of >= 2 children
  kScale,     // factor * child
};

struct CoeffExpr;
using ExprPtr = std::shared_ptr<const CoeffExpr>;

/// Immutable expression tree for a coefficient map R^N -> R.
///
/// Trees are canonical: sums/products are flattened, a leading literal in a
/// product becomes a kScale node, kScale never wraps a constant and never has
/// factor 1, and pow exponents are in lowest terms. The named constructors
/// below enforce this; `parse_expr` and `render_expr` round-trip canonical
/// trees exactly.
struct CoeffExpr {
  ExprKind kind;
  double value = 0.0;            // kConstant payload, kScale factor
  int index = 0;                 // kVar component (1-based)
  std::int64_t pow_num = 0;      // kPow exponent numerator (>= 0)
  std::int64_t pow_den = 1;      // kPow exponent denominator (>= 1)
  std::vector<ExprPtr> children;

  static ExprPtr constant(double v);
  static ExprPtr var(int k);
  static ExprPtr abs(ExprPtr e);
  static ExprPtr pow(ExprPtr e, std::int64_t p, std::int64_t q);
  static ExprPtr exp(ExprPtr e);
  static ExprPtr sum(std::vector<ExprPtr> terms);
  static ExprPtr product(std::vector<ExprPtr> factors);
  static ExprPtr scale(double a, ExprPtr e);
  static ExprPtr negate(ExprPtr e);
};

/// True if the expression is structurally guaranteed nonnegative on all of
/// R^N (abs, exp, even powers, nonnegative combinations thereof).
bool structurally_nonneg(const CoeffExpr& e);

/// Largest component index referenced, 0 for closed expressions.
int max_var_index(const CoeffExpr& e);

/// Structural equality of canonical trees.
bool expr_equal(const CoeffExpr& a, const CoeffExpr& b);

/// Evaluate at x = (x_1, ..., x_N); x.size() must cover every referenced
/// component. Total functions only: odd roots extend pow to negative bases.
double eval(const CoeffExpr& e, const std::vector<double>& x);

/// Parse the textual syntax: `+ - *`, `abs(e)`, `pow(e,p,q)`, `exp(e)`,
/// `x1..xN`, decimal literals, parentheses.
ExprPtr parse_expr(const std::string& text);

/// Canonical text form; parse_expr(render_expr(e)) reproduces e exactly.
std::string render_expr(const CoeffExpr& e);

}  // namespace polymv
