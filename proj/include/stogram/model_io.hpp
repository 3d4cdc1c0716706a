#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stogram/system.hpp"

namespace stogram {

// --- Entry expression mini-language -----------------------------------------
//
// expr   := term (("+"|"-") term)*
// term   := factor (("*"|"/") factor)*
// factor := number | "k" | "pi" | ident "(" expr ")" | "(" expr ")" | "-" factor
// ident  := sin | cos | exp
//
// Left-associative, radians, unary minus binds at factor level
// (so -a*b parses as (-a)*b).

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, Var, Pi, Unary, Binary, Call } kind;
  double value = 0.0;   // Number
  char op = 0;          // Binary: + - * /
  std::string func;     // Call: sin cos exp
  ExprPtr lhs, rhs;     // Unary/Call use lhs only
};

class EntryExpression {
 public:
  EntryExpression() = default;
  explicit EntryExpression(ExprPtr root) : root_(std::move(root)) {}
  double evaluate(double k) const;
  std::string to_string() const;
  const ExprPtr& root() const { return root_; }

 private:
  ExprPtr root_;
};

/// Parses the grammar above; throws ParseError with a byte offset on failure.
EntryExpression parse_expression(const std::string& text);

// --- System documents --------------------------------------------------------
//
// JSON schema: top-level keys `kind` ("lti"|"ltv"), `n`, `p`, `N`, and
// matrices `phi`, `c`, `q`, `r` given as arrays of rows whose entries are
// numbers or expression strings in k. Expressions are evaluated eagerly at
// load: phi/q at k = 0..N-1, c/r at k = 0..N.

struct SystemDocument {
  bool is_lti = false;
  TimeInvariantLinearSystem lti;   // populated when is_lti
  TimeVaryingLinearSystem ltv;     // always populated (lifted for LTI)
};

SystemDocument load_system(const std::string& path);
SystemDocument load_system_json(const std::string& json_text);
SystemDocument load_system(std::istream& in);

/// Serializes a loaded system back to a schema document (numeric literals).
std::string serialize_system(const SystemDocument& doc);

// --- Sweep CSV ----------------------------------------------------------------

/// One per-(method, w) experiment result; the CSV row type.
struct GramianSweepRecord {
  std::string method;
  int w = 0;
  std::vector<double> fim;  // n*n row-major entries
  double sym_err = 0.0;
  double min_eig = 0.0;
  long long wall_ns = 0;
  std::string error;  // non-empty marks a sentinel row; numeric columns empty
};

/// Header `method,w,f11,...,fnn,sym_err,min_eig,wall_ns,error` then one row
/// per record. Entry columns are named f<row><col>, 1-based, row-major.
void write_sweep_csv(std::ostream& out, const std::vector<GramianSweepRecord>& records,
                     int state_dim);

}  // namespace stogram
