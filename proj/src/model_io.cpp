#include "stogram/model_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace stogram {

// --- expression parsing -------------------------------------------------------

namespace {

ExprPtr make_number(double v) {
  auto node = std::make_shared<ExprNode>();
  node->kind = ExprNode::Kind::Number;
  node->value = v;
  return node;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      char op = peek();
      if (op != '+' && op != '-') return lhs;
      ++pos_;
      auto node = std::make_shared<ExprNode>();
      node->kind = ExprNode::Kind::Binary;
      node->op = op;
      node->lhs = std::move(lhs);
      node->rhs = parse_term();
      lhs = std::move(node);
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      char op = peek();
      if (op != '*' && op != '/') return lhs;
      ++pos_;
      auto node = std::make_shared<ExprNode>();
      node->kind = ExprNode::Kind::Binary;
      node->op = op;
      node->lhs = std::move(lhs);
      node->rhs = parse_factor();
      lhs = std::move(node);
    }
  }

  ExprPtr parse_factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      auto node = std::make_shared<ExprNode>();
      node->kind = ExprNode::Kind::Unary;
      node->lhs = parse_factor();
      return node;
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make_number(v);
  }

  ExprPtr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    auto node = std::make_shared<ExprNode>();
    if (name == "k") {
      node->kind = ExprNode::Kind::Var;
      return node;
    }
    if (name == "pi") {
      node->kind = ExprNode::Kind::Pi;
      return node;
    }
    if (name == "sin" || name == "cos" || name == "exp") {
      if (!consume('(')) fail("expected '(' after function name");
      node->kind = ExprNode::Kind::Call;
      node->func = name;
      node->lhs = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return node;
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

double eval_node(const ExprNode& node, double k) {
  switch (node.kind) {
    case ExprNode::Kind::Number:
      return node.value;
    case ExprNode::Kind::Var:
      return k;
    case ExprNode::Kind::Pi:
      return M_PI;
    case ExprNode::Kind::Unary:
      return -eval_node(*node.lhs, k);
    case ExprNode::Kind::Call: {
      const double arg = eval_node(*node.lhs, k);
      if (node.func == "sin") return std::sin(arg);
      if (node.func == "cos") return std::cos(arg);
      return std::exp(arg);
    }
    case ExprNode::Kind::Binary: {
      const double a = eval_node(*node.lhs, k);
      const double b = eval_node(*node.rhs, k);
      switch (node.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default:  return a / b;
      }
    }
  }
  return 0.0;
}

void print_node(const ExprNode& node, std::ostream& os) {
  switch (node.kind) {
    case ExprNode::Kind::Number: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << node.value;
      os << tmp.str();
      break;
    }
    case ExprNode::Kind::Var:
      os << "k";
      break;
    case ExprNode::Kind::Pi:
      os << "pi";
      break;
    case ExprNode::Kind::Unary:
      os << "-";
      print_node(*node.lhs, os);
      break;
    case ExprNode::Kind::Call:
      os << node.func << "(";
      print_node(*node.lhs, os);
      os << ")";
      break;
    case ExprNode::Kind::Binary:
      os << "(";
      print_node(*node.lhs, os);
      os << node.op;
      print_node(*node.rhs, os);
      os << ")";
      break;
  }
}

}  // namespace

double EntryExpression::evaluate(double k) const {
  if (!root_) throw UnsupportedError("empty expression");
  return eval_node(*root_, k);
}

std::string EntryExpression::to_string() const {
  if (!root_) return "";
  std::ostringstream os;
  print_node(*root_, os);
  return os.str();
}

EntryExpression parse_expression(const std::string& text) {
  if (text.empty()) throw ParseError("empty expression", 0);
  return EntryExpression(ExprParser(text).parse());
}

// --- system documents ---------------------------------------------------------

namespace {

using nlohmann::json;

double eval_entry(const json& entry, int k) {
  if (entry.is_number()) return entry.get<double>();
  if (entry.is_string()) {
    const double v = parse_expression(entry.get<std::string>()).evaluate(k);
    if (!std::isfinite(v))
      throw SchemaError("expression '" + entry.get<std::string>() +
                        "' not finite at k=" + std::to_string(k));
    return v;
  }
  throw SchemaError("matrix entry must be a number or expression string");
}

Matrix eval_matrix(const json& rows, int nrows, int ncols, int k,
                   const std::string& name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != nrows)
    throw SchemaError("'" + name + "' must have " + std::to_string(nrows) + " rows");
  Matrix out(nrows, ncols);
  for (int i = 0; i < nrows; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != ncols)
      throw SchemaError("'" + name + "' row " + std::to_string(i) + " must have " +
                        std::to_string(ncols) + " entries");
    for (int j = 0; j < ncols; ++j)
      out(i, j) = eval_entry(row[static_cast<size_t>(j)], k);
  }
  return out;
}

bool is_matrix_sequence(const json& value) {
  // Sequence form: array of matrices (depth 3) instead of one matrix (depth 2).
  return value.is_array() && !value.empty() && value[0].is_array() &&
         !value[0].empty() && value[0][0].is_array();
}

std::vector<Matrix> eval_sequence(const json& value, int count, int nrows,
                                  int ncols, const std::string& name) {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(count));
  if (is_matrix_sequence(value)) {
    if (static_cast<int>(value.size()) != count)
      throw SchemaError("'" + name + "' sequence must have " +
                        std::to_string(count) + " matrices");
    for (int k = 0; k < count; ++k)
      out.push_back(eval_matrix(value[static_cast<size_t>(k)], nrows, ncols, k, name));
  } else {
    for (int k = 0; k < count; ++k)
      out.push_back(eval_matrix(value, nrows, ncols, k, name));
  }
  return out;
}

int require_int(const json& doc, const char* key, int min_value) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw SchemaError(std::string("missing or non-integer '") + key + "'");
  const int v = doc[key].get<int>();
  if (v < min_value)
    throw SchemaError(std::string("'") + key + "' must be >= " +
                      std::to_string(min_value));
  return v;
}

SystemDocument from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind"))
    throw SchemaError("document must be an object with a 'kind' key");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind != "lti" && kind != "ltv")
    throw SchemaError("'kind' must be \"lti\" or \"ltv\"");
  const int n = require_int(doc, "n", 1);
  const int p = require_int(doc, "p", 1);
  for (const char* key : {"phi", "c", "q", "r"})
    if (!doc.contains(key))
      throw SchemaError(std::string("missing matrix key '") + key + "'");

  SystemDocument out;
  if (kind == "lti") {
    const int N = doc.contains("N") ? require_int(doc, "N", 0) : 0;
    out.is_lti = true;
    out.lti.state_dim = n;
    out.lti.meas_dim = p;
    out.lti.phi = eval_matrix(doc["phi"], n, n, 0, "phi");
    out.lti.c = eval_matrix(doc["c"], p, n, 0, "c");
    out.lti.q = eval_matrix(doc["q"], n, n, 0, "q");
    out.lti.r = eval_matrix(doc["r"], p, p, 0, "r");
    out.ltv = lift_lti(out.lti, N);
  } else {
    const int N = require_int(doc, "N", 0);
    out.ltv.horizon = N;
    out.ltv.state_dim = n;
    out.ltv.meas_dim = p;
    out.ltv.phi = eval_sequence(doc["phi"], N, n, n, "phi");
    out.ltv.q = eval_sequence(doc["q"], N, n, n, "q");
    out.ltv.c = eval_sequence(doc["c"], N + 1, p, n, "c");
    out.ltv.r = eval_sequence(doc["r"], N + 1, p, p, "r");
  }

  const ValidationReport report = validate(out.ltv);
  if (!report.ok())
    throw ValidationError("loaded system failed validation:\n" + report.summary());
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json sequence_to_json(const std::vector<Matrix>& seq) {
  json out = json::array();
  for (const Matrix& m : seq) out.push_back(matrix_to_json(m));
  return out;
}

}  // namespace

SystemDocument load_system_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), static_cast<std::size_t>(e.byte));
  }
  return from_json(doc);
}

SystemDocument load_system(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_system_json(buffer.str());
}

SystemDocument load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return load_system(in);
}

std::string serialize_system(const SystemDocument& doc) {
  json out;
  if (doc.is_lti) {
    out["kind"] = "lti";
    out["n"] = doc.lti.state_dim;
    out["p"] = doc.lti.meas_dim;
    out["N"] = doc.ltv.horizon;
    out["phi"] = matrix_to_json(doc.lti.phi);
    out["c"] = matrix_to_json(doc.lti.c);
    out["q"] = matrix_to_json(doc.lti.q);
    out["r"] = matrix_to_json(doc.lti.r);
  } else {
    out["kind"] = "ltv";
    out["n"] = doc.ltv.state_dim;
    out["p"] = doc.ltv.meas_dim;
    out["N"] = doc.ltv.horizon;
    out["phi"] = sequence_to_json(doc.ltv.phi);
    out["c"] = sequence_to_json(doc.ltv.c);
    out["q"] = sequence_to_json(doc.ltv.q);
    out["r"] = sequence_to_json(doc.ltv.r);
  }
  return out.dump(2);
}

// --- sweep CSV ------------------------------------------------------------------

void write_sweep_csv(std::ostream& out,
                     const std::vector<GramianSweepRecord>& records,
                     int state_dim) {
  out << "method,w";
  for (int i = 1; i <= state_dim; ++i)
    for (int j = 1; j <= state_dim; ++j) out << ",f" << i << j;
  out << ",sym_err,min_eig,wall_ns,error\n";

  const int entries = state_dim * state_dim;
  out.precision(17);
  for (const auto& rec : records) {
    out << rec.method << "," << rec.w;
    if (rec.error.empty()) {
      if (static_cast<int>(rec.fim.size()) != entries)
        throw UnsupportedError("record FIM size inconsistent with state dimension");
      for (double v : rec.fim) out << "," << v;
      out << "," << rec.sym_err << "," << rec.min_eig << "," << rec.wall_ns << ",";
    } else {
      for (int i = 0; i < entries + 4; ++i) out << ",";
      std::string msg = rec.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      out << msg;
    }
    out << "\n";
  }
  if (!out) throw std::ios_base::failure("CSV write failed");
}

}  // namespace stogram
