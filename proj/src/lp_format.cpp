#include "uavnet/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

constexpr int kTermsPerLine = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void append_terms(std::string& out, const std::vector<std::pair<std::string, double>>& terms) {
  int on_line = 0;
  for (const auto& [name, coef] : terms) {
    if (on_line == kTermsPerLine) {
      out += "\n   ";
      on_line = 0;
    }
    out += coef < 0.0 ? " - " : " + ";
    const double a = std::abs(coef);
    if (a != 1.0) out += num(a) + " ";
    out += name;
    ++on_line;
  }
}

// ---- tokenizer -------------------------------------------------------------

enum class Tok { ident, number, sign, colon, op, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double value = 0.0;
  int line = 0;
};

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::parse, "LP line " + std::to_string(line) + ": " + what);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' || c == ']';
}

std::vector<Token> tokenize(const std::string& text, int first_line) {
  std::vector<Token> out;
  int line = first_line;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::ident, text.substr(i, j - i), 0.0, line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text.substr(i, 40), &used);
      } catch (const std::exception&) {
        parse_fail(line, "bad number");
      }
      out.push_back({Tok::number, text.substr(i, used), v, line});
      i += used;
    } else if (c == '+' || c == '-') {
      out.push_back({Tok::sign, std::string(1, c), 0.0, line});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::colon, ":", 0.0, line});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < text.size() && (text[i + 1] == '=' || text[i + 1] == '<' || text[i + 1] == '>')) op += text[++i];
      ++i;
      if (op == "<" || op == "<=" || op == "=<") op = "<=";
      else if (op == ">" || op == ">=" || op == "=>") op = ">=";
      else if (op != "=") parse_fail(line, "bad operator '" + op + "'");
      out.push_back({Tok::op, op, 0.0, line});
    } else {
      parse_fail(line, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

bool is_infinity(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return l == "inf" || l == "infinity";
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> t) : t_(std::move(t)) {}
  bool done() const { return pos_ >= t_.size(); }
  const Token& peek(std::size_t ahead = 0) const {
    static const Token end{Tok::end, "", 0.0, 0};
    return pos_ + ahead < t_.size() ? t_[pos_ + ahead] : end;
  }
  Token next() {
    if (done()) parse_fail(t_.empty() ? 0 : t_.back().line, "unexpected end of section");
    return t_[pos_++];
  }
  int line() const { return done() ? (t_.empty() ? 0 : t_.back().line) : t_[pos_].line; }

 private:
  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

// Signed number, accepting "inf" / "infinity".
bool read_value(TokenStream& ts, double& value) {
  double sign = 1.0;
  std::size_t k = 0;
  if (ts.peek().kind == Tok::sign) {
    sign = ts.peek().text == "-" ? -1.0 : 1.0;
    k = 1;
  }
  const Token& t = ts.peek(k);
  if (t.kind == Tok::number || (t.kind == Tok::ident && is_infinity(t.text))) {
    if (k) ts.next();
    ts.next();
    value = sign * (t.kind == Tok::number ? t.value : kInf);
    return true;
  }
  return false;
}

// Linear expression up to an operator or the end; numbers with no variable
// after them are collected into `constant`.
void read_expression(TokenStream& ts, std::vector<std::pair<std::string, double>>& terms, double& constant,
                     bool stop_at_op) {
  bool first = true;
  while (!ts.done()) {
    if (stop_at_op && ts.peek().kind == Tok::op) return;
    double sign = 1.0;
    if (ts.peek().kind == Tok::sign) {
      sign = ts.next().text == "-" ? -1.0 : 1.0;
    } else if (!first) {
      parse_fail(ts.line(), "expected '+' or '-' between terms");
    }
    first = false;
    double coef = 1.0;
    bool have_number = false;
    if (ts.peek().kind == Tok::number) {
      coef = ts.next().value;
      have_number = true;
    }
    if (ts.peek().kind == Tok::ident) {
      terms.emplace_back(ts.next().text, sign * coef);
    } else if (have_number) {
      constant += sign * coef;
    } else {
      parse_fail(ts.line(), "expected a term");
    }
  }
}

enum class Section { none, objective, constraints, bounds, binaries, generals, end };

Section section_of(const std::string& line, bool& maximize) {
  std::string l;
  for (char c : line) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto first = l.find_first_not_of(" \t");
  if (first == std::string::npos) return Section::none;
  l = l.substr(first);
  while (!l.empty() && std::isspace(static_cast<unsigned char>(l.back()))) l.pop_back();
  if (l == "maximize" || l == "maximise" || l == "maximum" || l == "max") {
    maximize = true;
    return Section::objective;
  }
  if (l == "minimize" || l == "minimise" || l == "minimum" || l == "min") {
    maximize = false;
    return Section::objective;
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") return Section::constraints;
  if (l == "bounds" || l == "bound") return Section::bounds;
  if (l == "binaries" || l == "binary" || l == "bin") return Section::binaries;
  if (l == "generals" || l == "general" || l == "gen") return Section::generals;
  if (l == "end") return Section::end;
  return Section::none;
}

void note_variable(LpFile& f, std::set<std::string>& seen, const std::string& name) {
  if (seen.insert(name).second) f.variables.push_back(name);
}

void parse_objective(TokenStream ts, LpFile& f, std::set<std::string>& seen) {
  if (ts.peek().kind == Tok::ident && ts.peek(1).kind == Tok::colon) {
    ts.next();
    ts.next();
  }
  read_expression(ts, f.objective, f.objective_constant, false);
  for (const auto& [name, _] : f.objective) note_variable(f, seen, name);
}

void parse_constraints(TokenStream ts, LpFile& f, std::set<std::string>& seen) {
  while (!ts.done()) {
    LpFileRow row;
    if (ts.peek().kind == Tok::ident && ts.peek(1).kind == Tok::colon) {
      row.name = ts.next().text;
      ts.next();
    } else {
      row.name = "R" + std::to_string(f.rows.size() + 1);
    }
    double constant = 0.0;
    read_expression(ts, row.terms, constant, true);
    if (ts.peek().kind != Tok::op) parse_fail(ts.line(), "row '" + row.name + "' has no relational operator");
    const std::string op = ts.next().text;
    row.sense = op == "<=" ? lp::RowSense::less_equal : op == ">=" ? lp::RowSense::greater_equal : lp::RowSense::equal;
    double rhs = 0.0;
    if (!read_value(ts, rhs) || std::isinf(rhs)) parse_fail(ts.line(), "row '" + row.name + "' needs a finite right-hand side");
    row.rhs = rhs - constant;
    for (const auto& [name, _] : row.terms) note_variable(f, seen, name);
    f.rows.push_back(std::move(row));
  }
}

void set_bound(LpFile& f, const std::string& name, const std::string& op, double v, bool var_on_left) {
  auto [it, _] = f.bounds.try_emplace(name, std::pair{0.0, kInf});
  auto& [lo, hi] = it->second;
  const bool upper = (op == "<=") == var_on_left;
  if (op == "=") {
    lo = hi = v;
  } else if (upper) {
    hi = v;
  } else {
    lo = v;
  }
}

void parse_bounds(TokenStream ts, LpFile& f, std::set<std::string>& seen) {
  while (!ts.done()) {
    const int line = ts.line();
    double v = 0.0;
    if (read_value(ts, v)) {
      // v op name [op w]
      if (ts.peek().kind != Tok::op) parse_fail(line, "expected an operator in bound");
      const std::string op = ts.next().text;
      if (ts.peek().kind != Tok::ident) parse_fail(line, "expected a variable in bound");
      const std::string name = ts.next().text;
      note_variable(f, seen, name);
      set_bound(f, name, op, v, false);
      if (ts.peek().kind == Tok::op) {
        const std::string op2 = ts.next().text;
        double w = 0.0;
        if (!read_value(ts, w)) parse_fail(line, "expected a value in bound");
        set_bound(f, name, op2, w, true);
      }
      continue;
    }
    if (ts.peek().kind != Tok::ident) parse_fail(line, "expected a bound");
    const std::string name = ts.next().text;
    note_variable(f, seen, name);
    if (ts.peek().kind == Tok::ident) {
      std::string word = ts.next().text;
      std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::tolower(c); });
      if (word != "free") parse_fail(line, "unknown bound keyword '" + word + "'");
      f.bounds[name] = {-kInf, kInf};
      continue;
    }
    if (ts.peek().kind != Tok::op) parse_fail(line, "expected an operator in bound");
    const std::string op = ts.next().text;
    if (!read_value(ts, v)) parse_fail(line, "expected a value in bound");
    set_bound(f, name, op, v, true);
  }
}

}  // namespace

std::pair<double, double> LpFile::bounds_of(const std::string& name) const {
  auto it = bounds.find(name);
  if (it != bounds.end()) return it->second;
  if (binaries.count(name)) return {0.0, 1.0};
  return {0.0, kInf};
}

std::string write_lp(const MilpInstance& m) {
  const lp::LinearProgram& lp = m.lp;
  std::string out;
  out += "\\ Routing MILP: " + std::to_string(m.commodity_count()) + " commodities, " +
         std::to_string(m.graph.node_count()) + " nodes, " + std::to_string(m.graph.edge_count()) + " edges, " +
         std::to_string(m.graph.uav_count) + " UAVs\n";
  out += "Maximize\n obj:";
  std::vector<std::pair<std::string, double>> obj;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[static_cast<std::size_t>(j)] != 0.0) obj.emplace_back(m.var_name(j), lp.objective[static_cast<std::size_t>(j)]);
  }
  append_terms(out, obj);
  if (m.objective_constant != 0.0 || obj.empty()) {
    out += m.objective_constant < 0.0 ? " - " : " + ";
    out += num(std::abs(m.objective_constant));
  }
  out += "\nSubject To\n";

  std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(lp.num_rows()));
  for (const lp::Triplet& t : lp.entries) rows[static_cast<std::size_t>(t.row)].emplace_back(t.col, t.value);
  for (int r = 0; r < lp.num_rows(); ++r) {
    auto& entries = rows[static_cast<std::size_t>(r)];
    std::sort(entries.begin(), entries.end());
    std::vector<std::pair<std::string, double>> terms;
    for (const auto& [col, value] : entries) {
      if (!terms.empty() && terms.back().first == m.var_name(col)) {
        terms.back().second += value;
      } else {
        terms.emplace_back(m.var_name(col), value);
      }
    }
    out += " " + m.row_name(r) + ":";
    if (terms.empty()) {
      out += " 0 " + (lp.num_vars() > 0 ? m.var_name(0) : std::string("x_q0"));
    } else {
      append_terms(out, terms);
    }
    const lp::RowSense s = lp.sense[static_cast<std::size_t>(r)];
    out += s == lp::RowSense::less_equal ? " <= " : s == lp::RowSense::equal ? " = " : " >= ";
    out += num(lp.rhs[static_cast<std::size_t>(r)]) + "\n";
  }
  out += "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    out += " " + num(lp.lower[static_cast<std::size_t>(j)]) + " <= " + m.var_name(j) + " <= " +
           num(lp.upper[static_cast<std::size_t>(j)]) + "\n";
  }
  if (!m.binary_edges.empty()) {
    out += "Binaries\n";
    int on_line = 0;
    for (int b = 0; b < static_cast<int>(m.binary_edges.size()); ++b) {
      if (on_line == kTermsPerLine) {
        out += "\n";
        on_line = 0;
      }
      out += " " + m.var_name(m.binary_var(b));
      ++on_line;
    }
    out += "\n";
  }
  out += "End\n";
  return out;
}

LpFile parse_lp(const std::string& text) {
  LpFile f;
  std::set<std::string> seen;
  Section current = Section::none;
  std::string body;
  int body_line = 1;
  bool saw_objective = false;
  bool saw_end = false;

  auto flush = [&](int line_after) {
    TokenStream ts(tokenize(body, body_line));
    switch (current) {
      case Section::objective:
        parse_objective(std::move(ts), f, seen);
        saw_objective = true;
        break;
      case Section::constraints: parse_constraints(std::move(ts), f, seen); break;
      case Section::bounds: parse_bounds(std::move(ts), f, seen); break;
      case Section::binaries:
      case Section::generals:
        while (!ts.done()) {
          const Token t = ts.next();
          if (t.kind != Tok::ident) parse_fail(t.line, "expected a variable name");
          note_variable(f, seen, t.text);
          f.binaries.insert(t.text);
        }
        break;
      case Section::none:
        if (!ts.done()) parse_fail(ts.line(), "content before the objective section");
        break;
      case Section::end:
        if (!ts.done()) parse_fail(ts.line(), "content after End");
        break;
    }
    body.clear();
    body_line = line_after;
  };

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string::npos) stop = text.size();
    std::string line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (const auto c = line.find('\\'); c != std::string::npos) line.erase(c);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool maximize = f.maximize;
    const Section s = section_of(line, maximize);
    if (s != Section::none) {
      flush(line_no + 1);
      if (s == Section::objective) {
        if (saw_objective) parse_fail(line_no, "second objective section");
        f.maximize = maximize;
      }
      if (current == Section::end) parse_fail(line_no, "content after End");
      current = s;
      if (s == Section::end) saw_end = true;
      continue;
    }
    body += line;
    body += '\n';
    if (stop == text.size()) break;
  }
  flush(line_no);
  if (!saw_objective) parse_fail(line_no, "missing objective section");
  if (!saw_end) parse_fail(line_no, "missing End");
  return f;
}

Assignment routing_assignment(const RoutingSolution& s, const LpFile& file) {
  Assignment a;
  const std::set<std::string> known(file.variables.begin(), file.variables.end());
  for (std::size_t e = 0; e < s.activation.size(); ++e) {
    const std::string name = "y_e" + std::to_string(e);
    if (known.count(name)) a[name] = s.activation[e];
  }
  for (const FlowEntry& f : s.flows) {
    a["f_q" + std::to_string(f.q) + "_e" + std::to_string(f.edge)] += f.kbps;
  }
  for (std::size_t q = 0; q < s.supported.size(); ++q) a["x_q" + std::to_string(q)] = s.supported[q];
  return a;
}

VerificationReport verify_assignment(const LpFile& file, const Assignment& values, double tol,
                                     const double* claimed_objective) {
  VerificationReport report;
  auto family = [&](const std::string& name) -> FamilyReport& {
    for (FamilyReport& r : report.families) {
      if (r.family == name) return r;
    }
    report.families.push_back({name, 0.0, 0});
    return report.families.back();
  };
  auto judge = [&](const std::string& fam, const std::string& where, double violation, double scale) {
    FamilyReport& r = family(fam);
    ++r.checked;
    const double v = std::max(0.0, violation);
    r.max_violation = std::max(r.max_violation, v / scale);
    if (v > tol * scale) report.violations.push_back({fam, where, v, tol * scale});
  };
  for (const char* fam : {"unknown_variable", "bounds", "integrality", "conservation", "capacity", "throughput", "rows", "objective"}) {
    family(fam);
  }
  const std::set<std::string> known(file.variables.begin(), file.variables.end());
  auto value = [&](const std::string& name) {
    auto it = values.find(name);
    return it == values.end() ? 0.0 : it->second;
  };
  for (const auto& [name, v] : values) {
    judge("unknown_variable", name, known.count(name) ? 0.0 : std::abs(v) + 1.0, 1.0);
  }
  for (const std::string& name : file.variables) {
    const auto [lo, hi] = file.bounds_of(name);
    const double v = value(name);
    const double scale = std::max({1.0, std::isfinite(lo) ? std::abs(lo) : 0.0, std::isfinite(hi) ? std::abs(hi) : 0.0});
    judge("bounds", name, std::max(lo - v, v - hi), scale);
    if (file.binaries.count(name)) judge("integrality", name, std::abs(v - std::round(v)), 1.0);
  }
  for (const LpFileRow& row : file.rows) {
    double activity = 0.0;
    double scale = std::max(1.0, std::abs(row.rhs));
    double magnitude = 0.0;
    for (const auto& [name, coef] : row.terms) {
      const double v = value(name);
      activity += coef * v;
      magnitude += std::abs(coef) * std::max(1.0, std::abs(v));
    }
    scale = std::max(scale, magnitude);
    double violation = 0.0;
    switch (row.sense) {
      case lp::RowSense::less_equal: violation = activity - row.rhs; break;
      case lp::RowSense::greater_equal: violation = row.rhs - activity; break;
      case lp::RowSense::equal: violation = std::abs(activity - row.rhs); break;
    }
    const std::string fam = row.name.rfind("flow_", 0) == 0  ? "conservation"
                            : row.name.rfind("cap_", 0) == 0 ? "capacity"
                            : row.name.rfind("uav_", 0) == 0 ? "throughput"
                                                             : "rows";
    judge(fam, row.name, violation, scale);
  }
  double objective = file.objective_constant;
  double magnitude = 1.0;
  for (const auto& [name, coef] : file.objective) {
    objective += coef * value(name);
    magnitude += std::abs(coef) * std::max(1.0, std::abs(value(name)));
  }
  report.recomputed_objective = objective;
  if (claimed_objective) judge("objective", "objective", std::abs(objective - *claimed_objective), magnitude);
  report.passed = report.violations.empty();
  return report;
}

}  // namespace uavnet
