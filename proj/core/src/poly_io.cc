#include "sosconvex/poly_io.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace sosconvex {
namespace {

std::string MonomialTuple(const Monomial& m) {
  std::string s = "(";
  for (int i = 0; i < m.num_vars(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(m[i]);
  }
  return s + ")";
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r') {
      current += ch;
    }
  }
  if (!current.empty()) lines.push_back(current);
  // Trim and drop blanks and comments.
  std::vector<std::string> out;
  for (auto& l : lines) {
    auto b = l.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = l.find_last_not_of(" \t");
    std::string t = l.substr(b, e - b + 1);
    if (t[0] == '#') continue;
    out.push_back(t);
  }
  return out;
}

int ParseHeaderInt(const std::string& line, const std::string& key) {
  auto pos = line.find(key + "=");
  if (pos == std::string::npos) {
    throw ParseError("missing '" + key + "=' in header: " + line);
  }
  std::size_t idx = pos + key.size() + 1;
  std::size_t end = idx;
  while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) {
    ++end;
  }
  if (end == idx) throw ParseError("bad integer for '" + key + "': " + line);
  return std::stoi(line.substr(idx, end - idx));
}

std::pair<Monomial, Scalar> ParseTermLine(const std::string& line,
                                          int num_vars) {
  if (line.empty() || line[0] != '(') {
    throw ParseError("expected '(' at start of term: " + line);
  }
  auto close = line.find(')');
  if (close == std::string::npos) throw ParseError("unterminated tuple: " + line);
  std::vector<int> exps;
  std::string inner = line.substr(1, close - 1);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789 ") != std::string::npos) {
      throw ParseError("bad exponent in: " + line);
    }
    exps.push_back(std::stoi(item));
  }
  if (inner.empty()) exps.clear();
  if (static_cast<int>(exps.size()) != num_vars) {
    throw ParseError("tuple length does not match nvars: " + line);
  }
  Scalar c;
  try {
    c = ParseScalar(line.substr(close + 1));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad coefficient: ") + e.what());
  }
  return {Monomial(std::move(exps)), c};
}

Polynomial ParseTermBlock(const std::vector<std::string>& lines,
                          std::size_t& pos, int num_vars) {
  Polynomial::TermMap terms;
  while (pos < lines.size() && lines[pos][0] == '(') {
    auto [m, c] = ParseTermLine(lines[pos], num_vars);
    if (c == 0) throw ParseError("zero coefficient stored: " + lines[pos]);
    if (!terms.emplace(m, c).second) {
      throw ParseError("duplicate monomial: " + lines[pos]);
    }
    ++pos;
  }
  return Polynomial(num_vars, std::move(terms));
}

// Recursive-descent infix parser.
class InfixParser {
 public:
  InfixParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  Polynomial Parse() {
    Polynomial p = Expr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char Peek() {
    SkipSpace();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int NumVars() const { return static_cast<int>(names_.size()); }

  Polynomial Expr() {
    Polynomial acc = Term();
    for (;;) {
      char c = Peek();
      if (c == '+') {
        ++pos_;
        acc += Term();
      } else if (c == '-') {
        ++pos_;
        acc -= Term();
      } else {
        return acc;
      }
    }
  }

  bool StartsFactor(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  Polynomial Term() {
    Polynomial acc = Unary();
    for (;;) {
      char c = Peek();
      if (c == '*') {
        ++pos_;
        acc = acc * Unary();
      } else if (c == '/') {
        ++pos_;
        SkipSpace();
        Scalar d = Integer();
        if (d == 0) Fail("division by zero");
        acc *= Scalar(1) / d;
      } else if (StartsFactor(c)) {
        acc = acc * Power();
      } else {
        return acc;
      }
    }
  }

  Polynomial Unary() {
    char c = Peek();
    if (c == '-') {
      ++pos_;
      return -Unary();
    }
    if (c == '+') {
      ++pos_;
      return Unary();
    }
    return Power();
  }

  Polynomial Power() {
    Polynomial base = Atom();
    if (Peek() == '^') {
      ++pos_;
      SkipSpace();
      Scalar e = Integer();
      if (e < 0 || e > 1000) Fail("bad exponent");
      base = Pow(base, static_cast<int>(e.get_num().get_si()));
    }
    return base;
  }

  Scalar Integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) Fail("expected integer");
    return ParseScalar(text_.substr(start, pos_ - start));
  }

  Polynomial Atom() {
    char c = Peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = Expr();
      if (Peek() != ')') Fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Scalar v = Integer();
      // A slash directly followed by digits belongs to the literal.
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        Scalar d = Integer();
        if (d == 0) Fail("zero denominator");
        v /= d;
      }
      return Polynomial::Constant(NumVars(), v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      name.erase(std::remove(name.begin(), name.end(), '_'), name.end());
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) Fail("unknown variable '" + name + "'");
      return Polynomial::Variable(NumVars(),
                                  static_cast<int>(it - names_.begin()));
    }
    Fail("expected a number, variable or '('");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> StandardVariableNames(int num_x, int num_y) {
  std::vector<std::string> names;
  for (int i = 1; i <= num_x; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= num_y; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

std::string Serialize(const Polynomial& p) {
  std::string out = "polynomial nvars=" + std::to_string(p.num_vars()) + "\n";
  for (const auto& [m, c] : p.terms()) {
    out += MonomialTuple(m) + " " + ToFractionString(c) + "\n";
  }
  return out;
}

std::string Serialize(const PolyMatrix& m) {
  std::string out = "polymatrix dim=" + std::to_string(m.dim()) +
                    " nvars=" + std::to_string(m.num_vars()) + "\n";
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = i; j < m.dim(); ++j) {
      out += "entry " + std::to_string(i) + " " + std::to_string(j) + "\n";
      for (const auto& [mono, c] : m(i, j).terms()) {
        out += MonomialTuple(mono) + " " + ToFractionString(c) + "\n";
      }
    }
  }
  return out;
}

Polynomial DeserializePolynomial(std::string_view text) {
  auto lines = SplitLines(text);
  if (lines.empty() || lines[0].rfind("polynomial", 0) != 0) {
    throw ParseError("expected 'polynomial nvars=N' header");
  }
  const int n = ParseHeaderInt(lines[0], "nvars");
  std::size_t pos = 1;
  Polynomial p = ParseTermBlock(lines, pos, n);
  if (pos != lines.size()) throw ParseError("trailing content: " + lines[pos]);
  return p;
}

PolyMatrix DeserializePolyMatrix(std::string_view text) {
  auto lines = SplitLines(text);
  if (lines.empty() || lines[0].rfind("polymatrix", 0) != 0) {
    throw ParseError("expected 'polymatrix dim=D nvars=N' header");
  }
  const int dim = ParseHeaderInt(lines[0], "dim");
  const int n = ParseHeaderInt(lines[0], "nvars");
  if (dim <= 0) throw ParseError("matrix dimension must be positive");
  std::vector<Polynomial> e(dim * dim, Polynomial(n));
  std::size_t pos = 1;
  while (pos < lines.size()) {
    std::istringstream hdr(lines[pos]);
    std::string word;
    int i = -1, j = -1;
    if (!(hdr >> word >> i >> j) || word != "entry" || i < 0 || j < i ||
        j >= dim) {
      throw ParseError("bad entry header: " + lines[pos]);
    }
    ++pos;
    Polynomial entry = ParseTermBlock(lines, pos, n);
    e[i * dim + j] = entry;
    e[j * dim + i] = entry;
  }
  return PolyMatrix(dim, std::move(e));
}

Polynomial ParseInfix(std::string_view text,
                      const std::vector<std::string>& names) {
  return InfixParser(text, names).Parse();
}

Polynomial ParseInfix(std::string_view text, int min_x, int min_y) {
  int max_x = min_x, max_y = min_y;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == 'x' || c == 'y') &&
        (i == 0 || !(std::isalpha(static_cast<unsigned char>(text[i - 1])) ||
                     text[i - 1] == '_'))) {
      std::size_t j = i + 1;
      if (j < text.size() && text[j] == '_') ++j;
      std::size_t start = j;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j == start) continue;
      int idx = std::stoi(std::string(text.substr(start, j - start)));
      if (c == 'x') {
        max_x = std::max(max_x, idx);
      } else {
        max_y = std::max(max_y, idx);
      }
    }
  }
  return ParseInfix(text, StandardVariableNames(max_x, max_y));
}

Polynomial ParsePolynomial(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos &&
      text.substr(first).rfind("polynomial", 0) == 0) {
    return DeserializePolynomial(text);
  }
  return ParseInfix(text);
}

std::string ToInfix(const Polynomial& p, const std::vector<std::string>& names) {
  std::vector<std::string> vn = names;
  if (vn.empty()) vn = StandardVariableNames(p.num_vars());
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Highest degree first reads naturally; graded-lex order within a degree.
  std::vector<std::pair<Monomial, Scalar>> terms(p.terms().begin(),
                                                 p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.first.degree() > b.first.degree();
  });
  for (const auto& [m, c] : terms) {
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < m.num_vars(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vn[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += ToDisplayString(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += ToDisplayString(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace sosconvex
