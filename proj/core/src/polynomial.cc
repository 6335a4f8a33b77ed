#include "sosconvex/polynomial.h"

#include <numeric>
#include <stdexcept>
#include <string>

namespace sosconvex {
namespace {

void RequireSameVars(const Polynomial& a, const Polynomial& b,
                     const char* op) {
  if (a.num_vars() != b.num_vars()) {
    throw std::invalid_argument(std::string(op) +
                                ": variable-count mismatch (" +
                                std::to_string(a.num_vars()) + " vs " +
                                std::to_string(b.num_vars()) + ")");
  }
}

}  // namespace

Monomial::Monomial(int num_vars) : exponents_(num_vars, 0) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
}

Monomial::Monomial(std::vector<int> exponents)
    : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
    degree_ += e;
  }
}

Monomial Monomial::Variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) {
    throw std::out_of_range("variable index out of range");
  }
  std::vector<int> e(num_vars, 0);
  e[index] = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (num_vars() != other.num_vars()) {
    throw std::invalid_argument("monomial product: variable-count mismatch");
  }
  Monomial out = *this;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    out.exponents_[i] += other.exponents_[i];
  }
  out.degree_ += other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  // Larger leading exponent sorts first within a degree.
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(),
                                      ea.end());
}

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
}

Polynomial::Polynomial(int num_vars, TermMap terms) : num_vars_(num_vars) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  for (auto& [m, c] : terms) {
    if (m.num_vars() != num_vars) {
      throw std::invalid_argument("term has wrong number of variables");
    }
    if (c != 0) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::Constant(int num_vars, const Scalar& value) {
  Polynomial p(num_vars);
  p.AddTerm(Monomial(num_vars), value);
  return p;
}

Polynomial Polynomial::Variable(int num_vars, int index) {
  Polynomial p(num_vars);
  p.AddTerm(Monomial::Variable(num_vars, index), Scalar(1));
  return p;
}

Polynomial Polynomial::Term(const Scalar& coefficient,
                            const Monomial& monomial) {
  Polynomial p(monomial.num_vars());
  p.AddTerm(monomial, coefficient);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::AddTerm(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  RequireSameVars(*this, other, "add");
  for (const auto& [m, c] : other.terms_) AddTerm(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  RequireSameVars(*this, other, "subtract");
  for (const auto& [m, c] : other.terms_) AddTerm(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  RequireSameVars(a, b, "mul");
  Polynomial out(a.num_vars());
  Scalar prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.AddTerm(ma * mb, prod);
    }
  }
  return out;
}

Polynomial Pow(const Polynomial& p, int k) {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial result = Polynomial::Constant(p.num_vars(), Scalar(1));
  Polynomial base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Scalar Evaluate(const Polynomial& p, std::span<const Scalar> point) {
  if (static_cast<int>(point.size()) != p.num_vars()) {
    throw std::invalid_argument("evaluate: point has " +
                                std::to_string(point.size()) +
                                " coordinates, polynomial has " +
                                std::to_string(p.num_vars()) + " variables");
  }
  // Powers are cached per variable up to the largest exponent seen.
  std::vector<std::vector<Scalar>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) powers[i].push_back(1);
  Scalar total = 0;
  Scalar term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (int i = 0; i < m.num_vars(); ++i) {
      const int e = m[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * point[i]);
      term *= pw[e];
    }
    total += term;
  }
  return total;
}

Polynomial Differentiate(const Polynomial& p, int var_index) {
  if (var_index < 0 || var_index >= p.num_vars()) {
    throw std::out_of_range("differentiate: variable index " +
                            std::to_string(var_index) + " out of range");
  }
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    const int e = m[var_index];
    if (e == 0) continue;
    std::vector<int> exps = m.exponents();
    exps[var_index] = e - 1;
    terms.emplace(Monomial(std::move(exps)), c * e);
  }
  return Polynomial(p.num_vars(), std::move(terms));
}

std::vector<Polynomial> Gradient(const Polynomial& p) {
  std::vector<Polynomial> g;
  g.reserve(p.num_vars());
  for (int i = 0; i < p.num_vars(); ++i) g.push_back(Differentiate(p, i));
  return g;
}

Polynomial Substitute(const Polynomial& p,
                      std::span<const Polynomial> assignments) {
  if (static_cast<int>(assignments.size()) != p.num_vars()) {
    throw std::invalid_argument("substitute: expected " +
                                std::to_string(p.num_vars()) +
                                " assignments, got " +
                                std::to_string(assignments.size()));
  }
  int target_vars = 0;
  if (!assignments.empty()) {
    target_vars = assignments[0].num_vars();
    for (const auto& a : assignments) {
      if (a.num_vars() != target_vars) {
        throw std::invalid_argument(
            "substitute: assignments use different variable sets");
      }
    }
  }
  std::vector<std::vector<Polynomial>> powers(assignments.size());
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    powers[i].push_back(Polynomial::Constant(target_vars, Scalar(1)));
  }
  Polynomial out(target_vars);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::Constant(target_vars, c);
    for (int i = 0; i < m.num_vars(); ++i) {
      const int e = m[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e) {
        pw.push_back(pw.back() * assignments[i]);
      }
      term = term * pw[e];
    }
    out += term;
  }
  return out;
}

Polynomial Homogenize(const Polynomial& p, int target_degree) {
  if (target_degree < p.degree()) {
    throw std::invalid_argument("homogenize: target degree " +
                                std::to_string(target_degree) +
                                " below polynomial degree " +
                                std::to_string(p.degree()));
  }
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> exps = m.exponents();
    exps.push_back(target_degree - m.degree());
    terms.emplace(Monomial(std::move(exps)), c);
  }
  return Polynomial(p.num_vars() + 1, std::move(terms));
}

Polynomial Dehomogenize(const Polynomial& p, int var_index,
                        const Scalar& value) {
  if (var_index < 0 || var_index >= p.num_vars()) {
    throw std::out_of_range("dehomogenize: variable index " +
                            std::to_string(var_index) + " out of range");
  }
  const int n = p.num_vars() - 1;
  std::vector<Polynomial> assignments;
  assignments.reserve(p.num_vars());
  for (int i = 0, k = 0; i < p.num_vars(); ++i) {
    if (i == var_index) {
      assignments.push_back(Polynomial::Constant(n, value));
    } else {
      assignments.push_back(Polynomial::Variable(n, k++));
    }
  }
  return Substitute(p, assignments);
}

Polynomial IntegrateFirstVariableTwice(const Polynomial& m) {
  if (m.num_vars() < 1) {
    throw std::invalid_argument("integration needs at least one variable");
  }
  Polynomial::TermMap terms;
  for (const auto& [mono, c] : m.terms()) {
    std::vector<int> exps = mono.exponents();
    const int k = exps[0];
    exps[0] = k + 2;
    terms.emplace(Monomial(std::move(exps)), c / ((k + 1) * (k + 2)));
  }
  return Polynomial(m.num_vars(), std::move(terms));
}

Polynomial Embed(const Polynomial& p, int new_num_vars, int offset) {
  if (offset < 0 || offset + p.num_vars() > new_num_vars) {
    throw std::invalid_argument("embed: target variable range too small");
  }
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> exps(new_num_vars, 0);
    for (int i = 0; i < m.num_vars(); ++i) exps[offset + i] = m[i];
    terms.emplace(Monomial(std::move(exps)), c);
  }
  return Polynomial(new_num_vars, std::move(terms));
}

Scalar MaxAbsCoefficient(const Polynomial& p) {
  Scalar best = 0;
  for (const auto& [m, c] : p.terms()) {
    if (abs(c) > best) best = abs(c);
  }
  return best;
}

}  // namespace sosconvex
