#include "fodist/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>

namespace fodist {

Formula Formula::adj(int x, int y) {
  if (x < 0 || y < 0) throw std::invalid_argument("negative variable index");
  return Formula(Kind::Adj, x, y, {});
}

Formula Formula::eq(int x, int y) {
  if (x < 0 || y < 0) throw std::invalid_argument("negative variable index");
  return Formula(Kind::Eq, x, y, {});
}

Formula Formula::negate(Formula f) {
  std::vector<Formula> kids;
  kids.push_back(std::move(f));
  return Formula(Kind::Not, -1, -1, std::move(kids));
}

Formula Formula::conj(std::vector<Formula> parts) { return Formula(Kind::And, -1, -1, std::move(parts)); }
Formula Formula::disj(std::vector<Formula> parts) { return Formula(Kind::Or, -1, -1, std::move(parts)); }

Formula Formula::exists(int var, Formula body) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  std::vector<Formula> kids;
  kids.push_back(std::move(body));
  return Formula(Kind::Exists, var, -1, std::move(kids));
}

Formula Formula::forall(int var, Formula body) {
  if (var < 0) throw std::invalid_argument("negative variable index");
  std::vector<Formula> kids;
  kids.push_back(std::move(body));
  return Formula(Kind::Forall, var, -1, std::move(kids));
}

int quantifier_rank(const Formula& f) {
  int best = 0;
  for (const auto& k : f.children()) best = std::max(best, quantifier_rank(k));
  return f.is_quantifier() ? best + 1 : best;
}

namespace {

QuantSeq flipped(const QuantSeq& s) {
  QuantSeq out = s;
  for (char& c : out) c = c == 'E' ? 'A' : 'E';
  return out;
}

}  // namespace

std::set<QuantSeq> nest_sequences(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Adj:
    case K::Eq:
      return {QuantSeq{}};
    case K::Not: {
      std::set<QuantSeq> out;
      for (const auto& s : nest_sequences(f.body())) out.insert(flipped(s));
      return out;
    }
    case K::And:
    case K::Or: {
      // Constants have no atoms; treat them like atoms so the set is never empty.
      if (f.children().empty()) return {QuantSeq{}};
      std::set<QuantSeq> out;
      for (const auto& k : f.children()) out.merge(nest_sequences(k));
      return out;
    }
    case K::Exists:
    case K::Forall: {
      const char q = f.kind() == K::Exists ? 'E' : 'A';
      std::set<QuantSeq> out;
      for (const auto& s : nest_sequences(f.body())) out.insert(q + s);
      return out;
    }
  }
  return {};
}

int alternations(const QuantSeq& s) {
  int count = 0;
  for (std::size_t i = 1; i < s.size(); ++i) count += s[i] != s[i - 1] ? 1 : 0;
  return count;
}

namespace {

// For each possible first letter of a nest sequence (E, A, or the empty word)
// the maximum alternation count, or -1 when no sequence starts that way.
struct AltProfile {
  int starts_e = -1;
  int starts_a = -1;
  int empty = -1;
};

AltProfile alt_profile(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Adj:
    case K::Eq:
      return {-1, -1, 0};
    case K::Not: {
      AltProfile p = alt_profile(f.body());
      std::swap(p.starts_e, p.starts_a);
      return p;
    }
    case K::And:
    case K::Or: {
      if (f.children().empty()) return {-1, -1, 0};
      AltProfile out;
      for (const auto& k : f.children()) {
        AltProfile p = alt_profile(k);
        out.starts_e = std::max(out.starts_e, p.starts_e);
        out.starts_a = std::max(out.starts_a, p.starts_a);
        out.empty = std::max(out.empty, p.empty);
      }
      return out;
    }
    case K::Exists:
    case K::Forall: {
      AltProfile p = alt_profile(f.body());
      const bool e = f.kind() == K::Exists;
      int same = e ? p.starts_e : p.starts_a;
      int other = e ? p.starts_a : p.starts_e;
      int best = std::max({same, other >= 0 ? other + 1 : -1, p.empty});
      return e ? AltProfile{best, -1, -1} : AltProfile{-1, best, -1};
    }
  }
  return {};
}

void collect_vars(const Formula& f, std::set<int>& bound_here, std::set<int>& free_out, std::set<int>& bound_out) {
  if (f.is_atom()) {
    for (int v : {f.lhs(), f.rhs()})
      if (!bound_here.contains(v)) free_out.insert(v);
    return;
  }
  if (f.is_quantifier()) {
    bound_out.insert(f.var());
    const bool fresh = bound_here.insert(f.var()).second;
    collect_vars(f.body(), bound_here, free_out, bound_out);
    if (fresh) bound_here.erase(f.var());
    return;
  }
  for (const auto& k : f.children()) collect_vars(k, bound_here, free_out, bound_out);
}

int max_variable(const Formula& f) {
  int m = -1;
  if (f.is_atom()) m = std::max(f.lhs(), f.rhs());
  if (f.is_quantifier()) m = f.var();
  for (const auto& k : f.children()) m = std::max(m, max_variable(k));
  return m;
}

bool eval_rec(const Formula& f, const Graph& g, std::vector<int>& asg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Adj:
      return g.adjacent(asg[f.lhs()], asg[f.rhs()]);
    case K::Eq:
      return asg[f.lhs()] == asg[f.rhs()];
    case K::Not:
      return !eval_rec(f.body(), g, asg);
    case K::And:
      for (const auto& k : f.children())
        if (!eval_rec(k, g, asg)) return false;
      return true;
    case K::Or:
      for (const auto& k : f.children())
        if (eval_rec(k, g, asg)) return true;
      return false;
    case K::Exists:
    case K::Forall: {
      const bool want = f.kind() == K::Exists;
      const int saved = asg[f.var()];
      bool result = !want;
      for (int v = 0; v < g.order(); ++v) {
        asg[f.var()] = v;
        if (eval_rec(f.body(), g, asg) == want) {
          result = want;
          break;
        }
      }
      asg[f.var()] = saved;
      return result;
    }
  }
  return false;
}

}  // namespace

int alternation_number(const Formula& f) {
  AltProfile p = alt_profile(f);
  return std::max({p.starts_e, p.starts_a, p.empty, 0});
}

std::set<int> free_variables(const Formula& f) {
  std::set<int> here, free_out, bound_out;
  collect_vars(f, here, free_out, bound_out);
  return free_out;
}

std::set<int> bound_variables(const Formula& f) {
  std::set<int> here, free_out, bound_out;
  collect_vars(f, here, free_out, bound_out);
  return bound_out;
}

std::size_t node_count(const Formula& f) {
  std::size_t c = 1;
  for (const auto& k : f.children()) c += node_count(k);
  return c;
}

bool evaluate(const Formula& f, const Graph& g) {
  if (!free_variables(f).empty()) throw std::invalid_argument("evaluate: formula has free variables");
  std::vector<int> asg(static_cast<std::size_t>(max_variable(f) + 1), -1);
  return eval_rec(f, g, asg);
}

bool evaluate(const Formula& f, const Graph& g, std::span<const int> assignment) {
  std::vector<int> asg(assignment.begin(), assignment.end());
  const int need = max_variable(f) + 1;
  if (static_cast<int>(asg.size()) < need) asg.resize(static_cast<std::size_t>(need), -1);
  for (int v : free_variables(f)) {
    if (asg[v] < 0 || asg[v] >= g.order()) throw std::invalid_argument("evaluate: free variable unassigned");
  }
  return eval_rec(f, g, asg);
}

Formula negation_normal_form(const Formula& f) {
  using K = Formula::Kind;
  auto nnf = [](auto&& self, const Formula& x, bool negated) -> Formula {
    switch (x.kind()) {
      case K::Adj:
      case K::Eq:
        return negated ? Formula::negate(x) : x;
      case K::Not:
        return self(self, x.body(), !negated);
      case K::And:
      case K::Or: {
        std::vector<Formula> parts;
        for (const auto& k : x.children()) parts.push_back(self(self, k, negated));
        const bool is_and = (x.kind() == K::And) != negated;
        return is_and ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
      }
      case K::Exists:
      case K::Forall: {
        Formula body = self(self, x.body(), negated);
        const bool is_exists = (x.kind() == K::Exists) != negated;
        return is_exists ? Formula::exists(x.var(), std::move(body)) : Formula::forall(x.var(), std::move(body));
      }
    }
    return x;
  };
  return nnf(nnf, f, false);
}

namespace {

std::vector<Formula> diagram(const Graph& g) {
  const int n = g.order();
  std::vector<Formula> parts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) parts.push_back(Formula::negate(Formula::eq(i, j)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Formula a = Formula::adj(i, j);
      parts.push_back(g.adjacent(i, j) ? a : Formula::negate(a));
    }
  }
  return parts;
}

Formula wrap_exists(int n, Formula body) {
  for (int i = n - 1; i >= 0; --i) body = Formula::exists(i, std::move(body));
  return body;
}

}  // namespace

Formula canonical_distinguishing_formula(const Graph& g) {
  return wrap_exists(g.order(), Formula::conj(diagram(g)));
}

Formula canonical_defining_formula(const Graph& g) {
  const int n = g.order();
  std::vector<Formula> cover;
  for (int i = 0; i < n; ++i) cover.push_back(Formula::eq(n, i));
  std::vector<Formula> parts = diagram(g);
  parts.push_back(Formula::forall(n, Formula::disj(std::move(cover))));
  return wrap_exists(n, Formula::conj(std::move(parts)));
}

Formula reduce_variables(const Formula& f) {
  const std::set<int> free = free_variables(f);
  const int rank = quantifier_rank(f);
  std::vector<int> pool;  // pool[j-1] is the name used at a quantifier of rank j
  for (int v = 0; static_cast<int>(pool.size()) < rank; ++v)
    if (!free.contains(v)) pool.push_back(v);

  auto rename = [&](auto&& self, const Formula& x, std::map<int, int>& names) -> Formula {
    using K = Formula::Kind;
    auto name_of = [&](int v) {
      auto it = names.find(v);
      return it == names.end() ? v : it->second;
    };
    switch (x.kind()) {
      case K::Adj:
        return Formula::adj(name_of(x.lhs()), name_of(x.rhs()));
      case K::Eq:
        return Formula::eq(name_of(x.lhs()), name_of(x.rhs()));
      case K::Not:
        return Formula::negate(self(self, x.body(), names));
      case K::And:
      case K::Or: {
        std::vector<Formula> parts;
        for (const auto& k : x.children()) parts.push_back(self(self, k, names));
        return x.kind() == K::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
      }
      case K::Exists:
      case K::Forall: {
        const int name = pool[static_cast<std::size_t>(quantifier_rank(x) - 1)];
        std::optional<int> previous;
        if (auto it = names.find(x.var()); it != names.end()) previous = it->second;
        names[x.var()] = name;
        Formula body = self(self, x.body(), names);
        if (previous) {
          names[x.var()] = *previous;
        } else {
          names.erase(x.var());
        }
        return x.kind() == K::Exists ? Formula::exists(name, std::move(body)) : Formula::forall(name, std::move(body));
      }
    }
    return x;
  };
  std::map<int, int> names;
  return rename(rename, f, names);
}

// ------------------------------------------------------------ text form

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  auto var = [](int v) { return "x" + std::to_string(v + 1); };
  switch (f.kind()) {
    case K::Adj:
      return "(E " + var(f.lhs()) + " " + var(f.rhs()) + ")";
    case K::Eq:
      return "(= " + var(f.lhs()) + " " + var(f.rhs()) + ")";
    case K::Not:
      return "(not " + to_string(f.body()) + ")";
    case K::And:
    case K::Or: {
      std::string out = f.kind() == K::And ? "(and" : "(or";
      for (const auto& k : f.children()) out += " " + to_string(k);
      return out + ")";
    }
    case K::Exists:
    case K::Forall:
      return std::string(f.kind() == K::Exists ? "(exists " : "(forall ") + var(f.var()) + " " +
             to_string(f.body()) + ")";
  }
  return {};
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("formula: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a symbol");
    return std::string(text_.substr(start, pos_ - start));
  }

  int variable() {
    std::string w = word();
    int idx = 0;
    if (w.size() < 2 || w[0] != 'x') fail("expected a variable like x1");
    auto [ptr, ec] = std::from_chars(w.data() + 1, w.data() + w.size(), idx);
    if (ec != std::errc() || ptr != w.data() + w.size() || idx < 1) fail("bad variable '" + w + "'");
    return idx - 1;
  }

  Formula parse_formula() {
    expect('(');
    const std::string head = word();
    Formula out = Formula::truth();
    if (head == "E" || head == "=") {
      int a = variable();
      int b = variable();
      out = head == "E" ? Formula::adj(a, b) : Formula::eq(a, b);
    } else if (head == "not") {
      out = Formula::negate(parse_formula());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> parts;
      while (!peek(')')) parts.push_back(parse_formula());
      out = head == "and" ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    } else if (head == "exists" || head == "forall") {
      int v = variable();
      Formula body = parse_formula();
      out = head == "exists" ? Formula::exists(v, std::move(body)) : Formula::forall(v, std::move(body));
    } else {
      fail("unknown head '" + head + "'");
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace fodist
