#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "morphocat/error.hpp"
#include "morphocat/scanner.hpp"

namespace morphocat {

// Untyped lambda terms for semantic composition.
//
//   Var    bound (or free) variable
//   Const  constant / discourse referent (y, z, m, past, ...)
//   Pred   constant-headed predication, name(a1, ..., an), n >= 1
//   Abs    \v.body
//   App    fn(a1, ..., an), n >= 1, fn not a constant
//
// Terms are immutable and share structure.
class Term {
 public:
  enum class Kind { Var, Const, Pred, Abs, App };

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  // Var/Const name, Pred head, Abs parameter.
  const std::string& name() const { return node_->name; }
  // Pred arguments; App arguments.
  const std::vector<Term>& args() const { return node_->args; }
  const Term& body() const { return node_->args.front(); }  // Abs
  const Term& fn() const { return *node_->fn; }             // App

  static Term var(std::string n) { return Term(Kind::Var, std::move(n), {}); }
  static Term constant(std::string n) { return Term(Kind::Const, std::move(n), {}); }
  static Term pred(std::string head, std::vector<Term> args) {
    if (args.empty()) return constant(std::move(head));
    return Term(Kind::Pred, std::move(head), std::move(args));
  }
  static Term abs(std::string param, Term body) {
    return Term(Kind::Abs, std::move(param), {std::move(body)});
  }
  static Term app(Term fn, std::vector<Term> args) {
    if (args.empty()) return fn;
    return Term(std::make_shared<const Node>(
        Node{Kind::App, {}, std::move(args), std::make_shared<const Term>(std::move(fn))}));
  }

  // Structural identity (bound names matter; see alpha_equivalent()).
  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name() || a.args() != b.args()) return false;
    return a.kind() != Kind::App || a.fn() == b.fn();
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::shared_ptr<const Term> fn;
  };

  Term(Kind k, std::string n, std::vector<Term> args)
      : node_(std::make_shared<const Node>(Node{k, std::move(n), std::move(args), nullptr})) {}
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Convenience: \p1.\p2....body
inline Term lambda(const std::vector<std::string>& params, Term body) {
  for (auto it = params.rbegin(); it != params.rend(); ++it) body = Term::abs(*it, std::move(body));
  return body;
}

struct ReductionBudget {
  int max_steps = 10000;
};

namespace detail {

inline void free_vars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      break;
    case Term::Kind::Const:
      break;
    case Term::Kind::Pred:
      for (const auto& a : t.args()) free_vars(a, bound, out);
      break;
    case Term::Kind::Abs: {
      bool inserted = bound.insert(t.name()).second;
      free_vars(t.body(), bound, out);
      if (inserted) bound.erase(t.name());
      break;
    }
    case Term::Kind::App:
      free_vars(t.fn(), bound, out);
      for (const auto& a : t.args()) free_vars(a, bound, out);
      break;
  }
}

inline void all_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() != Term::Kind::Pred) out.insert(t.name());
  if (t.is(Term::Kind::App)) all_names(t.fn(), out);
  for (const auto& a : t.args()) all_names(a, out);
}

}  // namespace detail

inline std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> bound, out;
  detail::free_vars(t, bound, out);
  return out;
}

// Constants in argument position (predicate heads excluded).
inline std::set<std::string> constants(const Term& t) {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const Term& u) -> void {
    if (u.is(Term::Kind::Const)) out.insert(u.name());
    if (u.is(Term::Kind::App)) self(self, u.fn());
    for (const auto& a : u.args()) self(self, a);
  };
  walk(walk, t);
  return out;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base + "'";
  while (avoid.count(n)) n += "'";
  return n;
}

// Capture-avoiding substitution t[v := s].
inline Term substitute(const Term& t, const std::string& v, const Term& s) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == v ? s : t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::Pred: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, v, s));
      return Term::pred(t.name(), std::move(args));
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, v, s));
      return Term::app(substitute(t.fn(), v, s), std::move(args));
    }
    case Term::Kind::Abs: {
      const std::string& p = t.name();
      if (p == v) return t;
      auto body_free = free_variables(t.body());
      if (!body_free.count(v)) return t;
      auto s_free = free_variables(s);
      if (!s_free.count(p)) return Term::abs(p, substitute(t.body(), v, s));
      std::set<std::string> avoid = s_free;
      avoid.insert(body_free.begin(), body_free.end());
      avoid.insert(v);
      std::string q = fresh_name(p, avoid);
      Term renamed = substitute(t.body(), p, Term::var(q));
      return Term::abs(q, substitute(renamed, v, s));
    }
  }
  return t;
}

namespace detail {

// Replaces the leftmost-outermost abstraction among a predicate's arguments
// (descending through nested predicates only) by its application to `arg`.
inline std::optional<Term> fill_hole(const Term& pred, const Term& arg) {
  std::vector<Term> args = pred.args();
  for (auto& a : args) {
    if (a.is(Term::Kind::Abs)) {
      a = Term::app(a, {arg});
      return Term::pred(pred.name(), std::move(args));
    }
    if (a.is(Term::Kind::Pred)) {
      if (auto filled = fill_hole(a, arg)) {
        a = std::move(*filled);
        return Term::pred(pred.name(), std::move(args));
      }
    }
  }
  return std::nullopt;
}

inline Term rest_applied(Term head, const std::vector<Term>& args) {
  std::vector<Term> rest(args.begin() + 1, args.end());
  return Term::app(std::move(head), std::move(rest));
}

// One leftmost-outermost reduction step, or nullopt at normal form.
//
// Applying an abstraction binds its parameter to the first argument; the
// remaining arguments are applied to the result. Applying a predicate fills
// its first embedded abstraction if it has one and otherwise appends the
// argument, so r(y, has(q)) with r = \w.shirt(w) becomes shirt(y, has(q)).
inline std::optional<Term> step(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return std::nullopt;
    case Term::Kind::Abs: {
      auto b = step(t.body());
      if (!b) return std::nullopt;
      return Term::abs(t.name(), std::move(*b));
    }
    case Term::Kind::Pred: {
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (auto r = step(t.args()[i])) {
          std::vector<Term> args = t.args();
          args[i] = std::move(*r);
          return Term::pred(t.name(), std::move(args));
        }
      }
      return std::nullopt;
    }
    case Term::Kind::App: {
      const Term& f = t.fn();
      const auto& args = t.args();
      switch (f.kind()) {
        case Term::Kind::Abs:
          return rest_applied(substitute(f.body(), f.name(), args.front()), args);
        case Term::Kind::App: {
          std::vector<Term> all = f.args();
          all.insert(all.end(), args.begin(), args.end());
          return Term::app(f.fn(), std::move(all));
        }
        case Term::Kind::Const:
          return Term::pred(f.name(), args);
        case Term::Kind::Pred: {
          if (auto filled = fill_hole(f, args.front())) return rest_applied(std::move(*filled), args);
          std::vector<Term> extended = f.args();
          extended.push_back(args.front());
          return rest_applied(Term::pred(f.name(), std::move(extended)), args);
        }
        case Term::Kind::Var:
          break;
      }
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (auto r = step(args[i])) {
          std::vector<Term> next = args;
          next[i] = std::move(*r);
          return Term::app(f, std::move(next));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct Reduction {
  Term term;
  int steps = 0;
};

// Normal-order reduction to beta-normal form; throws ReductionLimit when the
// budget is exhausted.
inline Reduction reduce(Term t, ReductionBudget budget = {}) {
  int steps = 0;
  while (auto next = detail::step(t)) {
    if (++steps > budget.max_steps)
      throw ReductionLimit("beta reduction exceeded " + std::to_string(budget.max_steps) +
                           " steps");
    t = std::move(*next);
  }
  return {std::move(t), steps};
}

inline Term beta_reduce(const Term& t, ReductionBudget budget = {}) {
  return reduce(t, budget).term;
}

inline bool is_beta_normal(const Term& t) { return !detail::step(t).has_value(); }

inline Term apply_sem(const Term& f, const Term& a, ReductionBudget budget = {}) {
  return beta_reduce(Term::app(f, {a}), budget);
}

// \x.f(g(x)) for a fresh x, reduced.
inline Term compose_sem(const Term& f, const Term& g, ReductionBudget budget = {}) {
  std::set<std::string> avoid;
  detail::all_names(f, avoid);
  detail::all_names(g, avoid);
  std::string x = avoid.count("x") ? fresh_name("x", avoid) : "x";
  Term body = Term::app(f, {Term::app(g, {Term::var(x)})});
  return beta_reduce(Term::abs(x, std::move(body)), budget);
}

namespace detail {

inline bool alpha_eq(const Term& a, const Term& b, std::map<std::string, int>& ea,
                     std::map<std::string, int>& eb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto ia = ea.find(a.name());
      auto ib = eb.find(b.name());
      if (ia == ea.end() || ib == eb.end())
        return ia == ea.end() && ib == eb.end() && a.name() == b.name();
      return ia->second == ib->second;
    }
    case Term::Kind::Const:
      return a.name() == b.name();
    case Term::Kind::Pred:
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq(a.args()[i], b.args()[i], ea, eb, depth)) return false;
      return true;
    case Term::Kind::App:
      if (a.args().size() != b.args().size() || !alpha_eq(a.fn(), b.fn(), ea, eb, depth))
        return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq(a.args()[i], b.args()[i], ea, eb, depth)) return false;
      return true;
    case Term::Kind::Abs: {
      auto saved_a = ea.find(a.name()) != ea.end() ? std::optional<int>(ea[a.name()]) : std::nullopt;
      auto saved_b = eb.find(b.name()) != eb.end() ? std::optional<int>(eb[b.name()]) : std::nullopt;
      ea[a.name()] = depth;
      eb[b.name()] = depth;
      bool r = alpha_eq(a.body(), b.body(), ea, eb, depth + 1);
      if (saved_a) ea[a.name()] = *saved_a; else ea.erase(a.name());
      if (saved_b) eb[b.name()] = *saved_b; else eb.erase(b.name());
      return r;
    }
  }
  return false;
}

}  // namespace detail

inline bool alpha_equivalent(const Term& a, const Term& b) {
  std::map<std::string, int> ea, eb;
  return detail::alpha_eq(a, b, ea, eb, 0);
}

// Renames bound variables to x1..xn in binder order (left to right).
inline Term normalize_names(const Term& t) {
  int counter = 0;
  std::set<std::string> reserved = free_variables(t);
  auto collect = [&](auto&& self, const Term& u) -> void {
    if (u.is(Term::Kind::Const) || u.is(Term::Kind::Pred)) reserved.insert(u.name());
    if (u.is(Term::Kind::App)) self(self, u.fn());
    for (const auto& a : u.args()) self(self, a);
  };
  collect(collect, t);
  auto go = [&](auto&& self, const Term& u, const std::map<std::string, std::string>& env) -> Term {
    switch (u.kind()) {
      case Term::Kind::Var: {
        auto it = env.find(u.name());
        return it == env.end() ? u : Term::var(it->second);
      }
      case Term::Kind::Const:
        return u;
      case Term::Kind::Pred: {
        std::vector<Term> args;
        for (const auto& a : u.args()) args.push_back(self(self, a, env));
        return Term::pred(u.name(), std::move(args));
      }
      case Term::Kind::App: {
        std::vector<Term> args;
        Term f = self(self, u.fn(), env);
        for (const auto& a : u.args()) args.push_back(self(self, a, env));
        return Term::app(std::move(f), std::move(args));
      }
      case Term::Kind::Abs: {
        std::string n = "x" + std::to_string(++counter);
        while (reserved.count(n)) n = "x" + std::to_string(++counter);
        auto inner = env;
        inner[u.name()] = n;
        return Term::abs(n, self(self, u.body(), inner));
      }
    }
    return u;
  };
  return go(go, t, {});
}

// \v.body, name(a,b); an abstraction in function position is parenthesized.
inline std::string to_string(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t.name();
    case Term::Kind::Abs:
      return "\\" + t.name() + "." + to_string(t.body());
    case Term::Kind::Pred:
    case Term::Kind::App: {
      std::string out;
      if (t.is(Term::Kind::Pred)) {
        out = t.name();
      } else if (t.fn().is(Term::Kind::Var) || t.fn().is(Term::Kind::Const)) {
        out = t.fn().name();
      } else {
        out = "(" + to_string(t.fn()) + ")";
      }
      out += "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) out += (i ? "," : "") + to_string(t.args()[i]);
      return out + ")";
    }
  }
  return {};
}

// Canonical display: names normalized, compact.
inline std::string display(const Term& t) { return to_string(normalize_names(t)); }

namespace detail {

class TermParser {
 public:
  explicit TermParser(Scanner& s) : s_(s) {}

  Term parse() {
    if (s_.consume("\\") || s_.consume("λ")) {
      std::string v = s_.name("_'");
      if (v.empty()) s_.fail("expected variable after lambda");
      s_.expect(".");
      scope_.push_back(v);
      Term body = parse();
      scope_.pop_back();
      return Term::abs(v, std::move(body));
    }
    return application();
  }

 private:
  bool bound(const std::string& n) const {
    for (const auto& v : scope_)
      if (v == n) return true;
    return false;
  }

  Term application() {
    std::optional<std::string> head;  // unbound name, candidate predicate head
    Term t = Term::constant("");
    if (s_.consume("(")) {
      t = parse();
      s_.expect(")");
    } else {
      std::string n = s_.name("_'");
      if (n.empty()) s_.fail("expected term");
      if (bound(n)) {
        t = Term::var(n);
      } else {
        t = Term::constant(n);
        head = n;
      }
    }
    while (s_.peek() == '(') {
      s_.expect("(");
      std::vector<Term> args;
      args.push_back(parse());
      while (s_.consume(",")) args.push_back(parse());
      s_.expect(")");
      if (head) {
        t = Term::pred(*head, std::move(args));
        head.reset();
      } else {
        t = Term::app(std::move(t), std::move(args));
      }
    }
    return t;
  }

  Scanner& s_;
  std::vector<std::string> scope_;
};

}  // namespace detail

// Reads one term from the scanner. Names not bound by an enclosing lambda are
// constants; a constant followed by an argument list is a predication.
inline Term parse_term(Scanner& s) { return detail::TermParser(s).parse(); }

inline Term parse_term(std::string_view text) {
  Scanner s(text);
  Term t = parse_term(s);
  if (!s.eof()) s.fail("trailing input after term");
  return t;
}

}  // namespace morphocat
