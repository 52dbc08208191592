#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "morphocat/error.hpp"
#include "morphocat/operator.hpp"

namespace morphocat {

// g: grammatical, s: semantic, p: property (basic category), f: function
// (derived category).
enum class Sign { G, S, P, F };

inline char sign_char(Sign s) {
  switch (s) {
    case Sign::G: return 'g';
    case Sign::S: return 's';
    case Sign::P: return 'p';
    case Sign::F: return 'f';
  }
  return '?';
}

struct FeatureValue;
struct FeatureStructure;

struct Atomic {
  std::string symbol;
  friend bool operator==(const Atomic&, const Atomic&) = default;
};

// The morphotactic `none`: compatible only with itself or with absence.
struct NoneMarker {
  friend bool operator==(const NoneMarker&, const NoneMarker&) = default;
};

// Sorted, duplicate-free, at least two symbols. Use make_disjunction().
struct Disjunction {
  std::vector<std::string> symbols;
  friend bool operator==(const Disjunction&, const Disjunction&) = default;
};

// Sorted and duplicate-free.
struct RestrList {
  std::vector<std::string> conditions;
  friend bool operator==(const RestrList&, const RestrList&) = default;
};

struct TagRef {
  int id = 0;
  friend bool operator==(const TagRef&, const TagRef&) = default;
};

// A structured value such as has(#2,#1) in a sem.form slot.
struct TermValue {
  std::string head;
  std::vector<FeatureValue> args;
  friend bool operator==(const TermValue& a, const TermValue& b);
};

struct Substructure {
  std::shared_ptr<const FeatureStructure> fs;
  friend bool operator==(const Substructure& a, const Substructure& b);
};

struct FeatureValue {
  using Variant = std::variant<Atomic, NoneMarker, Disjunction, RestrList, TagRef, TermValue,
                               Operator, Substructure>;
  Variant value;

  FeatureValue() : value(NoneMarker{}) {}
  template <typename T,
            typename = std::enable_if_t<std::is_constructible_v<Variant, T&&> &&
                                        !std::is_same_v<std::decay_t<T>, FeatureValue>>>
  FeatureValue(T&& v) : value(std::forward<T>(v)) {}  // NOLINT(google-explicit-constructor)

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(value);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(value);
  }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&value);
  }

  friend bool operator==(const FeatureValue& a, const FeatureValue& b) {
    return a.value == b.value;
  }
};

struct FeatureStructure {
  Sign sign = Sign::G;
  std::map<std::string, FeatureValue> features;

  FeatureStructure() = default;
  explicit FeatureStructure(Sign s) : sign(s) {}
  FeatureStructure(Sign s, std::map<std::string, FeatureValue> f)
      : sign(s), features(std::move(f)) {}

  const FeatureValue* find(const std::string& name) const {
    auto it = features.find(name);
    return it == features.end() ? nullptr : &it->second;
  }
  const FeatureStructure* sub(const std::string& name) const {
    const FeatureValue* v = find(name);
    if (!v) return nullptr;
    const auto* s = v->get_if<Substructure>();
    return s ? s->fs.get() : nullptr;
  }

  friend bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
    return a.sign == b.sign && a.features == b.features;
  }
};

inline bool operator==(const TermValue& a, const TermValue& b) {
  return a.head == b.head && a.args == b.args;
}

inline bool operator==(const Substructure& a, const Substructure& b) {
  if (a.fs == b.fs) return true;
  if (!a.fs || !b.fs) return false;
  return *a.fs == *b.fs;
}

inline FeatureValue atom(std::string s) { return Atomic{std::move(s)}; }
inline FeatureValue none() { return NoneMarker{}; }
inline FeatureValue tag(int id) { return TagRef{id}; }
inline FeatureValue box(FeatureStructure fs) {
  return Substructure{std::make_shared<const FeatureStructure>(std::move(fs))};
}

// Collapses a singleton to Atomic; the empty set is rejected by the caller.
inline FeatureValue make_disjunction(std::vector<std::string> symbols) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  if (symbols.size() == 1) return Atomic{symbols.front()};
  return Disjunction{std::move(symbols)};
}

inline RestrList make_restr(std::vector<std::string> conditions) {
  std::sort(conditions.begin(), conditions.end());
  conditions.erase(std::unique(conditions.begin(), conditions.end()), conditions.end());
  return RestrList{std::move(conditions)};
}

// Collects tag ids; `in_term` marks occurrences nested inside a TermValue.
inline void collect_tags(const FeatureValue& v, std::multimap<int, bool>& out, bool in_term = false);

inline void collect_tags(const FeatureStructure& fs, std::multimap<int, bool>& out) {
  for (const auto& [name, v] : fs.features) collect_tags(v, out, false);
}

inline void collect_tags(const FeatureValue& v, std::multimap<int, bool>& out, bool in_term) {
  if (const auto* t = v.get_if<TagRef>()) {
    out.emplace(t->id, in_term);
  } else if (const auto* tv = v.get_if<TermValue>()) {
    for (const auto& a : tv->args) collect_tags(a, out, true);
  } else if (const auto* s = v.get_if<Substructure>()) {
    if (s->fs) collect_tags(*s->fs, out);
  }
}

inline bool tag_free(const FeatureStructure& fs) {
  std::multimap<int, bool> tags;
  collect_tags(fs, tags);
  return tags.empty();
}

// Rewrites every tag id through `rename`.
template <typename F>
FeatureValue map_tags(const FeatureValue& v, F&& rename);

template <typename F>
FeatureStructure map_tags(const FeatureStructure& fs, F&& rename) {
  FeatureStructure out(fs.sign);
  for (const auto& [name, v] : fs.features) out.features.emplace(name, map_tags(v, rename));
  return out;
}

template <typename F>
FeatureValue map_tags(const FeatureValue& v, F&& rename) {
  if (const auto* t = v.get_if<TagRef>()) return TagRef{rename(t->id)};
  if (const auto* tv = v.get_if<TermValue>()) {
    TermValue out{tv->head, {}};
    for (const auto& a : tv->args) out.args.push_back(map_tags(a, rename));
    return out;
  }
  if (const auto* s = v.get_if<Substructure>()) {
    if (s->fs) return box(map_tags(*s->fs, rename));
  }
  return v;
}

// Unification with a tag environment. A Unifier spans one combination step:
// tags bound while unifying one pair of structures stay bound for every later
// call and for resolve().
class Unifier {
 public:
  std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b) {
    if (a.sign != b.sign)
      throw SignMismatch(std::string("cannot unify ") + sign_char(a.sign) + "-sign with " +
                         sign_char(b.sign) + "-sign");
    return unify_fs(a, b);
  }

  // Substitutes bound tags; unbound tags are left as their representative.
  FeatureStructure resolve(const FeatureStructure& fs) const { return resolve_fs(fs, 0); }
  FeatureValue resolve(const FeatureValue& v) const { return resolve_value(v, 0); }

 private:
  static constexpr int kMaxDepth = 256;

  int root(int id) const {
    for (int guard = 0; guard < kMaxDepth; ++guard) {
      auto it = bindings_.find(id);
      if (it == bindings_.end()) return id;
      const auto* next = it->second.get_if<TagRef>();
      if (!next) return id;
      id = next->id;
    }
    throw Error("cyclic tag aliasing");
  }

  const FeatureValue* bound_value(int root_id) const {
    auto it = bindings_.find(root_id);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  std::optional<FeatureStructure> unify_fs(const FeatureStructure& a, const FeatureStructure& b) {
    if (a.sign != b.sign) return std::nullopt;
    FeatureStructure out(a.sign);
    auto ia = a.features.begin();
    auto ib = b.features.begin();
    while (ia != a.features.end() || ib != b.features.end()) {
      if (ib == b.features.end() || (ia != a.features.end() && ia->first < ib->first)) {
        out.features.emplace(ia->first, ia->second);
        ++ia;
      } else if (ia == a.features.end() || ib->first < ia->first) {
        out.features.emplace(ib->first, ib->second);
        ++ib;
      } else {
        auto v = unify_value(ia->second, ib->second);
        if (!v) return std::nullopt;
        out.features.emplace(ia->first, std::move(*v));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  std::optional<FeatureValue> unify_value(const FeatureValue& a, const FeatureValue& b) {
    if (const auto* ta = a.get_if<TagRef>()) return unify_tag(root(ta->id), b);
    if (const auto* tb = b.get_if<TagRef>()) return unify_tag(root(tb->id), a);
    return unify_plain(a, b);
  }

  std::optional<FeatureValue> unify_tag(int ra, const FeatureValue& other) {
    if (const auto* to = other.get_if<TagRef>()) {
      int rb = root(to->id);
      if (ra == rb) return TagRef{ra};
      const FeatureValue* va = bound_value(ra);
      const FeatureValue* vb = bound_value(rb);
      if (va && vb) {
        auto u = unify_value(*va, *vb);
        if (!u) return std::nullopt;
        bindings_[rb] = std::move(*u);
      } else if (va) {
        bindings_[rb] = *va;
      }
      bindings_[ra] = TagRef{rb};
      return TagRef{rb};
    }
    if (const FeatureValue* va = bound_value(ra)) {
      FeatureValue current = *va;
      auto u = unify_value(current, other);
      if (!u) return std::nullopt;
      bindings_[ra] = std::move(*u);
    } else {
      bindings_[ra] = other;
    }
    return TagRef{ra};
  }

  std::optional<FeatureValue> unify_plain(const FeatureValue& a, const FeatureValue& b) {
    if (a.is<NoneMarker>() || b.is<NoneMarker>()) {
      if (a.is<NoneMarker>() && b.is<NoneMarker>()) return a;
      return std::nullopt;
    }
    if (const auto* x = a.get_if<Atomic>()) {
      if (const auto* y = b.get_if<Atomic>()) {
        if (x->symbol == y->symbol) return a;
        return std::nullopt;
      }
      if (const auto* d = b.get_if<Disjunction>()) return member(*x, *d);
      return std::nullopt;
    }
    if (const auto* d = a.get_if<Disjunction>()) {
      if (const auto* y = b.get_if<Atomic>()) return member(*y, *d);
      if (const auto* e = b.get_if<Disjunction>()) {
        std::vector<std::string> common;
        std::set_intersection(d->symbols.begin(), d->symbols.end(), e->symbols.begin(),
                              e->symbols.end(), std::back_inserter(common));
        if (common.empty()) return std::nullopt;
        return make_disjunction(std::move(common));
      }
      return std::nullopt;
    }
    if (const auto* r = a.get_if<RestrList>()) {
      const auto* s = b.get_if<RestrList>();
      if (!s) return std::nullopt;
      std::vector<std::string> all = r->conditions;
      all.insert(all.end(), s->conditions.begin(), s->conditions.end());
      return make_restr(std::move(all));
    }
    if (const auto* t = a.get_if<TermValue>()) {
      const auto* u = b.get_if<TermValue>();
      if (!u || t->head != u->head || t->args.size() != u->args.size()) return std::nullopt;
      TermValue out{t->head, {}};
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        auto v = unify_value(t->args[i], u->args[i]);
        if (!v) return std::nullopt;
        out.args.push_back(std::move(*v));
      }
      return out;
    }
    if (const auto* o = a.get_if<Operator>()) {
      const auto* p = b.get_if<Operator>();
      if (!p || !(*o == *p)) return std::nullopt;
      return a;
    }
    if (const auto* s = a.get_if<Substructure>()) {
      const auto* t = b.get_if<Substructure>();
      if (!t || !s->fs || !t->fs) return std::nullopt;
      auto u = unify_fs(*s->fs, *t->fs);
      if (!u) return std::nullopt;
      return box(std::move(*u));
    }
    return std::nullopt;
  }

  static std::optional<FeatureValue> member(const Atomic& x, const Disjunction& d) {
    if (std::binary_search(d.symbols.begin(), d.symbols.end(), x.symbol)) return FeatureValue(x);
    return std::nullopt;
  }

  FeatureStructure resolve_fs(const FeatureStructure& fs, int depth) const {
    FeatureStructure out(fs.sign);
    for (const auto& [name, v] : fs.features) out.features.emplace(name, resolve_value(v, depth));
    return out;
  }

  FeatureValue resolve_value(const FeatureValue& v, int depth) const {
    if (depth > kMaxDepth) throw Error("cyclic tag binding");
    if (const auto* t = v.get_if<TagRef>()) {
      int r = root(t->id);
      if (const FeatureValue* b = bound_value(r)) return resolve_value(*b, depth + 1);
      return TagRef{r};
    }
    if (const auto* tv = v.get_if<TermValue>()) {
      TermValue out{tv->head, {}};
      for (const auto& a : tv->args) out.args.push_back(resolve_value(a, depth + 1));
      return out;
    }
    if (const auto* s = v.get_if<Substructure>()) {
      if (s->fs) return box(resolve_fs(*s->fs, depth + 1));
    }
    return v;
  }

  std::map<int, FeatureValue> bindings_;
};

// Most general structure subsumed by both, or nullopt. Throws SignMismatch if
// the top-level signs differ. Inputs are never modified.
inline std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b) {
  Unifier u;
  auto r = u.unify(a, b);
  if (!r) return std::nullopt;
  return u.resolve(*r);
}

// True iff every constraint of `a` is already satisfied by `b`.
inline bool subsumes(const FeatureStructure& a, const FeatureStructure& b) {
  auto u = unify(a, b);  // throws on sign mismatch
  return u && *u == b;
}

// Debug/canonical rendering: [p| sem: [s| form: has(#2,#1)], ...]
inline std::string to_string(const FeatureStructure& fs);

inline std::string to_string(const FeatureValue& v) {
  struct Visitor {
    std::string operator()(const Atomic& a) const { return a.symbol; }
    std::string operator()(const NoneMarker&) const { return "none"; }
    std::string operator()(const Disjunction& d) const {
      std::string out;
      for (const auto& s : d.symbols) out += (out.empty() ? "" : "|") + s;
      return out;
    }
    std::string operator()(const RestrList& r) const {
      std::string out = "<";
      for (std::size_t i = 0; i < r.conditions.size(); ++i)
        out += (i ? "," : "") + r.conditions[i];
      return out + ">";
    }
    std::string operator()(const TagRef& t) const { return "#" + std::to_string(t.id); }
    std::string operator()(const TermValue& t) const {
      std::string out = t.head + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? "," : "") + to_string(t.args[i]);
      return out + ")";
    }
    std::string operator()(const Operator& o) const { return morphocat::to_string(o); }
    std::string operator()(const Substructure& s) const {
      return s.fs ? morphocat::to_string(*s.fs) : "[]";
    }
  };
  return std::visit(Visitor{}, v.value);
}

inline std::string to_string(const FeatureStructure& fs) {
  std::string out = "[";
  out += sign_char(fs.sign);
  out += "|";
  bool first = true;
  for (const auto& [name, v] : fs.features) {
    out += first ? " " : ", ";
    first = false;
    out += name + ": " + to_string(v);
  }
  return out + "]";
}

}  // namespace morphocat
