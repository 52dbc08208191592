#pragma once

#include <atomic>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "morphocat/category.hpp"
#include "morphocat/error.hpp"
#include "morphocat/feature_structure.hpp"
#include "morphocat/lambda.hpp"
#include "morphocat/morphophonology.hpp"
#include "morphocat/scanner.hpp"

namespace morphocat {

struct LexEntry {
  std::string key;  // citation form in meta-phoneme spelling: lH, DHr, (y)A
  PhonTemplate phon;
  Category cat;
  Term sem = Term::constant("?");
  std::string gloss;
  int line = 0;
  int column = 0;
  int cat_line = 0;  // position of the category, for diagnostics
  int cat_column = 0;

  // The outermost operator; nullopt for basic categories.
  std::optional<Operator> outer_op() const {
    if (!cat.is_functor()) return std::nullopt;
    return cat.op();
  }
  // A bound morpheme fused with its host: affixes and reduplicants.
  bool is_affixal() const {
    auto op = outer_op();
    return op && op->morpheme == MorphemeType::Bound && op->fuses();
  }

  friend bool operator==(const LexEntry& a, const LexEntry& b) {
    return a.key == b.key && a.phon == b.phon && a.cat == b.cat && a.sem == b.sem &&
           a.gloss == b.gloss;
  }
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  int line = 0;
  int column = 0;
  std::string message;
};

inline std::string to_string(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         (d.severity == Severity::Error ? "error" : "warning") + ": " + d.message;
}

struct ValidationOptions {
  // Constants an entry may mention in argument position without a warning.
  std::set<std::string> referents = {"y", "z", "m", "past"};
};

// Fresh tag ids and variable names, unique across every use.
class Freshener {
 public:
  int next_tag() { return ++tags_; }
  int next_var() { return ++vars_; }

  static Freshener& global() {
    static Freshener instance;
    return instance;
  }

 private:
  std::atomic<int> tags_{1000};
  std::atomic<int> vars_{0};
};

namespace detail {

inline void check_vocabulary(const FeatureStructure& fs, const std::string& where,
                             std::vector<std::string>& errors) {
  auto check = [&](const std::set<std::string>& allowed, const FeatureStructure& s,
                   const std::string& at) {
    for (const auto& [name, v] : s.features)
      if (!allowed.count(name)) errors.push_back("unknown feature '" + name + "' in " + at);
  };
  switch (fs.sign) {
    case Sign::P: {
      check(vocabulary::p_sign, fs, where);
      if (const auto* syn = fs.sub("syn")) {
        check(vocabulary::g_sign, *syn, where + ".syn");
        if (const auto* np = syn->sub("nprop")) check(vocabulary::nprop, *np, where + ".syn.nprop");
        if (const auto* vp = syn->sub("vprop")) check(vocabulary::vprop, *vp, where + ".syn.vprop");
      } else if (fs.find("syn")) {
        errors.push_back("syn of " + where + " must be a g-sign structure");
      }
      if (const auto* sem = fs.sub("sem")) {
        if (sem->sign != Sign::S) errors.push_back("sem of " + where + " must be an s-sign structure");
        check(vocabulary::s_sign, *sem, where + ".sem");
      }
      break;
    }
    case Sign::F: {
      check(vocabulary::f_sign, fs, where);
      for (const char* part : {"res", "arg"}) {
        const auto* s = fs.sub(part);
        if (!s || (s->sign != Sign::P && s->sign != Sign::F))
          errors.push_back(std::string(part) + " of " + where + " must be a p- or f-sign structure");
        else
          check_vocabulary(*s, where + "." + part, errors);
      }
      const FeatureValue* op = fs.find("op");
      if (!op || !op->is<Operator>()) {
        errors.push_back("functor " + where + " must carry exactly one operator");
      } else {
        for (const auto& v : operator_violations(op->as<Operator>()))
          errors.push_back("operator " + to_string(op->as<Operator>()) + " at " + where + ": " + v);
      }
      break;
    }
    default:
      errors.push_back("category must be a p- or f-sign structure");
  }
}

}  // namespace detail

// Lexicon-level well-formedness of a single entry.
inline std::vector<Diagnostic> validate_entry(const LexEntry& e, const ValidationOptions& opts = {}) {
  std::vector<Diagnostic> out;
  auto add_at = [&](int line, int column, Severity s, std::string msg) {
    out.push_back({s, line, column, "entry '" + e.key + "': " + std::move(msg)});
  };
  auto add = [&](Severity s, std::string msg) { add_at(e.line, e.column, s, std::move(msg)); };
  int cl = e.cat_line ? e.cat_line : e.line, cc = e.cat_line ? e.cat_column : e.column;

  std::vector<std::string> errors;
  detail::check_vocabulary(e.cat.fs(), "cat", errors);
  for (auto& m : errors) add_at(cl, cc, Severity::Error, std::move(m));

  std::multimap<int, bool> tags;
  collect_tags(e.cat.fs(), tags);
  std::set<int> ids;
  for (const auto& [id, in_term] : tags) ids.insert(id);
  for (int id : ids) {
    auto [lo, hi] = tags.equal_range(id);
    bool defined = false;
    for (auto it = lo; it != hi; ++it) defined = defined || !it->second;
    if (!defined) add_at(cl, cc, Severity::Error, "dangling tag #" + std::to_string(id));
    else if (tags.count(id) == 1) add_at(cl, cc, Severity::Warning, "unshared tag #" + std::to_string(id));
  }

  if (e.phon.segments.empty()) add(Severity::Error, "empty phon template");
  for (const auto& s : e.phon.segments)
    if (const auto* g = std::get_if<OptionalGroup>(&s); g && g->segments.empty())
      add(Severity::Error, "empty optional segment in phon template");

  for (const auto& v : free_variables(e.sem)) add(Severity::Error, "free variable '" + v + "' in sem");
  for (const auto& c : constants(e.sem))
    if (!opts.referents.count(c))
      add(Severity::Warning, "free symbol '" + c + "' in sem is not a declared referent");
  return out;
}

// A copy whose tags and bound semantic variables are fresh, so two uses of the
// same entry never share bindings. Throws DanglingTag.
inline LexEntry instantiate_entry(const LexEntry& e, Freshener& fresh = Freshener::global()) {
  std::multimap<int, bool> tags;
  collect_tags(e.cat.fs(), tags);
  std::map<int, int> renamed;
  for (const auto& [id, in_term] : tags) {
    auto [lo, hi] = tags.equal_range(id);
    bool defined = false;
    for (auto it = lo; it != hi; ++it) defined = defined || !it->second;
    if (!defined) throw DanglingTag("entry '" + e.key + "': tag #" + std::to_string(id) + " has no definition site");
    if (!renamed.count(id)) renamed[id] = fresh.next_tag();
  }
  LexEntry out = e;
  out.cat = Category(map_tags(e.cat.fs(), [&](int id) { return renamed.at(id); }));

  auto rename_vars = [&](auto&& self, const Term& t, const std::map<std::string, std::string>& env) -> Term {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = env.find(t.name());
        return it == env.end() ? t : Term::var(it->second);
      }
      case Term::Kind::Const:
        return t;
      case Term::Kind::Pred: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(self(self, a, env));
        return Term::pred(t.name(), std::move(args));
      }
      case Term::Kind::App: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(self(self, a, env));
        return Term::app(self(self, t.fn(), env), std::move(args));
      }
      case Term::Kind::Abs: {
        auto inner = env;
        std::string n = t.name() + "~" + std::to_string(fresh.next_var());
        inner[t.name()] = n;
        return Term::abs(n, self(self, t.body(), inner));
      }
    }
    return t;
  };
  out.sem = rename_vars(rename_vars, e.sem, {});
  return out;
}

class Lexicon {
 public:
  void add(LexEntry e) {
    std::size_t index = entries_.size();
    keys_[e.key].push_back(index);
    for (const auto& r : realizations(e.phon)) surfaces_[r].push_back(index);
    entries_.push_back(std::move(e));
  }

  const std::vector<LexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<std::size_t> by_key(const std::string& key) const {
    auto it = keys_.find(key);
    return it == keys_.end() ? std::vector<std::size_t>{} : it->second;
  }
  std::vector<std::size_t> by_surface(const std::string& surface) const {
    auto it = surfaces_.find(surface);
    return it == surfaces_.end() ? std::vector<std::size_t>{} : it->second;
  }
  const std::map<std::string, std::vector<std::size_t>>& realization_index() const {
    return surfaces_;
  }

 private:
  std::vector<LexEntry> entries_;
  std::map<std::string, std::vector<std::size_t>> keys_;
  std::map<std::string, std::vector<std::size_t>> surfaces_;
};

struct LexicalMatch {
  LexEntry entry;  // freshly instantiated
  std::string realization;
  std::size_t index = 0;  // position in Lexicon::entries()
};

// Entries whose phon template can surface as `surface` (a leading '-' is
// ignored), each freshly instantiated.
inline std::vector<LexicalMatch> lookup_surface(std::string_view surface, const Lexicon& lex,
                                                Freshener& fresh = Freshener::global()) {
  if (!surface.empty() && surface.front() == '-') surface.remove_prefix(1);
  std::vector<LexicalMatch> out;
  std::string s(surface);
  for (std::size_t i : lex.by_surface(s))
    out.push_back({instantiate_entry(lex.entries()[i], fresh), s, i});
  return out;
}

namespace detail {

inline const std::set<std::string>& both_prop_features() {
  static const std::set<std::string> both = [] {
    std::set<std::string> out;
    for (const auto& f : vocabulary::nprop)
      if (vocabulary::vprop.count(f)) out.insert(f);
    return out;
  }();
  return both;
}

class LexiconReader {
 public:
  explicit LexiconReader(std::string_view text) : s_(text) {}

  std::vector<LexEntry> read() {
    std::vector<LexEntry> out;
    while (!s_.eof()) out.push_back(entry());
    return out;
  }

 private:
  static constexpr std::string_view kSymbolExtra = "_-'";

  LexEntry entry() {
    LexEntry e;
    e.line = s_.line();
    e.column = s_.column();
    if (s_.name() != "entry") s_.fail("expected 'entry'");
    e.key = s_.word("{");
    if (e.key.empty()) s_.fail("expected entry key");
    s_.expect("{");
    s_.expect("phon:");
    int phon_line = s_.line(), phon_col = s_.column();
    std::string phon = s_.quoted();
    try {
      e.phon = parse_template(phon);
    } catch (const SyntaxError& err) {
      throw SyntaxError("phon template: " + err.message(), phon_line, phon_col + err.column());
    }
    s_.expect("cat:");
    s_.peek();
    e.cat_line = s_.line();
    e.cat_column = s_.column();
    e.cat = category();
    s_.expect("sem:");
    e.sem = parse_term(s_);
    if (s_.consume("gloss:")) e.gloss = s_.quoted();
    s_.expect("}");
    return e;
  }

  Category category() {
    if (s_.consume("(")) {
      Category inner = category();
      s_.expect(")");
      char c = s_.peek();
      if (c != '\\' && c != '/' && c != '|') return inner;
      Operator op = op_spec();
      Category arg = category();
      return Category::functor(inner, op, arg);
    }
    return basic();
  }

  Operator op_spec() {
    Operator op;
    if (s_.consume("\\")) op.direction = Direction::Left;
    else if (s_.consume("/")) op.direction = Direction::Right;
    else if (s_.consume("|")) op.direction = Direction::Unspecified;
    else s_.fail("expected operator");
    s_.expect("<");
    std::string m = s_.name();
    auto morpheme = morpheme_from(m);
    if (!morpheme) s_.fail("unknown morpheme type '" + m + "'");
    s_.expect(",");
    std::string p = s_.name();
    auto process = process_from(p);
    if (!process) s_.fail("unknown process type '" + p + "'");
    s_.expect(">");
    op.morpheme = *morpheme;
    op.process = *process;
    return op;
  }

  Category basic() {
    std::string name = s_.name(kSymbolExtra);
    if (name.empty()) s_.fail("expected category");
    FeatureStructure syn(Sign::G);
    FeatureStructure nprop(Sign::G), vprop(Sign::G), sem(Sign::S);
    if (s_.consume("[")) {
      if (!s_.consume("]")) {
        do {
          feature(name, syn, nprop, vprop, sem);
        } while (s_.consume(","));
        s_.expect("]");
      }
    }
    if (!nprop.features.empty()) syn.features.emplace("nprop", box(std::move(nprop)));
    if (!vprop.features.empty()) syn.features.emplace("vprop", box(std::move(vprop)));
    std::optional<FeatureStructure> sem_block;
    if (!sem.features.empty()) sem_block = std::move(sem);
    return Category::basic(name, std::move(syn), std::move(sem_block));
  }

  void feature(const std::string& cat, FeatureStructure& syn, FeatureStructure& nprop,
               FeatureStructure& vprop, FeatureStructure& sem) {
    int line = s_.line(), col = s_.column();
    std::vector<std::string> path;
    path.push_back(s_.name("_"));
    while (s_.consume(".")) path.push_back(s_.name("_"));
    for (const auto& p : path)
      if (p.empty()) s_.fail("expected feature name");
    s_.expect("=");
    for (auto& p : path)
      if (p == "possessive") p = "poss";
    if (path.front() == "syn") path.erase(path.begin());
    if (path.empty()) s_.fail("expected feature name after 'syn'");

    auto fail_at = [&](const std::string& msg) -> void { throw SyntaxError(msg, line, col); };
    auto set = [&](FeatureStructure& block, const std::string& name, FeatureValue v) {
      if (!block.features.emplace(name, std::move(v)).second)
        fail_at("duplicate feature '" + name + "'");
    };

    if (path.size() == 2 && path[0] == "sem") {
      if (!vocabulary::s_sign.count(path[1])) fail_at("unknown feature 'sem." + path[1] + "'");
      set(sem, path[1], value(path[1] == "restr"));
      return;
    }
    if (path.size() == 2 && (path[0] == "nprop" || path[0] == "vprop")) {
      const auto& vocab = path[0] == "nprop" ? vocabulary::nprop : vocabulary::vprop;
      if (!vocab.count(path[1])) fail_at("unknown feature '" + path[0] + "." + path[1] + "'");
      set(path[0] == "nprop" ? nprop : vprop, path[1], value(false));
      return;
    }
    if (path.size() != 1) fail_at("unknown feature path '" + join(path) + "'");
    const std::string& f = path[0];
    if (f == "restr") {
      set(syn, "restr", value(true));
      return;
    }
    if (f == "cat") fail_at("'cat' is given by the category name");
    bool in_n = vocabulary::nprop.count(f) > 0;
    bool in_v = vocabulary::vprop.count(f) > 0;
    if (cat == "n" && in_n) set(nprop, f, value(false));
    else if (cat == "s" && in_v) set(vprop, f, value(false));
    else if (cat != "n" && cat != "s" && in_n && !in_v) set(nprop, f, value(false));
    else if (cat != "n" && cat != "s" && in_v && !in_n) set(vprop, f, value(false));
    else if (in_n || in_v)
      fail_at("feature '" + f + "' is ambiguous or not allowed for category " + cat +
              "; use nprop." + f + " or vprop." + f);
    else fail_at("unknown feature '" + f + "'");
  }

  static std::string join(const std::vector<std::string>& path) {
    std::string out;
    for (const auto& p : path) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  FeatureValue value(bool restr) {
    if (s_.consume("#")) {
      std::string digits = s_.name("");
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        s_.fail("expected tag number");
      int id = std::stoi(digits);
      if (id <= 0) s_.fail("tag ids must be positive");
      return TagRef{id};
    }
    if (s_.consume("<")) {
      if (!restr) s_.fail("condition lists are only allowed for restr");
      std::vector<std::string> conds;
      if (!s_.consume(">")) {
        do {
          conds.push_back(symbol());
        } while (s_.consume(","));
        s_.expect(">");
      }
      return make_restr(std::move(conds));
    }
    std::string sym = symbol();
    if (restr) {
      if (sym == "none") s_.fail("restr takes a condition list, not none");
      return make_restr({sym});
    }
    if (sym == "none") return NoneMarker{};
    if (s_.peek() == '|') {
      std::vector<std::string> alts{sym};
      while (s_.consume("|")) alts.push_back(symbol());
      std::set<std::string> unique(alts.begin(), alts.end());
      if (unique.size() != alts.size()) s_.fail("duplicate symbol in disjunction");
      return make_disjunction(std::move(alts));
    }
    if (s_.peek() == '(') {
      s_.expect("(");
      TermValue t{sym, {}};
      do {
        t.args.push_back(value(false));
      } while (s_.consume(","));
      s_.expect(")");
      return t;
    }
    return Atomic{sym};
  }

  std::string symbol() {
    std::string sym = s_.name(kSymbolExtra);
    if (sym.empty()) s_.fail("expected value");
    return sym;
  }

  Scanner s_;
};

}  // namespace detail

struct LoadResult {
  std::optional<Lexicon> lexicon;  // set iff there is no error diagnostic
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return lexicon.has_value(); }
  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& d : diagnostics) n += d.severity == Severity::Error;
    return n;
  }
};

inline LoadResult load_lexicon(std::string_view text, const ValidationOptions& opts = {}) {
  LoadResult result;
  std::vector<LexEntry> entries;
  try {
    entries = detail::LexiconReader(text).read();
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back({Severity::Error, e.line(), e.column(), "syntax error: " + e.message()});
    return result;
  }
  std::map<std::pair<std::string, std::string>, int> seen;
  for (const auto& e : entries) {
    auto diags = validate_entry(e, opts);
    result.diagnostics.insert(result.diagnostics.end(), diags.begin(), diags.end());
    auto [it, inserted] = seen.emplace(std::make_pair(e.key, canonical(e.cat)), e.line);
    if (!inserted)
      result.diagnostics.push_back({Severity::Warning, e.line, e.column,
                                    "entry '" + e.key + "' duplicates the category of line " +
                                        std::to_string(it->second)});
  }
  if (result.error_count() > 0) return result;
  Lexicon lex;
  for (auto& e : entries) lex.add(std::move(e));
  result.lexicon = std::move(lex);
  return result;
}

// Throws Error when the file cannot be read.
inline LoadResult load_lexicon_file(const std::string& path, const ValidationOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read lexicon file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_lexicon(buf.str(), opts);
}

namespace detail {

inline std::string render_value(const FeatureValue& v) {
  if (const auto* r = v.get_if<RestrList>()) {
    if (r->conditions.size() == 1) return r->conditions.front();
    return to_string(v);
  }
  return to_string(v);
}

inline std::string render_category(const Category& c) {
  if (c.is_functor()) {
    return "(" + render_category(c.result()) + ") " + to_string(c.op()) + " " +
           render_category(c.argument());
  }
  std::string name = c.name();
  std::vector<std::string> feats;
  const FeatureStructure* syn = c.fs().sub("syn");
  if (syn) {
    for (const char* block : {"nprop", "vprop"}) {
      const FeatureStructure* b = syn->sub(block);
      if (!b) continue;
      bool own_block = (name == "n" && std::string(block) == "nprop") ||
                       (name == "s" && std::string(block) == "vprop");
      bool other_cat = name != "n" && name != "s";
      for (const auto& [f, v] : b->features) {
        bool bare = own_block || (other_cat && !both_prop_features().count(f));
        feats.push_back((bare ? f : std::string(block) + "." + f) + "=" + render_value(v));
      }
    }
    if (const FeatureValue* r = syn->find("restr")) feats.push_back("restr=" + render_value(*r));
  }
  if (const FeatureStructure* sem = c.fs().sub("sem"))
    for (const auto& [f, v] : sem->features) feats.push_back("sem." + f + "=" + render_value(v));
  if (feats.empty()) return name;
  std::string out = name + "[";
  for (std::size_t i = 0; i < feats.size(); ++i) out += (i ? "," : "") + feats[i];
  return out + "]";
}

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Lexicon file syntax for one entry.
inline std::string render_entry(const LexEntry& e) {
  std::string out = "entry " + e.key + " {\n";
  out += "  phon: " + detail::quote(to_string(e.phon)) + "\n";
  out += "  cat: " + detail::render_category(e.cat) + "\n";
  out += "  sem: " + to_string(e.sem) + "\n";
  if (!e.gloss.empty()) out += "  gloss: " + detail::quote(e.gloss) + "\n";
  return out + "}\n";
}

inline std::string render_lexicon(const Lexicon& lex) {
  std::string out;
  for (const auto& e : lex.entries()) out += render_entry(e) + "\n";
  return out;
}

}  // namespace morphocat
