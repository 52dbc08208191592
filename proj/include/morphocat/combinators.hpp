#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphocat/category.hpp"
#include "morphocat/lambda.hpp"
#include "morphocat/lexicon.hpp"
#include "morphocat/morphophonology.hpp"

namespace morphocat {

enum class Combinator {
  ForwardApply,            // X/Y  Y    => X
  BackwardApply,           // Y    X\Y  => X
  ForwardCrossedCompose,   // X/Y  Y\Z  => X\Z
  BackwardCrossedCompose,  // Y/Z  X\Y  => X/Z
  ForwardCompose,          // X/Y  Y/Z  => X/Z
  BackwardCompose,         // Y\Z  X\Y  => X\Z
};

inline constexpr Combinator kAllCombinators[] = {
    Combinator::ForwardApply,         Combinator::BackwardApply,
    Combinator::ForwardCrossedCompose, Combinator::BackwardCrossedCompose,
    Combinator::ForwardCompose,       Combinator::BackwardCompose};

inline std::string_view short_name(Combinator c) {
  switch (c) {
    case Combinator::ForwardApply: return "FA";
    case Combinator::BackwardApply: return "BA";
    case Combinator::ForwardCrossedCompose: return "FXC";
    case Combinator::BackwardCrossedCompose: return "BXC";
    case Combinator::ForwardCompose: return "FC";
    case Combinator::BackwardCompose: return "BC";
  }
  return "?";
}

inline std::optional<Combinator> combinator_from(std::string_view s) {
  for (Combinator c : kAllCombinators)
    if (short_name(c) == s) return c;
  return std::nullopt;
}

inline bool is_composition(Combinator c) {
  return c != Combinator::ForwardApply && c != Combinator::BackwardApply;
}

// The functor doing the consuming is on the left for FA, FXC and FC.
inline bool primary_is_left(Combinator c) {
  return c == Combinator::ForwardApply || c == Combinator::ForwardCrossedCompose ||
         c == Combinator::ForwardCompose;
}

struct ParseConfig {
  std::vector<Combinator> combinators = {Combinator::ForwardApply, Combinator::BackwardApply,
                                         Combinator::ForwardCrossedCompose};
  std::optional<std::string> goal;  // slash notation, e.g. "s\\n"
  std::size_t max_items = 100000;
  bool restr_licensing = true;
  ReductionBudget budget;
};

struct LexicalLeaf {
  std::size_t token = 0;
  std::size_t entry_index = 0;
  std::string key;
  PhonTemplate phon;
};

struct ChartItem;
using ItemPtr = std::shared_ptr<const ChartItem>;

struct ChartItem {
  std::size_t start = 0;
  std::size_t end = 0;
  Category cat;
  Term sem = Term::constant("?");
  // Rendered string. For an unrealized bound morpheme this is the token's
  // spelling, which must agree with the realization once a host is known.
  std::string surface;
  bool pending = false;
  // Template of the right-edge word while it may still alternate (kitaB).
  std::optional<PhonTemplate> edge_template;

  std::optional<Combinator> combinator;
  ItemPtr left;
  ItemPtr right;
  std::optional<LexicalLeaf> leaf;

  bool is_leaf() const { return leaf.has_value(); }
};

inline ItemPtr make_leaf(std::size_t token, const LexicalMatch& m) {
  auto item = std::make_shared<ChartItem>();
  item->start = token;
  item->end = token + 1;
  item->cat = m.entry.cat;
  item->sem = m.entry.sem;
  item->surface = m.realization;
  auto op = m.entry.outer_op();
  item->pending = op && op->morpheme == MorphemeType::Bound;
  if (!item->pending && m.entry.phon.has_meta(Meta::B)) item->edge_template = m.entry.phon;
  item->leaf = LexicalLeaf{token, m.index, m.entry.key, m.entry.phon};
  return item;
}

namespace detail {

inline std::string first_word(const std::string& s) { return s.substr(0, s.find(' ')); }

inline std::string last_word(const std::string& s) {
  auto p = s.rfind(' ');
  return p == std::string::npos ? s : s.substr(p + 1);
}

inline std::string replace_last_word(const std::string& s, const std::string& w) {
  auto p = s.rfind(' ');
  return p == std::string::npos ? w : s.substr(0, p + 1) + w;
}

// The pieces of a combination once the schema has matched.
struct Match {
  const ChartItem* primary = nullptr;    // the consuming functor
  const ChartItem* secondary = nullptr;  // argument, or the composed functor
  Category demand;                       // primary's argument category
  Category actual;                       // what must satisfy the demand
};

inline bool direction_allows(Direction d, bool rightward) {
  return d == Direction::Unspecified || d == (rightward ? Direction::Right : Direction::Left);
}

inline std::optional<Match> match_schema(const ChartItem& left, const ChartItem& right, Combinator c) {
  bool prim_left = primary_is_left(c);
  const ChartItem& p = prim_left ? left : right;
  const ChartItem& s = prim_left ? right : left;
  if (!p.cat.is_functor() || !direction_allows(p.cat.op().direction, prim_left)) return std::nullopt;
  Category demand = p.cat.argument();
  Category actual = s.cat;
  if (is_composition(c)) {
    if (!s.cat.is_functor()) return std::nullopt;
    // Crossed: secondary slash opposes the primary's; harmonic: agrees.
    bool crossed = c == Combinator::ForwardCrossedCompose || c == Combinator::BackwardCrossedCompose;
    bool secondary_rightward = crossed ? !prim_left : prim_left;
    if (!direction_allows(s.cat.op().direction, secondary_rightward)) return std::nullopt;
    actual = s.cat.result();
  }
  if (!demand.same_shape(actual)) return std::nullopt;
  return Match{&p, &s, std::move(demand), std::move(actual)};
}

inline bool licensed(const Match& m) {
  auto demanded = m.demand.restr_conditions();
  auto present = m.actual.restr_conditions();
  for (const auto& c : demanded)
    if (!present.count(c)) return false;
  return true;
}

}  // namespace detail

// Shape, operator direction, restr licensing and reduplication checks. Does not
// unify features; combine() can still fail.
inline bool can_combine(const ChartItem& left, const ChartItem& right, Combinator c,
                        const ParseConfig& cfg = {}) {
  if (left.end != right.start) return false;
  auto m = detail::match_schema(left, right, c);
  if (!m) return false;
  // A bound morpheme needs its own host before it can be consumed or composed.
  if (m->secondary->pending) return false;
  if (cfg.restr_licensing && !detail::licensed(*m)) return false;
  Operator op = m->primary->cat.op();
  if (op.process == Process::Redup && m->primary->pending) {
    std::string stem = primary_is_left(c) ? detail::first_word(right.surface) : detail::last_word(left.surface);
    if (!check_redup(m->primary->surface, stem)) return false;
  }
  return true;
}

struct CombineOutcome {
  ItemPtr item;
  std::string failure;  // reason when item is null

  explicit operator bool() const { return item != nullptr; }
};

inline CombineOutcome combine(const ItemPtr& left, const ItemPtr& right, Combinator c,
                              const ParseConfig& cfg = {}) {
  if (!can_combine(*left, *right, c, cfg)) return {nullptr, "combinator does not apply"};
  auto m = *detail::match_schema(*left, *right, c);
  const ChartItem& prim = *m.primary;
  const ChartItem& sec = *m.secondary;
  Operator op = prim.cat.op();

  auto out = std::make_shared<ChartItem>();
  out->start = left->start;
  out->end = right->end;
  out->combinator = c;
  out->left = left;
  out->right = right;

  if (m.demand.fs().sign != m.actual.fs().sign) return {nullptr, "unification failure"};
  Unifier u;
  if (!u.unify(m.demand.fs(), m.actual.fs())) return {nullptr, "unification failure"};
  Category x(u.resolve(prim.cat.result().fs()));
  if (is_composition(c)) {
    Category z(u.resolve(sec.cat.argument().fs()));
    out->cat = Category::functor(x, sec.cat.op(), z);
  } else {
    out->cat = std::move(x);
  }

  try {
    out->sem = is_composition(c) ? compose_sem(prim.sem, sec.sem, cfg.budget)
                                 : apply_sem(prim.sem, sec.sem, cfg.budget);
  } catch (const ReductionLimit& e) {
    return {nullptr, e.what()};
  }

  if (prim.pending) {
    bool host_left = !primary_is_left(c);
    try {
      if (host_left) {
        // Suffix or enclitic: harmonize with the last word of the host.
        std::string edge = sec.edge_template ? citation_form(*sec.edge_template)
                                             : detail::last_word(sec.surface);
        std::string morph = realize(prim.leaf->phon, PhonContext{edge, HostSide::Left});
        if (morph != prim.surface)
          return {nullptr, "'" + prim.surface + "' does not fit host '" + edge + "' (expected '" + morph + "')"};
        if (sec.edge_template && op.fuses())
          edge = realize(*sec.edge_template, PhonContext{morph, HostSide::Right});
        out->surface = join_surfaces(detail::replace_last_word(sec.surface, edge), morph, op);
        if (!op.fuses()) out->edge_template.reset();
      } else {
        std::string edge = detail::first_word(sec.surface);
        std::string morph = realize(prim.leaf->phon, PhonContext{edge, HostSide::Right});
        if (morph != prim.surface)
          return {nullptr, "'" + prim.surface + "' does not fit host '" + edge + "' (expected '" + morph + "')"};
        out->surface = join_surfaces(morph, sec.surface, op);
        out->edge_template = sec.edge_template;
      }
    } catch (const HarmonyError& e) {
      return {nullptr, e.what()};
    }
  } else {
    out->surface = join_surfaces(left->surface, right->surface, op);
    out->edge_template = right->edge_template;
  }
  return {std::move(out), {}};
}

}  // namespace morphocat
