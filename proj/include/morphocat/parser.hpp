#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "morphocat/combinators.hpp"
#include "morphocat/error.hpp"
#include "morphocat/lexicon.hpp"

namespace morphocat {

class UnknownTokens : public Error {
 public:
  explicit UnknownTokens(std::vector<std::string> tokens)
      : Error(message_for(tokens)), tokens_(std::move(tokens)) {}
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  static std::string message_for(const std::vector<std::string>& tokens) {
    std::string m = "unknown token";
    if (tokens.size() > 1) m += "s";
    for (std::size_t i = 0; i < tokens.size(); ++i) m += (i ? ", '" : ": '") + tokens[i] + "'";
    return m;
  }
  std::vector<std::string> tokens_;
};

class ChartLimit : public Error {
 public:
  using Error::Error;
};

struct Derivation {
  ItemPtr root;

  const Category& category() const { return root->cat; }
  const Term& sem() const { return root->sem; }
  const std::string& surface() const { return root->surface; }

  std::vector<const ChartItem*> leaves() const {
    std::vector<const ChartItem*> out;
    auto walk = [&](auto&& self, const ChartItem* n) -> void {
      if (n->is_leaf()) return out.push_back(n);
      self(self, n->left.get());
      self(self, n->right.get());
    };
    walk(walk, root.get());
    return out;
  }
};

// Bracketing of a derivation over its leaf forms, e.g. "[[uzun kol] lu] gömlek]".
inline std::string bracketing(const ChartItem& n) {
  if (n.is_leaf()) return n.surface;
  return "[" + bracketing(*n.left) + " " + bracketing(*n.right) + "]";
}

// Shape first, then combinators, then lexical choices.
inline std::string derivation_key(const ChartItem& root) {
  std::string shape, combs, lex;
  auto walk = [&](auto&& self, const ChartItem& n) -> void {
    if (n.is_leaf()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%06zu.", n.leaf->entry_index);
      shape += "x";
      lex += buf;
      return;
    }
    shape += "(";
    self(self, *n.left);
    self(self, *n.right);
    shape += ")";
    combs += std::string(short_name(*n.combinator)) + ".";
  };
  walk(walk, root);
  return shape + "|" + combs + "|" + lex;
}

enum class TokenMarker { Plain, Suffix, Prefix };

inline TokenMarker marker_of(const std::string& token) {
  if (token.size() > 1 && token.front() == '-') return TokenMarker::Suffix;
  if (token.size() > 1 && token.back() == '-') return TokenMarker::Prefix;
  return TokenMarker::Plain;
}

// Lexical items for one token. "-lu" admits only affixes, "ap-" only
// reduplicants, a bare token only free morphemes and clitics.
inline std::vector<LexicalMatch> token_matches(const std::string& token, const Lexicon& lex) {
  TokenMarker mk = marker_of(token);
  std::string bare = token;
  if (mk == TokenMarker::Suffix) bare.erase(0, 1);
  if (mk == TokenMarker::Prefix) bare.pop_back();
  std::vector<LexicalMatch> out;
  for (auto& m : lookup_surface(bare, lex)) {
    auto op = m.entry.outer_op();
    bool affix = m.entry.is_affixal() && op->process == Process::Affix;
    bool redup = m.entry.is_affixal() && op->process == Process::Redup;
    bool keep = mk == TokenMarker::Suffix ? affix : mk == TokenMarker::Prefix ? redup : !m.entry.is_affixal();
    if (keep) out.push_back(std::move(m));
  }
  return out;
}

// All complete derivations over the token sequence, by exhaustive CKY closure.
inline std::vector<Derivation> parse(const std::vector<std::string>& tokens, const Lexicon& lex,
                                     const ParseConfig& cfg = {}) {
  if (cfg.max_items == 0) throw Error("max_items must be positive");
  const std::size_t n = tokens.size();
  if (n == 0) return {};
  std::vector<std::vector<std::vector<ItemPtr>>> chart(n, std::vector<std::vector<ItemPtr>>(n + 1));
  std::vector<std::string> unknown;
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : token_matches(tokens[i], lex)) chart[i][i + 1].push_back(make_leaf(i, m));
    if (chart[i][i + 1].empty()) unknown.push_back(tokens[i]);
    total += chart[i][i + 1].size();
  }
  if (!unknown.empty()) throw UnknownTokens(unknown);

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::size_t j = i + len;
      auto& cell = chart[i][j];
      for (std::size_t k = i + 1; k < j; ++k)
        for (const auto& l : chart[i][k])
          for (const auto& r : chart[k][j])
            for (Combinator c : cfg.combinators) {
              auto out = combine(l, r, c, cfg);
              if (!out) continue;
              cell.push_back(std::move(out.item));
              if (++total > cfg.max_items)
                throw ChartLimit("chart exceeded " + std::to_string(cfg.max_items) + " items");
            }
    }
  }

  std::vector<Derivation> out;
  for (const auto& item : chart[0][n])
    if (!cfg.goal || item->cat.display() == *cfg.goal) out.push_back({item});
  std::stable_sort(out.begin(), out.end(), [](const Derivation& a, const Derivation& b) {
    return derivation_key(*a.root) < derivation_key(*b.root);
  });
  return out;
}

}  // namespace morphocat
