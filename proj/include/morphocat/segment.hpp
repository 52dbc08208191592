#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "morphocat/lexicon.hpp"
#include "morphocat/parser.hpp"

namespace morphocat {

struct Morph {
  enum class Role { Prefix, Stem, Suffix };

  Role role = Role::Stem;
  std::size_t entry = 0;
  std::string key;
  std::string form;

  // Token spelling for parse: "ap-", "kol", "-lu".
  std::string token() const {
    if (role == Role::Prefix) return form + "-";
    if (role == Role::Suffix) return "-" + form;
    return form;
  }
  friend bool operator==(const Morph&, const Morph&) = default;
};

using Analysis = std::vector<Morph>;

struct WordAnalyses {
  std::string word;
  std::vector<Analysis> analyses;
};

struct SegmentResult {
  std::vector<WordAnalyses> lattice;
  std::vector<std::string> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

namespace detail {

inline bool is_prefix_entry(const LexEntry& e) {
  return e.is_affixal() && e.outer_op()->process == Process::Redup;
}
inline bool is_suffix_entry(const LexEntry& e) {
  return e.is_affixal() && e.outer_op()->process == Process::Affix;
}

}  // namespace detail

// Surface word produced by a decomposition, or nullopt when a morpheme
// cannot be realized in its context.
inline std::optional<std::string> generate_word(const Analysis& a, const Lexicon& lex) {
  try {
    std::optional<std::string> prefix;
    std::string word;
    std::optional<PhonTemplate> stem_template;
    for (const auto& m : a) {
      const LexEntry& e = lex.entries()[m.entry];
      switch (m.role) {
        case Morph::Role::Prefix:
          prefix = m.form;
          break;
        case Morph::Role::Stem:
          if (e.phon.has_meta(Meta::B)) {
            stem_template = e.phon;
            word = citation_form(e.phon);
          } else {
            word = m.form;
          }
          break;
        case Morph::Role::Suffix: {
          std::string morph = realize(e.phon, PhonContext{word, HostSide::Left});
          if (morph != m.form) return std::nullopt;
          if (stem_template) {
            word = realize(*stem_template, PhonContext{morph, HostSide::Right});
            stem_template.reset();
          }
          word += morph;
          break;
        }
      }
    }
    if (prefix) {
      const Morph& p = a.front();
      std::string morph = realize(lex.entries()[p.entry].phon, PhonContext{word, HostSide::Right});
      if (morph != p.form || !check_redup(morph, word)) return std::nullopt;
      word = morph + word;
    }
    return word;
  } catch (const HarmonyError&) {
    return std::nullopt;
  }
}

// Every decomposition of each word into [prefix] stem suffix*, each checked
// by regenerating the word. Analyses with longer stems come first.
inline SegmentResult segment(const std::vector<std::string>& words, const Lexicon& lex) {
  SegmentResult result;
  const auto& index = lex.realization_index();
  for (const auto& word : words) {
    WordAnalyses wa{word, {}};
    auto matches_at = [&](std::size_t pos, auto pred) {
      std::vector<Morph> out;
      for (const auto& [form, ids] : index) {
        if (form.empty() || word.compare(pos, form.size(), form) != 0) continue;
        for (std::size_t id : ids)
          if (pred(lex.entries()[id])) out.push_back({Morph::Role::Stem, id, lex.entries()[id].key, form});
      }
      return out;
    };
    auto suffixes = [&](auto&& self, std::size_t pos, Analysis& cur) -> void {
      if (pos == word.size()) {
        if (auto w = generate_word(cur, lex); w && *w == word) wa.analyses.push_back(cur);
        return;
      }
      for (auto m : matches_at(pos, detail::is_suffix_entry)) {
        m.role = Morph::Role::Suffix;
        cur.push_back(m);
        self(self, pos + m.form.size(), cur);
        cur.pop_back();
      }
    };
    auto stems = [&](std::size_t pos, Analysis& cur) {
      for (const auto& m : matches_at(pos, [](const LexEntry& e) { return !e.is_affixal(); })) {
        cur.push_back(m);
        suffixes(suffixes, pos + m.form.size(), cur);
        cur.pop_back();
      }
    };
    Analysis cur;
    stems(0, cur);
    for (auto p : matches_at(0, detail::is_prefix_entry)) {
      p.role = Morph::Role::Prefix;
      cur = {p};
      stems(p.form.size(), cur);
    }
    auto stem_length = [](const Analysis& a) {
      for (const auto& m : a)
        if (m.role == Morph::Role::Stem) return m.form.size();
      return std::size_t{0};
    };
    std::stable_sort(wa.analyses.begin(), wa.analyses.end(), [&](const Analysis& a, const Analysis& b) {
      return stem_length(a) > stem_length(b);
    });
    if (wa.analyses.empty()) result.diagnostics.push_back("no analysis for word '" + word + "'");
    result.lattice.push_back(std::move(wa));
  }
  return result;
}

// Cartesian product of per-word analyses as distinct token sequences. Analyses
// differing only in the entry chosen give the same tokens; parse covers both.
inline std::vector<std::vector<std::string>> expand_lattice(const SegmentResult& r) {
  std::vector<std::vector<std::string>> out = {{}};
  for (const auto& wa : r.lattice) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : out)
      for (const auto& a : wa.analyses) {
        auto seq = prefix;
        for (const auto& m : a) seq.push_back(m.token());
        if (std::find(next.begin(), next.end(), seq) == next.end()) next.push_back(std::move(seq));
      }
    out = std::move(next);
  }
  return out;
}

// Parse surface words: segment, then parse every token sequence in the lattice.
inline std::vector<Derivation> parse_words(const std::vector<std::string>& words, const Lexicon& lex,
                                           const ParseConfig& cfg = {}) {
  auto seg = segment(words, lex);
  if (!seg.ok()) {
    std::vector<std::string> bad;
    for (const auto& wa : seg.lattice)
      if (wa.analyses.empty()) bad.push_back(wa.word);
    throw UnknownTokens(bad);
  }
  std::vector<Derivation> out;
  for (const auto& tokens : expand_lattice(seg)) {
    auto ds = parse(tokens, lex, cfg);
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

}  // namespace morphocat
