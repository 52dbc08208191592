#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morphocat/error.hpp"
#include "morphocat/operator.hpp"
#include "morphocat/utf8.hpp"

namespace morphocat {

// Standard Turkish two-dimensional vowel harmony and the devoicing set.
struct HarmonyTables {
  static constexpr std::u32string_view back = U"aıou";
  static constexpr std::u32string_view front = U"eiöü";
  static constexpr std::u32string_view rounded = U"oöuü";
  static constexpr std::u32string_view voiceless = U"fstkçşhp";

  static bool is_vowel(char32_t c) {
    return back.find(c) != std::u32string_view::npos || front.find(c) != std::u32string_view::npos;
  }
  static bool is_back(char32_t c) { return back.find(c) != std::u32string_view::npos; }
  static bool is_rounded(char32_t c) { return rounded.find(c) != std::u32string_view::npos; }
  static bool is_voiceless(char32_t c) { return voiceless.find(c) != std::u32string_view::npos; }
};

// H: high vowel (ı i u ü), A: low unrounded vowel (a e), D: dental stop (d t),
// B: stem-final labial stop (b before a vowel-initial suffix, p otherwise).
enum class Meta { H, A, D, B };

inline char meta_char(Meta m) {
  switch (m) {
    case Meta::H: return 'H';
    case Meta::A: return 'A';
    case Meta::D: return 'D';
    case Meta::B: return 'B';
  }
  return '?';
}

struct Literal {
  std::string text;  // UTF-8
  friend bool operator==(const Literal&, const Literal&) = default;
};

using SimpleSegment = std::variant<Literal, Meta>;

struct OptionalGroup {
  std::vector<SimpleSegment> segments;
  friend bool operator==(const OptionalGroup&, const OptionalGroup&) = default;
};

using Segment = std::variant<Literal, Meta, OptionalGroup>;

struct PhonTemplate {
  std::vector<Segment> segments;
  friend bool operator==(const PhonTemplate&, const PhonTemplate&) = default;

  bool has_meta(Meta m) const {
    for (const auto& s : segments) {
      if (const auto* mm = std::get_if<Meta>(&s); mm && *mm == m) return true;
      if (const auto* g = std::get_if<OptionalGroup>(&s)) {
        for (const auto& t : g->segments)
          if (const auto* gm = std::get_if<Meta>(&t); gm && *gm == m) return true;
      }
    }
    return false;
  }
};

namespace detail {

inline void append_literal(std::vector<SimpleSegment>& out, char32_t c) {
  if (!out.empty())
    if (auto* l = std::get_if<Literal>(&out.back())) {
      utf8::append(l->text, c);
      return;
    }
  out.push_back(Literal{utf8::encode(c)});
}

inline std::optional<Meta> meta_from(char32_t c) {
  switch (c) {
    case U'H': return Meta::H;
    case U'A': return Meta::A;
    case U'D': return Meta::D;
    case U'B': return Meta::B;
    default: return std::nullopt;
  }
}

}  // namespace detail

// Parses "lH", "(y)lA", "DHr", "kitaB". Column numbers in errors are 1-based
// code-point offsets into `text`.
inline PhonTemplate parse_template(std::string_view text) {
  auto cps = utf8::decode(text);
  PhonTemplate out;
  std::vector<SimpleSegment> current;
  auto flush = [&] {
    for (auto& s : current) std::visit([&](auto& v) { out.segments.emplace_back(std::move(v)); }, s);
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t c = cps[i];
    int col = static_cast<int>(i) + 1;
    if (c == U'(') {
      flush();
      std::vector<SimpleSegment> group;
      std::size_t j = i + 1;
      for (; j < cps.size() && cps[j] != U')'; ++j) {
        if (cps[j] == U'(') throw SyntaxError("nested optional segment", 1, static_cast<int>(j) + 1);
        if (auto m = detail::meta_from(cps[j])) group.push_back(*m);
        else if (cps[j] >= U'A' && cps[j] <= U'Z')
          throw SyntaxError("unknown meta-phoneme", 1, static_cast<int>(j) + 1);
        else detail::append_literal(group, cps[j]);
      }
      if (j >= cps.size()) throw SyntaxError("unterminated optional segment", 1, col);
      if (group.empty()) throw SyntaxError("empty optional segment", 1, col);
      out.segments.push_back(OptionalGroup{std::move(group)});
      i = j;
    } else if (c == U')') {
      throw SyntaxError("unbalanced ')'", 1, col);
    } else if (auto m = detail::meta_from(c)) {
      flush();
      out.segments.push_back(*m);
    } else if (c >= U'A' && c <= U'Z') {
      throw SyntaxError("unknown meta-phoneme", 1, col);
    } else if (c == U' ' || c == U'-') {
      throw SyntaxError("invalid character in phon template", 1, col);
    } else {
      detail::append_literal(current, c);
    }
  }
  flush();
  if (out.segments.empty()) throw SyntaxError("empty phon template", 1, 1);
  return out;
}

inline std::string to_string(const PhonTemplate& t) {
  std::string out;
  auto simple = [&](const SimpleSegment& s) {
    if (const auto* l = std::get_if<Literal>(&s)) out += l->text;
    else out += meta_char(std::get<Meta>(s));
  };
  for (const auto& s : t.segments) {
    if (const auto* l = std::get_if<Literal>(&s)) out += l->text;
    else if (const auto* m = std::get_if<Meta>(&s)) out += meta_char(*m);
    else {
      out += '(';
      for (const auto& g : std::get<OptionalGroup>(s).segments) simple(g);
      out += ')';
    }
  }
  return out;
}

// Which side of the morpheme its host is on: Left for suffixes and enclitics,
// Right for prefixes (and for a stem whose following suffix is the context).
enum class HostSide { Left, Right };

struct PhonContext {
  std::string host;
  HostSide side = HostSide::Left;
};

// Abstract phonological environment a template is realized in.
struct PhonEnvironment {
  std::optional<char32_t> harmony_vowel;
  bool has_preceding = false;       // a host precedes the morpheme
  bool preceding_ends_in_vowel = false;
  bool preceding_voiceless = false;
  bool has_following = false;       // material follows the morpheme
  bool following_starts_with_vowel = false;
};

inline PhonEnvironment environment_of(const PhonContext& ctx) {
  auto host = utf8::decode(ctx.host);
  PhonEnvironment env;
  if (host.empty()) return env;
  if (ctx.side == HostSide::Left) {
    for (auto it = host.rbegin(); it != host.rend(); ++it)
      if (HarmonyTables::is_vowel(*it)) {
        env.harmony_vowel = *it;
        break;
      }
    env.has_preceding = true;
    env.preceding_ends_in_vowel = HarmonyTables::is_vowel(host.back());
    env.preceding_voiceless = HarmonyTables::is_voiceless(host.back());
  } else {
    for (char32_t c : host)
      if (HarmonyTables::is_vowel(c)) {
        env.harmony_vowel = c;
        break;
      }
    env.has_following = true;
    env.following_starts_with_vowel = HarmonyTables::is_vowel(host.front());
  }
  return env;
}

inline char32_t resolve_metaphoneme(Meta m, const PhonEnvironment& env) {
  switch (m) {
    case Meta::H: {
      if (!env.harmony_vowel) throw HarmonyError("no harmony source");
      bool back = HarmonyTables::is_back(*env.harmony_vowel);
      bool round = HarmonyTables::is_rounded(*env.harmony_vowel);
      if (back) return round ? U'u' : U'ı';
      return round ? U'ü' : U'i';
    }
    case Meta::A:
      if (!env.harmony_vowel) throw HarmonyError("no harmony source");
      return HarmonyTables::is_back(*env.harmony_vowel) ? U'a' : U'e';
    case Meta::D:
      if (!env.has_preceding) throw HarmonyError("no preceding host for D");
      return env.preceding_voiceless ? U't' : U'd';
    case Meta::B:
      return env.has_following && env.following_starts_with_vowel ? U'b' : U'p';
  }
  return U'?';
}

inline std::string resolve_metaphoneme(Meta m, const PhonContext& ctx) {
  return utf8::encode(resolve_metaphoneme(m, environment_of(ctx)));
}

inline std::string realize(const PhonTemplate& t, const PhonEnvironment& env) {
  std::string out;
  auto simple = [&](const SimpleSegment& s) {
    if (const auto* l = std::get_if<Literal>(&s)) out += l->text;
    else utf8::append(out, resolve_metaphoneme(std::get<Meta>(s), env));
  };
  // Buffer consonants/vowels surface only after a vowel-final host (or, for a
  // prefix, before a vowel-initial one).
  bool include_optional = (env.has_preceding && env.preceding_ends_in_vowel) ||
                          (!env.has_preceding && env.has_following && env.following_starts_with_vowel);
  for (const auto& s : t.segments) {
    if (const auto* g = std::get_if<OptionalGroup>(&s)) {
      if (include_optional)
        for (const auto& gs : g->segments) simple(gs);
    } else if (const auto* l = std::get_if<Literal>(&s)) {
      out += l->text;
    } else {
      utf8::append(out, resolve_metaphoneme(std::get<Meta>(s), env));
    }
  }
  return out;
}

inline std::string realize(const PhonTemplate& t, const PhonContext& ctx) {
  return realize(t, environment_of(ctx));
}

// Word-final form with no host, e.g. kitaB -> kitap.
inline std::string citation_form(const PhonTemplate& t) { return realize(t, PhonEnvironment{}); }

// All surface forms over every feasible environment.
inline std::set<std::string> realizations(const PhonTemplate& t) {
  static constexpr std::u32string_view vowels = U"aıoueiöü";
  std::set<std::string> out;
  struct Final {
    bool vowel;
    bool voiceless;
  };
  const Final finals[] = {{true, false}, {false, false}, {false, true}};
  auto attempt = [&](const PhonEnvironment& env) {
    try {
      out.insert(realize(t, env));
    } catch (const HarmonyError&) {
    }
  };
  attempt(PhonEnvironment{});
  for (char32_t v : vowels) {
    for (const auto& f : finals) {
      PhonEnvironment env;
      env.harmony_vowel = v;
      env.has_preceding = true;
      env.preceding_ends_in_vowel = f.vowel;
      env.preceding_voiceless = f.voiceless;
      attempt(env);
    }
    for (bool starts_vowel : {false, true}) {
      PhonEnvironment env;
      env.harmony_vowel = v;
      env.has_following = true;
      env.following_starts_with_vowel = starts_vowel;
      attempt(env);
    }
  }
  return out;
}

// prefix == (stem onset consonant, if any) + stem's first vowel + one of p s m r
inline bool check_redup(std::string_view prefix_surface, std::string_view stem_surface) {
  auto p = utf8::decode(prefix_surface);
  auto s = utf8::decode(stem_surface);
  if (p.empty() || s.empty()) return false;
  std::u32string expected;
  if (!HarmonyTables::is_vowel(s.front())) expected.push_back(s.front());
  std::optional<char32_t> first_vowel;
  for (char32_t c : s)
    if (HarmonyTables::is_vowel(c)) {
      first_vowel = c;
      break;
    }
  if (!first_vowel) return false;
  expected.push_back(*first_vowel);
  if (p.size() != expected.size() + 1 || p.compare(0, expected.size(), expected) != 0) return false;
  return std::u32string_view(U"psmr").find(p.back()) != std::u32string_view::npos;
}

inline std::string join_surfaces(std::string_view left, std::string_view right, const Operator& op) {
  std::string out(left);
  if (!op.fuses()) out += ' ';
  out += right;
  return out;
}

}  // namespace morphocat
