#include <gtest/gtest.h>

#include <random>

#include "morphocat/morphocat.hpp"

using namespace morphocat;

namespace {

std::string realize_after(const std::string& tmpl, const std::string& host) {
  return realize(parse_template(tmpl), PhonContext{host, HostSide::Left});
}

std::set<std::string> S(std::initializer_list<std::string> xs) { return xs; }

// Independent oracle: a suffix vowel chart written out by hand.
char32_t high_vowel_after(char32_t last) {
  switch (last) {
    case U'a': case U'ı': return U'ı';
    case U'e': case U'i': return U'i';
    case U'o': case U'u': return U'u';
    default: return U'ü';
  }
}

}  // namespace

TEST(Template, Parse) {
  EXPECT_EQ(to_string(parse_template("(y)lA")), "(y)lA");
  EXPECT_EQ(to_string(parse_template("kitaB")), "kitaB");
  EXPECT_TRUE(parse_template("DHr").has_meta(Meta::D));
  EXPECT_TRUE(parse_template("(y)H").has_meta(Meta::H));
  EXPECT_FALSE(parse_template("gömlek").has_meta(Meta::H));
  EXPECT_THROW(parse_template(""), SyntaxError);
  EXPECT_THROW(parse_template("()"), SyntaxError);
  EXPECT_THROW(parse_template("((y))A"), SyntaxError);
  EXPECT_THROW(parse_template("(yA"), SyntaxError);
  EXPECT_THROW(parse_template("lX"), SyntaxError);
  try {
    parse_template("aQ");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.column(), 2);
  }
}

TEST(Metaphoneme, Examples) {
  EXPECT_EQ(resolve_metaphoneme(Meta::H, PhonContext{"kol"}), "u");
  EXPECT_EQ(resolve_metaphoneme(Meta::D, PhonContext{"konuş"}), "t");
  EXPECT_EQ(resolve_metaphoneme(Meta::A, PhonContext{"ben"}), "e");
  EXPECT_EQ(resolve_metaphoneme(Meta::D, PhonContext{"oku"}), "d");
  EXPECT_EQ(resolve_metaphoneme(Meta::B, PhonContext{"ı", HostSide::Right}), "b");
  EXPECT_EQ(resolve_metaphoneme(Meta::B, PhonContext{"", HostSide::Left}), "p");
  EXPECT_THROW(resolve_metaphoneme(Meta::H, PhonContext{"krk"}), HarmonyError);
  try {
    resolve_metaphoneme(Meta::A, PhonContext{"krk"});
    FAIL();
  } catch (const HarmonyError& e) {
    EXPECT_NE(std::string(e.what()).find("no harmony source"), std::string::npos);
  }
}

TEST(Realize, Examples) {
  EXPECT_EQ(realize_after("lH", "kol"), "lu");
  EXPECT_EQ(realize_after("(y)lA", "araba"), "yla");
  EXPECT_EQ(realize_after("(y)lA", "tren"), "le");
  EXPECT_EQ(realize_after("DHr", "yap"), "tır");
  EXPECT_EQ(realize_after("DHr", "öl"), "dür");
  EXPECT_EQ(realize_after("(y)A", "kadın"), "a");
  EXPECT_EQ(realize_after("(y)ArAk", "dön"), "erek");
  EXPECT_EQ(realize_after("DH", "konuş"), "tu");
  EXPECT_EQ(realize_after("mHş", "oku"), "muş");
  EXPECT_EQ(realize_after("(y)H", "kitap"), "ı");
  EXPECT_EQ(realize_after("DA", "ben"), "de");
  EXPECT_EQ(citation_form(parse_template("kitaB")), "kitap");
  EXPECT_EQ(realize(parse_template("kitaB"), PhonContext{"ı", HostSide::Right}), "kitab");
  EXPECT_THROW(realize_after("lH", "krk"), HarmonyError);
}

TEST(Realizations, Examples) {
  auto dhr = realizations(parse_template("DHr"));
  EXPECT_EQ(dhr, S({"dır", "dir", "dur", "dür", "tır", "tir", "tur", "tür"}));
  EXPECT_EQ(realizations(parse_template("lH")), S({"lı", "li", "lu", "lü"}));
  EXPECT_EQ(realizations(parse_template("de")), S({"de"}));
  EXPECT_EQ(realizations(parse_template("(y)lA")), S({"la", "le", "yla", "yle"}));
  EXPECT_EQ(realizations(parse_template("kitaB")), S({"kitab", "kitap"}));
}

TEST(Redup, Examples) {
  EXPECT_TRUE(check_redup("ap", "açık"));
  EXPECT_TRUE(check_redup("bes", "belli"));
  EXPECT_FALSE(check_redup("ap", "belli"));
  EXPECT_TRUE(check_redup("kap", "kara"));
  EXPECT_FALSE(check_redup("kat", "kara"));
  EXPECT_FALSE(check_redup("", "kara"));
}

TEST(Join, Examples) {
  Operator affix{Direction::Left, MorphemeType::Bound, Process::Affix};
  Operator clitic{Direction::Left, MorphemeType::Bound, Process::Clitic};
  Operator redup{Direction::Right, MorphemeType::Bound, Process::Redup};
  Operator concat{Direction::Right, MorphemeType::Free, Process::Concat};
  EXPECT_EQ(join_surfaces("kol", "lu", affix), "kollu");
  EXPECT_EQ(join_surfaces("ben", "de", clitic), "ben de");
  EXPECT_EQ(join_surfaces("ben", "de", affix), "bende");
  EXPECT_EQ(join_surfaces("ap", "açık", redup), "apaçık");
  EXPECT_EQ(join_surfaces("uzun", "yol", concat), "uzun yol");
}

TEST(Tables, Disjoint) {
  for (char32_t c : HarmonyTables::back) EXPECT_EQ(HarmonyTables::front.find(c), std::u32string_view::npos);
}

TEST(HarmonyProperty, HighVowelMatchesChart) {
  const std::vector<std::string> hosts = {"kol", "ev", "göz", "kız", "gül", "at", "el", "okul", "kitap", "ütü"};
  for (const auto& h : hosts) {
    auto u = utf8::decode(h);
    char32_t last = 0;
    for (char32_t c : u)
      if (HarmonyTables::is_vowel(c)) last = c;
    EXPECT_EQ(realize_after("lH", h), "l" + utf8::encode(high_vowel_after(last))) << h;
  }
}

TEST(HarmonyProperty, RealizeWithinRealizations) {
  std::mt19937 rng(31);
  const std::vector<std::string> pieces = {"H", "A", "D", "l", "r", "k", "(y)", "(n)", "ş"};
  const std::vector<std::string> hosts = {"kol", "ev", "araba", "tren", "kitap", "süt", "anne", "göz", "ütü"};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (int i = 0; i < 500; ++i) {
    std::string t;
    int metas = 0;
    bool optional = false;
    for (std::size_t k = 0, n = 1 + pick(4); k < n; ++k) {
      std::string p = pieces[pick(pieces.size())];
      if (p.size() == 1 && std::isupper(static_cast<unsigned char>(p[0])) && ++metas > 3) continue;
      if (p.front() == '(') {
        if (optional || !t.empty()) continue;
        optional = true;
      }
      t += p;
    }
    if (t.empty()) t = "H";
    PhonTemplate tmpl = parse_template(t);
    auto all = realizations(tmpl);
    for (const auto& h : hosts) {
      std::string got = realize(tmpl, PhonContext{h, HostSide::Left});
      EXPECT_TRUE(all.count(got)) << t << " after " << h << " gave " << got;
      EXPECT_EQ(got, realize(tmpl, PhonContext{h, HostSide::Left}));
    }
  }
}

TEST(HarmonyProperty, RealizationBound) {
  // |realizations| <= 4^#H * 2^#A * 2^#D * 2^#optional
  for (const char* t : {"DHr", "lH", "(y)lA", "(y)ArAk", "DA", "mHş", "(y)H", "HA"}) {
    auto tmpl = parse_template(t);
    std::size_t bound = 1;
    for (const auto& s : tmpl.segments) {
      if (const auto* m = std::get_if<Meta>(&s)) bound *= *m == Meta::H ? 4 : 2;
      if (std::holds_alternative<OptionalGroup>(s)) bound *= 2;
    }
    EXPECT_LE(realizations(tmpl).size(), bound) << t;
  }
  EXPECT_EQ(realizations(parse_template("DHr")).size(), 8u);
}

TEST(RedupProperty, PrefixVowelIsStemFirstVowel) {
  const std::vector<std::string> stems = {"açık", "belli", "kara", "mavi", "yeni", "temiz", "sıcak", "uzun"};
  for (const auto& s : stems) {
    auto stem = utf8::decode(s);
    std::u32string onset;
    if (!HarmonyTables::is_vowel(stem[0])) onset = stem.substr(0, 1);
    char32_t first = 0;
    for (char32_t c : stem)
      if (HarmonyTables::is_vowel(c)) {
        first = c;
        break;
      }
    for (char32_t link : std::u32string(U"psmrtkl")) {
      for (char32_t v : std::u32string(U"aeıioöuü")) {
        std::string p = utf8::encode(onset + v + link);
        if (check_redup(p, s)) {
          EXPECT_EQ(v, first) << p << " " << s;
          EXPECT_NE(std::u32string(U"psmr").find(link), std::u32string::npos);
        }
      }
    }
  }
}

TEST(Utf8, RoundTrip) {
  std::string s = "kadın gömlek çocuk konuş";
  EXPECT_EQ(utf8::encode(utf8::decode(s)), s);
  EXPECT_EQ(utf8::length("açık"), 4u);
}

TEST(Operator, Violations) {
  EXPECT_TRUE(operator_violations({Direction::Left, MorphemeType::Bound, Process::Affix}).empty());
  EXPECT_TRUE(operator_violations({Direction::Unspecified, MorphemeType::Free, Process::Concat}).empty());
  EXPECT_EQ(operator_violations({Direction::Left, MorphemeType::Bound, Process::Concat}).size(), 1u);
  EXPECT_EQ(operator_violations({Direction::Left, MorphemeType::Free, Process::Clitic}).size(), 1u);
  EXPECT_EQ(operator_violations({Direction::Left, MorphemeType::Bound, Process::Redup}).size(), 1u);
  EXPECT_EQ(to_string(Operator{Direction::Left, MorphemeType::Bound, Process::Affix}), "\\<bound,affix>");
  EXPECT_EQ(to_string(Operator{Direction::Unspecified, MorphemeType::Free, Process::Concat}), "|<free,concat>");
}
