#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args) {
  std::string cmd = quote(MORPHOCAT_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Run run_stdout(const std::vector<std::string>& args) {
  std::string cmd = quote(MORPHOCAT_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const std::string kLex = MORPHOCAT_SAMPLE_LEXICON;

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, ParseSemLongSleevedShirt) {
  auto r = run_stdout({"parse", "-l", kLex, "uzun", "kol", "-lu", "gömlek", "--format", "sem"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "shirt(y,has(long(sleeve(z))))\nlong(shirt(y,has(sleeve(z))))\n");
}

TEST(Cli, ZeroParses) {
  auto r = run_stdout({"parse", "-l", kLex, "kadın", "-a", "konuş", "-tu"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "0 parses\n");
  auto off = run_stdout({"parse", "-l", kLex, "--no-restr", "kadın", "-a", "konuş", "-tu"});
  EXPECT_EQ(off.status, 0);
}

TEST(Cli, MissingLexicon) {
  EXPECT_EQ(run({"parse", "-l", "/nonexistent/missing.lex", "x"}).status, 2);
}

TEST(Cli, UnknownToken) {
  auto r = run({"parse", "-l", kLex, "uzun", "qqq"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("qqq"), std::string::npos);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate", "-l", kLex}).status, 2);
  EXPECT_EQ(run({"parse", "-l", kLex, "--format", "xml", "uzun"}).status, 2);
  EXPECT_EQ(run({"parse", "-l", kLex, "--combinators", "FA,ZZ", "uzun"}).status, 2);
  EXPECT_EQ(run({"parse", "uzun"}).status, 2);
  EXPECT_EQ(run({"parse", "-l"}).status, 2);
}

TEST(Cli, TreeFormat) {
  auto r = run_stdout({"parse", "-l", kLex, "kadın", "-a", "dön", "-erek", "konuş", "-tu"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("(s\\n)\\n  FXC \"kadına dön\""), std::string::npos);
  EXPECT_NE(r.out.find("sem: speak(z,by(turn(z,to(female(m)))),past)"), std::string::npos);
}

TEST(Cli, Goal) {
  auto r = run_stdout({"parse", "-l", kLex, "--goal", "n", "kadın", "-a", "dön", "-erek", "konuş", "-tu"});
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, Combinators) {
  auto r = run_stdout({"parse", "-l", kLex, "--combinators", "FA,BA", "--format", "sem", "kadın", "-a", "dön",
                       "-erek", "konuş", "-tu"});
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, Words) {
  auto r = run_stdout({"parse", "-l", kLex, "--words", "--format", "sem", "uzun", "kollu", "gömlek"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "shirt(y,has(long(sleeve(z))))\nlong(shirt(y,has(sleeve(z))))\n");
  EXPECT_EQ(run({"parse", "-l", kLex, "--words", "zzz"}).status, 2);
}

TEST(Cli, JsonRoundTrips) {
  auto r = run_stdout({"parse", "-l", kLex, "--format", "json", "uzun", "kol", "-lu", "gömlek"});
  EXPECT_EQ(r.status, 0);
  auto doc = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(doc.dump(2) + "\n", r.out);
  ASSERT_EQ(doc.size(), 2u);
  for (const auto& d : doc) {
    EXPECT_TRUE(d.contains("category") && d.contains("sem") && d.contains("surface") && d.contains("tree"));
  }
  EXPECT_EQ(doc[0]["tree"]["left"]["right"]["leaf"], "lH");
  EXPECT_EQ(doc[0]["tree"]["left"]["right"]["form"], "lu");
}

TEST(Cli, SemStableAcrossRuns) {
  std::vector<std::string> args = {"parse", "-l", kLex, "--format", "sem", "adam", "kitab", "-ı", "oku", "-du"};
  EXPECT_EQ(run_stdout(args).out, run_stdout(args).out);
  auto out = run_stdout(args).out;
  EXPECT_NE(out.find("\\x1."), std::string::npos);
}

TEST(Cli, Realize) {
  auto lu = run_stdout({"realize", "-l", kLex, "lH", "kol"});
  EXPECT_EQ(lu.status, 0);
  EXPECT_EQ(lu.out, "lu\n");
  auto tir = run_stdout({"realize", "-l", kLex, "DHr", "yap"});
  EXPECT_EQ(tir.status, 0);
  EXPECT_EQ(tir.out, "tır\n");
  auto bad = run({"realize", "-l", kLex, "lH", "krk"});
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("no harmony source"), std::string::npos);
  EXPECT_EQ(run({"realize", "-l", kLex, "nokey", "kol"}).status, 2);
}

TEST(Cli, Segment) {
  auto r = run_stdout({"segment", "-l", kLex, "kollu"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("kol=kol:n -lu=lH:(n/n)\\n"), std::string::npos);
  auto z = run({"segment", "-l", kLex, "zzz"});
  EXPECT_EQ(z.status, 1);
  EXPECT_NE(z.out.find("zzz"), std::string::npos);
}

TEST(Cli, LexValidate) {
  auto ok = run_stdout({"lex", "validate", "-l", kLex});
  EXPECT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("0 errors"), std::string::npos);
  auto bad_path = temp_file("morphocat_bad_op.lex", "entry x {\n  phon: \"x\"\n  cat: (n) \\<bound,concat> n\n  sem: \\p.p\n}\n");
  auto bad = run_stdout({"lex", "validate", "-l", bad_path});
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("1 error"), std::string::npos);
  EXPECT_NE(bad.out.find(":3:"), std::string::npos);
  EXPECT_EQ(run({"lex", "validate", "-l", "/nonexistent/x.lex"}).status, 2);
}
