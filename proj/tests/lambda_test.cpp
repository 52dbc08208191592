#include <gtest/gtest.h>

#include <random>

#include "morphocat/morphocat.hpp"

using namespace morphocat;

namespace {

Term T(std::string_view s) { return parse_term(s); }

void expect_alpha(const Term& got, const Term& want) {
  EXPECT_TRUE(alpha_equivalent(got, want)) << to_string(got) << " vs " << to_string(want);
}

// Random terms over a few variables, constants and predicates. Open terms
// use the variables free.
class TermGenerator {
 public:
  explicit TermGenerator(unsigned seed) : rng_(seed) {}

  Term term(int depth) {
    static const char* vars[] = {"a", "b", "c"};
    static const char* consts[] = {"m", "z", "past"};
    static const char* preds[] = {"f", "g", "speak"};
    if (depth == 0) return pick(2) ? Term::var(vars[pick(3)]) : Term::constant(consts[pick(3)]);
    switch (pick(5)) {
      case 0: return Term::var(vars[pick(3)]);
      case 1: {
        std::vector<Term> args;
        for (std::size_t i = 0, n = 1 + pick(2); i < n; ++i) args.push_back(term(depth - 1));
        return Term::pred(preds[pick(3)], std::move(args));
      }
      case 2:
      case 3: return Term::abs(vars[pick(3)], term(depth - 1));
      default: return Term::app(term(depth - 1), {term(depth - 1)});
    }
  }

  // Same term with every binder renamed to a fresh name.
  Term rename_bound(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Abs: {
        std::string v = t.name() + "_" + std::to_string(counter_++);
        return Term::abs(v, rename_bound(substitute(t.body(), t.name(), Term::var(v))));
      }
      case Term::Kind::Pred: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(rename_bound(a));
        return Term::pred(t.name(), std::move(args));
      }
      case Term::Kind::App: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(rename_bound(a));
        return Term::app(rename_bound(t.fn()), std::move(args));
      }
      default: return t;
    }
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  std::mt19937 rng_;
  int counter_ = 0;
};

}  // namespace

TEST(Parse, Notation) {
  EXPECT_EQ(to_string(T("\\p.long(p(z))")), "\\p.long(p(z))");
  EXPECT_EQ(T("λx.speak(x)"), T("\\x.speak(x)"));
  EXPECT_EQ(T("speak(x, by(y))"), T("speak(x,by(y))"));
  EXPECT_EQ(T("\\x.speak(x)").body().args()[0].kind(), Term::Kind::Var);
  EXPECT_EQ(T("speak(x)").args()[0].kind(), Term::Kind::Const);
  EXPECT_EQ(T("\\p.\\o.p(o)(z)").body().body().kind(), Term::Kind::App);
  EXPECT_THROW(T("\\x."), SyntaxError);
  EXPECT_THROW(T("f(x"), SyntaxError);
  EXPECT_THROW(T("f(x) g"), SyntaxError);
}

TEST(Substitute, DirectReplacement) {
  Term body = T("\\p.long(p(z))").body();
  Term sleeve = T("\\x.sleeve(x)");
  EXPECT_EQ(substitute(body, "p", sleeve), Term::pred("long", {Term::app(sleeve, {Term::constant("z")})}));
}

TEST(Substitute, AvoidsCapture) {
  Term t = Term::abs("x", Term::pred("f", {Term::var("x"), Term::var("y")}));
  Term r = substitute(t, "y", Term::var("x"));
  ASSERT_EQ(r.kind(), Term::Kind::Abs);
  EXPECT_NE(r.name(), "x");
  EXPECT_EQ(r.body(), Term::pred("f", {Term::var(r.name()), Term::var("x")}));
}

TEST(Substitute, AbsentVariable) {
  Term t = Term::pred("speak", {Term::var("w")});
  EXPECT_EQ(substitute(t, "p", Term::var("q")), t);
}

TEST(Beta, ShirtScopeAdjectiveInside) {
  Term t = Term::app(T("\\q.\\r.r(y,has(q))"), {T("long(sleeve(z))"), T("\\w.shirt(w)")});
  expect_alpha(beta_reduce(t), T("shirt(y,has(long(sleeve(z))))"));
}

TEST(Beta, Identity) { expect_alpha(beta_reduce(Term::app(T("\\x.x"), {T("speak(m)")})), T("speak(m)")); }

TEST(Beta, TwoSteps) {
  auto r = reduce(Term::app(T("\\p.long(p(z))"), {T("\\x.sleeve(x)")}));
  expect_alpha(r.term, T("long(sleeve(z))"));
  EXPECT_EQ(r.steps, 2);
}

TEST(Beta, HoleFilling) {
  // The abstraction left inside a saturated predicate receives the argument.
  Term t = Term::app(T("shirt(y,has(\\x.sleeve(x)))"), {T("z")});
  expect_alpha(beta_reduce(t), T("shirt(y,has(sleeve(z)))"));
}

TEST(Beta, BudgetExhausted) {
  Term omega = T("\\x.x(x)");
  EXPECT_THROW(beta_reduce(Term::app(omega, {omega}), ReductionBudget{50}), ReductionLimit);
}

TEST(ApplySem, Examples) {
  expect_alpha(apply_sem(T("\\x.sleeve(x)"), T("z")), T("sleeve(z)"));
  expect_alpha(apply_sem(T("\\p9.p9(z,past)"), T("\\x8.speak(x8)")), T("speak(z,past)"));
  expect_alpha(apply_sem(T("\\w.shirt(w)"), T("y")), T("shirt(y)"));
}

TEST(ComposeSem, Examples) {
  expect_alpha(compose_sem(T("\\p2.p2(to(female(m)))"), T("\\x4.\\x5.turn(x5,x4)")),
               T("\\x4.turn(to(female(m)),x4)"));
  expect_alpha(compose_sem(T("\\x.x"), T("\\x.x")), T("\\x.x"));
  expect_alpha(compose_sem(T("\\p.long(p(z))"), T("\\x.sleeve(x)")), T("\\v.long(sleeve(v,z))"));
}

TEST(Alpha, Examples) {
  EXPECT_TRUE(alpha_equivalent(T("\\x.speak(x)"), T("\\y.speak(y)")));
  EXPECT_FALSE(alpha_equivalent(T("\\x.speak(x)"), T("\\x.turn(x)")));
  EXPECT_TRUE(alpha_equivalent(T("\\x6.speak(x6,by(turn(x6,to(female(m)))))"),
                               T("\\a.speak(a,by(turn(a,to(female(m)))))")));
  EXPECT_FALSE(alpha_equivalent(T("\\x.\\y.f(x,y)"), T("\\x.\\y.f(y,x)")));
}

TEST(Display, NormalizesNames) {
  EXPECT_EQ(display(T("\\p6.\\p7.p7(p6)")), "\\x1.\\x2.x2(x1)");
  EXPECT_EQ(display(T("\\a.speak(a,by(turn(a,to(female(m)))))")), "\\x1.speak(x1,by(turn(x1,to(female(m)))))");
}

TEST(Display, AvoidsConstantNames) {
  Term t = Term::abs("a", Term::pred("f", {Term::var("a"), Term::constant("x1")}));
  EXPECT_EQ(display(t), "\\x2.f(x2,x1)");
}

TEST(BetaProperty, IdempotentAndShrinksFreeVariables) {
  TermGenerator gen(21);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.term(4);
    Term r = t;
    try {
      r = beta_reduce(t, ReductionBudget{500});
    } catch (const ReductionLimit&) {
      continue;
    }
    ++checked;
    EXPECT_TRUE(is_beta_normal(r)) << to_string(t);
    EXPECT_EQ(beta_reduce(r), r) << to_string(t);
    auto fr = free_variables(r), ft = free_variables(t);
    for (const auto& v : fr) EXPECT_TRUE(ft.count(v)) << v << " in " << to_string(t);
    expect_alpha(apply_sem(T("\\x.x"), t, ReductionBudget{1000}), r);
  }
  EXPECT_GT(checked, 900);
}

TEST(AlphaProperty, EquivalenceRelation) {
  TermGenerator gen(22);
  for (int i = 0; i < 1000; ++i) {
    Term a = gen.term(4);
    Term b = gen.rename_bound(a);
    Term c = gen.rename_bound(b);
    EXPECT_TRUE(alpha_equivalent(a, a));
    EXPECT_TRUE(alpha_equivalent(a, b)) << to_string(a) << " / " << to_string(b);
    EXPECT_TRUE(alpha_equivalent(b, a));
    EXPECT_TRUE(alpha_equivalent(b, c));
    EXPECT_TRUE(alpha_equivalent(a, c));
    Term d = gen.term(4);
    EXPECT_EQ(alpha_equivalent(a, d), alpha_equivalent(d, a));
    EXPECT_EQ(alpha_equivalent(a, d), display(a) == display(d));
  }
}
