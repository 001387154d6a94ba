#include "doctest.h"

#include "esc/parser.hpp"
#include "esc/rewriting.hpp"

using namespace esc;

namespace {

Term P(const char* s) { return parse_term(s); }

Term omega() {
  return P("cut{\\e. der{e > m} sub{m; e > n} n > o} sub{o; !\\e. der{e > m} sub{m; e > n} n > o'} o'");
}

std::vector<RuleKind> kinds(const std::vector<Redex>& rs) {
  std::vector<RuleKind> out;
  for (auto& r : rs) out.push_back(r.kind);
  return out;
}

} // namespace

TEST_CASE("redex enumeration examples") {
  auto a = redexes(P("cut{n>m} m"), Mode::Micro);
  REQUIRE(a.size() == 1);
  CHECK(a[0].kind == RuleKind::AxM1);

  auto b = redexes(P("cut{f>e} der{e>g} cut{o>m} sub{m; e>n} n"), Mode::Micro);
  std::vector<RuleKind> ek;
  for (auto& r : b)
    if (r.cut_path.empty()) ek.push_back(r.kind);
  CHECK(ek == std::vector<RuleKind>{RuleKind::AxE2, RuleKind::AxE1});

  auto c = redexes(P("cut{!e>f} m"), Mode::Micro);
  REQUIRE(c.size() == 1);
  CHECK(c[0].kind == RuleKind::Weak);

  CHECK(kinds(redexes(P("cut{n>m} par{m>x,y}(x,y)"), Mode::Micro)) == std::vector{RuleKind::AxM2});
  CHECK(kinds(redexes(P("cut{!e>f} der{f>m} m"), Mode::Small)) == std::vector{RuleKind::ESmall});
  CHECK(redexes(P("cut{(e,f) > g} g"), Mode::Micro).empty());
}

TEST_CASE("modes") {
  Term t = omega();
  CHECK(kinds(redexes(t, Mode::Micro)) == std::vector{RuleKind::Lolli});
  CHECK(redexes(t, Mode::NonLolliMicro).empty());
  CHECK(redexes(t, Mode::ExpMicroOnly).empty());
}

TEST_CASE("the lolli example") {
  Term t = P("cut{\\e. der{e>m} m > n} sub{n; !f > o} o");
  auto rs = redexes(t, Mode::Micro);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == RuleKind::Lolli);
  CHECK(alpha_eq(apply(t, rs[0]), P("cut{!f > e} der{e>m} cut{m>o} o")));
}

TEST_CASE("exponential steps") {
  Term t = P("cut{!e>f} der{f>m} m");
  auto rs = redexes(t, Mode::Micro);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == RuleKind::BangDer);
  Term s = apply(t, rs[0]);
  CHECK(alpha_eq(s, P("cut{!e>f} cut{e>m} m")));
  auto ws = redexes(s, Mode::Micro);
  REQUIRE(ws.size() == 1);  // cut{e>m} is a clash
  CHECK(ws[0].kind == RuleKind::Weak);
  CHECK(alpha_eq(apply(s, ws[0]), P("cut{e>m} m")));

  Term u = P("cut{f>e} der{e>m} m");
  auto us = redexes(u, Mode::Micro);
  REQUIRE(us.size() == 1);
  CHECK(us[0].kind == RuleKind::AxE2);
  CHECK(alpha_eq(apply(u, us[0]), P("cut{f>e} der{f>m} m")));

  Term w = P("cut{f>e} (e, !e)");
  auto wr = redexes(w, Mode::Micro);
  REQUIRE(wr.size() == 2);
  CHECK(alpha_eq(apply(w, wr[1]), P("cut{f>e} (e, !f)")));
}

TEST_CASE("small-step exponential") {
  auto ess = [](const char* s) {
    Term t = P(s);
    auto rs = redexes(t, Mode::Small);
    REQUIRE(rs.size() >= 1);
    REQUIRE(rs[0].kind == RuleKind::ESmall);
    return step_ess(t, rs[0]);
  };
  CHECK(alpha_eq(ess("cut{!e>f} der{f>m} m"), P("cut{e>m} m")));
  CHECK(alpha_eq(ess("cut{f>e} der{e>m} m"), P("der{f>m} m")));
  CHECK(alpha_eq(ess("cut{!der{g>x} x > e} e"), P("!der{g>x} x")));
  CHECK_THROWS_AS(step_ess(P("cut{n>m} m"), Redex{RuleKind::ESmall, {}, std::nullopt}), StaleRedex);
}

TEST_CASE("tensor step splits both components") {
  Term t = P("cut{(der{e>a} a, cut{n>b} b) > m} par{m > x, y} (x, y)");
  auto rs = redexes(t, Mode::Micro);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].kind == RuleKind::Tens);
  CHECK(rs[1].kind == RuleKind::AxM1);
  CHECK(alpha_eq(apply(t, rs[0]), P("der{e>a} cut{a > x} cut{n>b} cut{b > y} (x, y)")));
}

TEST_CASE("steps avoid capture") {
  // The value mentions x, which the par binds.
  Term t = P("cut{(x, n) > m} par{m > x, y} (x, y)");
  Term s = apply(t, redexes(t, Mode::Micro)[0]);
  CHECK(alpha_eq(s, P("cut{x > a} cut{n > b} (a, b)")));
  // A context binder named like a free variable of the value.
  Term u = P("cut{n > m} \\n. (m, n)");
  Term r = apply(u, redexes(u, Mode::Micro)[0]);
  CHECK(alpha_eq(r, P("\\k. (n, k)")));
  // The cut binder occurs in its own value.
  Term w = P("cut{!e > e} (e, e)");
  Term wr = apply(w, redexes(w, Mode::Micro)[0]);
  CHECK(alpha_eq(wr, P("cut{!e > f} (!e, f)")));
}

TEST_CASE("stale redexes are rejected") {
  Term t = P("cut{n>m} m");
  CHECK_THROWS_AS(apply(t, Redex{RuleKind::AxM1, {1}, Path{}}), StaleRedex);
  CHECK_THROWS_AS(apply(t, Redex{RuleKind::AxM2, {}, Path{}}), StaleRedex);
  CHECK_THROWS_AS(apply(P("m"), Redex{RuleKind::AxM1, {}, Path{}}), StaleRedex);
  CHECK_THROWS_AS(apply(P("cut{!e>f} f"), Redex{RuleKind::Weak, {}, std::nullopt}), StaleRedex);
}

TEST_CASE("the looping combinator cycles in five steps") {
  Term t = omega();
  const std::vector seq{RuleKind::Lolli, RuleKind::AxE1, RuleKind::BangDer, RuleKind::Weak, RuleKind::AxM1};
  Term cur = t;
  for (RuleKind k : seq) {
    std::vector<Redex> of_kind;
    for (auto& r : redexes(cur, Mode::Micro))
      if (r.kind == k) of_kind.push_back(r);
    REQUIRE(of_kind.size() == 1);
    cur = apply(cur, of_kind[0]);
  }
  CHECK(alpha_eq(cur, t));
}

TEST_CASE("normal forms") {
  CHECK(is_normal(P("m"), Mode::Micro));
  CHECK(is_cut_free(P("m")));
  CHECK(is_normal(P("cut{(e,f)>g} g"), Mode::Micro));
  CHECK_FALSE(is_cut_free(P("cut{(e,f)>g} g")));
  CHECK_FALSE(is_normal(P("cut{n>m} m"), Mode::Micro));
}

TEST_CASE("cut equivalence") {
  CHECK(cut_equiv(P("cut{n>m}(o, m)"), P("(o, cut{n>m} m)")));
  CHECK(cut_equiv(P("cut{n>m} m"), P("cut{n>m} m")));
  CHECK_FALSE(cut_equiv(P("cut{n>m}(m, o)"), P("(o, cut{n>m} m)")));
  // Through a lambda not capturing the value.
  CHECK(cut_equiv(P("cut{n>m} \\x. (x, m)"), P("\\x. cut{n>m} (x, m)")));
  CHECK_FALSE(cut_equiv(P("cut{n>m} \\n. (n, m)"), P("\\n. cut{n>m} (n, m)")));
  // A capturing lambda is renamed on the way in.
  CHECK(cut_equiv(P("cut{n>m} \\n. (n, m)"), P("\\k. cut{n>m} (k, m)")));
  CHECK(cut_equiv(P("cut{e > f} \\e. x"), P("\\g. cut{e > f} x")));
  // Into a value slot through a pair.
  CHECK(cut_equiv(P("cut{n>m} cut{(m, p) > o} o"), P("cut{(cut{n>m} m, p) > o} o")));
  // Weakening cuts move anywhere at level zero.
  CHECK(cut_equiv(P("cut{!e>f} (m, n)"), P("(m, cut{!e>f} n)")));
}

TEST_CASE("garbage collection postponement") {
  auto r = check_gc_local_postponement(P("cut{!e>f} cut{n>m} m"));
  CHECK(r.ok);
  CHECK(r.pairs_checked == 1);
  CHECK(check_gc_local_postponement(P("cut{n>m} m")).pairs_checked == 0);
}
