#include "doctest.h"

#include "esc/parser.hpp"
#include "esc/rewriting.hpp"
#include "esc/typing.hpp"

using namespace esc;

namespace {

Term P(const char* s) { return parse_term(s); }
Formula F(const char* s) { return parse_formula(s); }
TypingContext G(const char* s) { return parse_typing_context(s); }

std::optional<TypeError::Kind> error_kind(const char* ctx, const char* term) {
  try {
    synth(G(ctx), P(term));
  } catch (const TypeError& e) {
    return e.kind();
  }
  return std::nullopt;
}

} // namespace

TEST_CASE("synthesis examples") {
  CHECK(synth({}, P("\\m:X. m")) == F("X -o X"));
  CHECK(synth(G("e:!X"), P("!der{e>m} m")) == F("!X"));
  CHECK(synth(G("k:X"), P("cut{\\m:X. m > n} sub{n; k > o} o")) == F("X"));
  CHECK(synth(G("m:X, n:Y"), P("(m, n)")) == F("X * Y"));
  CHECK(synth(G("o:X * Y"), P("par{o > x, y} (y, x)")) == F("Y * X"));
  CHECK(synth(G("e:!X"), P("der{e > a} der{e > b} (a, b)")) == F("X * X"));
  CHECK(synth(G("e:!X, m:Y"), P("m")) == F("Y"));  // weakening
  CHECK(synth(G("e:!!X"), P("der{e > f} f")) == F("!X"));
  CHECK(synth(G("m:X"), P("cut{!(\\n:X. n) > f} der{f > k} sub{k; m > o} o")) == F("X"));
}

TEST_CASE("type errors") {
  CHECK(error_kind("", "m") == TypeError::Kind::Unbound);
  CHECK(error_kind("m:X", "der{e > x} x") == TypeError::Kind::Unbound);
  CHECK(error_kind("e:!X", "par{m > x, y} x") == TypeError::Kind::Unbound);
  CHECK(error_kind("m:X", "par{m > x, y} (x, y)") == TypeError::Kind::Mismatch);
  CHECK(error_kind("m:X, n:Y", "sub{m; n > x} x") == TypeError::Kind::Mismatch);
  CHECK(error_kind("m:X -o Y, n:Z", "sub{m; n > x} x") == TypeError::Kind::Mismatch);
  CHECK(error_kind("m:X", "(m, m)") == TypeError::Kind::Linearity);
  CHECK(error_kind("m:X, n:Y", "m") == TypeError::Kind::Linearity);
  CHECK(error_kind("", "\\m:X. \\n:Y. m") == TypeError::Kind::Linearity);
  CHECK(error_kind("m:X", "!m") == TypeError::Kind::Promotion);
  CHECK(error_kind("", "\\m. m") == TypeError::Kind::Annotation);
  CHECK(error_kind("", "\\m:!X. m") == TypeError::Kind::Mismatch);
  CHECK(error_kind("e:!X", "cut{!e > m} m") == TypeError::Kind::Clash);
  CHECK(error_kind("m:X, n:Y", "cut{(m, n) > e} e") == TypeError::Kind::Clash);
  CHECK_THROWS_AS(check_typing_context({{make_var("e"), F("X")}}), TypeError);
}

TEST_CASE("the lolli example term is untypable") {
  // !f has type !!A, so the dereliction would bind m at a bang formula.
  for (const char* a : {"!X", "!!X"}) {
    std::string ann = std::string("cut{\\e:") + a + ". der{e>m} m > n} sub{n; !f > o} o";
    CHECK_FALSE(try_synth(G("f:!X"), P(ann.c_str())));
  }
  ClashVerdict v = is_clash_free_bounded(P("cut{\\e. der{e>m} m > n} sub{n; !f > o} o"), 2);
  REQUIRE(v.found);
  CHECK(v.depth == 2);
}

TEST_CASE("type errors carry a position") {
  try {
    synth(G("m:X"), P("cut{(m, !m) > o} par{o > a, b} (a, b)"));
    FAIL("expected a promotion error");
  } catch (const TypeError& e) {
    CHECK(e.kind() == TypeError::Kind::Promotion);
    CHECK(e.where() == Path{0, 1});
  }
  std::string err;
  CHECK_FALSE(try_synth({}, P("m"), &err));
  CHECK(err.find("unbound") != std::string::npos);
}

TEST_CASE("clash shapes") {
  CHECK(find_clashes(P("cut{(e, f) > g} g")) == std::vector<Path>{{}});
  CHECK(find_clashes(P("cut{!e > m} m")).size() == 1);
  CHECK(find_clashes(P("cut{n > m} m")).empty());
  CHECK(find_clashes(P("cut{(a, b) > m} sub{m; n > x} x")).size() == 1);
  CHECK(find_clashes(P("cut{\\x. x > m} par{m > a, b} (a, b)")).size() == 1);
  // An occurrence under a bang is not in a multiplicative context.
  CHECK(find_clashes(P("cut{\\x. x > m} !par{m > a, b} (a, b)")).empty());
  // Matching shapes are redexes, not clashes.
  CHECK(find_clashes(P("cut{(a, b) > m} par{m > x, y} (x, y)")).empty());
  CHECK(find_clashes(P("(n, cut{!e > m} m)")) == std::vector<Path>{{1}});
}

TEST_CASE("bounded clash search") {
  ClashVerdict a = is_clash_free_bounded(P("cut{(e, f) > g} g"), 0);
  CHECK(a.found);
  CHECK(a.where == Path{});
  CHECK(a.witness.size() == 1);

  Term t = P("cut{\\x. x > m} cut{m > n} par{n > a, b} (a, b)");
  CHECK(find_clashes(t).empty());
  CHECK_FALSE(is_clash_free_bounded(t, 0).found);
  ClashVerdict b = is_clash_free_bounded(t, 1);
  REQUIRE(b.found);
  CHECK(b.depth == 1);
  CHECK(b.witness.size() == 2);

  Term typed = P("cut{\\m:X. m > n} sub{n; k > o} o");
  CHECK_FALSE(is_clash_free_bounded(typed, 5).found);
}

TEST_CASE("typing is preserved by micro steps on examples") {
  struct Case {
    const char* ctx;
    const char* term;
  };
  Case cases[] = {
      {"k:X", "cut{\\m:X. m > n} sub{n; k > o} o"},
      {"e:!X", "cut{\\f:!X. der{f>m} m > n} sub{n; e > o} o"},
      {"m:X, n:Y", "cut{(m, n) > o} par{o > x, y} (y, x)"},
      {"e:!X", "cut{!der{e>a} a > f} der{f > p} der{f > q} (p, q)"},
      {"m:X", "cut{!(\\n:X. n) > f} der{f > k} sub{k; m > o} o"},
  };
  for (auto& c : cases) {
    TypingContext ctx = G(c.ctx);
    Term t = P(c.term);
    Formula a = synth(ctx, t);
    // Follow the leftmost reduct to normal form, checking every branch at each step.
    for (int n = 0; n < 50 && !is_normal(t, Mode::Micro); ++n) {
      auto rs = redexes(t, Mode::Micro);
      for (auto& r : rs) {
        CAPTURE(c.term);
        CAPTURE(redex_str(r));
        CHECK(synth(ctx, apply(t, r)) == a);
      }
      t = apply(t, rs.front());
    }
    CHECK(is_cut_free(t));
  }
}
