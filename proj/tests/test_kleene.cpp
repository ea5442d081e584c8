#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mcsort/trit.hpp"

using namespace mcsort;

namespace {
Trit T(char c) { return trit_from_char(c); }
}  // namespace

TEST_CASE("gate semantics match the three-valued truth tables exactly") {
  // AND rows: first operand 0,1,M; columns 0,1,M.
  const char* and_tab[3] = {"000", "01M", "0MM"};
  const char* or_tab[3] = {"01M", "111", "M1M"};
  const char* not_tab = "10M";
  const char sym[3] = {'0', '1', 'M'};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(and3(T(sym[a]), T(sym[b])) == T(and_tab[a][b]));
      CHECK(or3(T(sym[a]), T(sym[b])) == T(or_tab[a][b]));
      CHECK(gate_eval(GateKind::And, {T(sym[a]), T(sym[b])}) == T(and_tab[a][b]));
      CHECK(gate_eval(GateKind::Or, {T(sym[a]), T(sym[b])}) == T(or_tab[a][b]));
    }
    CHECK(not3(T(sym[a])) == T(not_tab[a]));
    CHECK(gate_eval(GateKind::Not, {T(sym[a])}) == T(not_tab[a]));
    CHECK(gate_eval(GateKind::Buf, {T(sym[a])}) == T(sym[a]));
  }
  CHECK_THROWS_AS(gate_eval(GateKind::And, {Trit::v0}), std::invalid_argument);
  CHECK_THROWS_AS(gate_eval(GateKind::Not, {Trit::v0, Trit::v1}), std::invalid_argument);
}

TEST_CASE("star operator") {
  CHECK(star(TritVec::parse("0010"), TritVec::parse("0110")).str() == "0M10");
  CHECK(star(TritVec::parse("01"), TritVec::parse("10")).str() == "MM");
  // idempotence and commutativity/associativity over all width-3 triples
  std::vector<TritVec> all;
  for (int a = 0; a < 27; ++a) {
    TritVec v(3);
    int x = a;
    for (int i = 1; i <= 3; ++i, x /= 3) v.set(i, static_cast<Trit>(x % 3));
    all.push_back(v);
  }
  for (auto& x : all) {
    CHECK(star(x, x) == x);
    for (auto& y : all) {
      CHECK(star(x, y) == star(y, x));
      for (auto& z : all) CHECK(star(star(x, y), z) == star(x, star(y, z)));
    }
  }
  CHECK_THROWS_AS(star(TritVec(2), TritVec(3)), std::invalid_argument);
}

TEST_CASE("resolution") {
  auto rs = resolutions(TritVec::parse("0M10"));
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].str() == "0010");
  CHECK(rs[1].str() == "0110");

  rs = resolutions(TritVec::parse("0011"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].str() == "0011");

  rs = resolutions(TritVec::parse("MM"));
  REQUIRE(rs.size() == 4);
  std::set<std::string> got;
  for (auto& r : rs) got.insert(r.str());
  CHECK(got == std::set<std::string>{"00", "01", "10", "11"});
}

TEST_CASE("star over res(x) reproduces x, exhaustive width <= 6") {
  for (int w = 1; w <= 6; ++w) {
    long long n = 1;
    for (int i = 0; i < w; ++i) n *= 3;
    for (long long a = 0; a < n; ++a) {
      TritVec v(w);
      long long x = a;
      for (int i = 1; i <= w; ++i, x /= 3) v.set(i, static_cast<Trit>(x % 3));
      TritVec acc;
      bool first = true;
      for_each_resolution(v, [&](const TritVec& r) {
        acc = first ? r : star(acc, r);
        first = false;
      });
      CHECK(acc == v);
    }
  }
}

TEST_CASE("sets are contained in the resolution of their superposition") {
  // S subset of res(*S) for every nonempty S of stable width-4 strings with |S| <= 3
  // (sampling the |S|<=3 subfamily exhaustively), and res(*S) = S when |res(*S)| <= 2.
  const int W = 4, N = 16;
  auto fold = [&](const std::vector<int>& vals) {
    TritVec acc = TritVec::stable(W, vals[0]);
    for (size_t i = 1; i < vals.size(); ++i) acc = star(acc, TritVec::stable(W, vals[i]));
    return acc;
  };
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      TritVec s2 = fold({a, b});
      std::set<std::string> rs;
      for_each_resolution(s2, [&](const TritVec& r) { rs.insert(r.str()); });
      CHECK(rs.count(TritVec::stable(W, a).str()) == 1);
      CHECK(rs.count(TritVec::stable(W, b).str()) == 1);
      if (rs.size() <= 2) {
        std::set<std::string> s{TritVec::stable(W, a).str(), TritVec::stable(W, b).str()};
        CHECK(rs == s);
      }
      for (int c = 0; c < N; ++c) {
        TritVec s3 = fold({a, b, c});
        std::set<std::string> rs3;
        for_each_resolution(s3, [&](const TritVec& r) { rs3.insert(r.str()); });
        CHECK(rs3.count(TritVec::stable(W, c).str()) == 1);
      }
    }
}

TEST_CASE("metastable closure") {
  TruthTable and_tt = tabulate(2, 1, [](const TritVec& x) {
    return TritVec::stable(1, x.get(1) == Trit::v1 && x.get(2) == Trit::v1 ? 1 : 0);
  });
  CHECK(closure_apply(and_tt, TritVec::parse("M0")).str() == "0");
  CHECK(closure_apply(and_tt, TritVec::parse("M1")).str() == "M");

  // closure of the identity is the identity
  TruthTable id4 = tabulate(4, 4, [](const TritVec& x) { return x; });
  for (const char* s : {"0M10", "MMMM", "0011"})
    CHECK(closure_apply(id4, TritVec::parse(s)) == TritVec::parse(s));

  // 2-bit +1 mod 4 applied to 0M: res = {00,01} -> {01,10} -> MM
  TruthTable inc = tabulate(2, 2, [](const TritVec& x) {
    return TritVec::stable(2, (x.value_bits() + 1) & 3);
  });
  CHECK(closure_apply(inc, TritVec::parse("0M")).str() == "MM");

  // table-driven and callable paths agree on all width-4 inputs
  auto fn = [](const TritVec& x) {
    return TritVec::stable(2, (x.value_bits() * 5 + 3) & 3);
  };
  TruthTable tt = tabulate(4, 2, fn);
  for (int a = 0; a < 81; ++a) {
    TritVec v(4);
    int x = a;
    for (int i = 1; i <= 4; ++i, x /= 3) v.set(i, static_cast<Trit>(x % 3));
    CHECK(closure_apply(tt, v) == closure_apply(2, fn, v));
  }
}

TEST_CASE("gate monotonicity: stable outputs survive resolution") {
  const char sym[3] = {'0', '1', 'M'};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      TritVec v(2);
      v.set(1, T(sym[a]));
      v.set(2, T(sym[b]));
      Trit ga = and3(v.get(1), v.get(2));
      Trit go = or3(v.get(1), v.get(2));
      for_each_resolution(v, [&](const TritVec& r) {
        if (ga != Trit::vM) CHECK(and3(r.get(1), r.get(2)) == ga);
        if (go != Trit::vM) CHECK(or3(r.get(1), r.get(2)) == go);
      });
    }
}
