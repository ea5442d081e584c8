#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "mcsort/gray.hpp"

using namespace mcsort;
using namespace mcsort::gray;

TEST_CASE("reflected Gray code fixtures") {
  CHECK(rg_encode(4, 7).str() == "0100");
  CHECK(rg_encode(4, 15).str() == "1000");
  CHECK(rg_encode(4, 0).str() == "0000");
  CHECK(rg_encode(4, 1).str() == "0001");
  CHECK(rg_encode(4, 8).str() == "1100");
  CHECK(rg_decode(TritVec::parse("1010")) == 12);
  CHECK(rg_decode(TritVec::parse("1001")) == 14);
  CHECK(rg_decode(TritVec::parse("1000")) == 15);
  CHECK_THROWS_AS(rg_encode(4, 16), std::invalid_argument);
  CHECK_THROWS_AS(rg_decode(TritVec::parse("10M0")), std::invalid_argument);
}

TEST_CASE("encode/decode are mutually inverse bijections") {
  // exhaustive for B <= 12, sampled strides for B up to 20
  for (int B = 1; B <= 12; ++B) {
    std::set<uint64_t> seen;
    for (uint64_t x = 0; x < (1ull << B); ++x) {
      TritVec g = rg_encode(B, x);
      seen.insert(g.value_bits());
      CHECK(rg_decode(g) == x);
    }
    CHECK(seen.size() == (1ull << B));
  }
  for (int B = 13; B <= 20; ++B)
    for (uint64_t x = 0; x < (1ull << B); x += 997) CHECK(rg_decode(rg_encode(B, x)) == x);
}

TEST_CASE("consecutive codewords differ in exactly one position") {
  for (int B = 1; B <= 12; ++B)
    for (uint64_t x = 0; x + 1 < (1ull << B); ++x) {
      uint64_t d = rg_encode(B, x).value_bits() ^ rg_encode(B, x + 1).value_bits();
      CHECK((d != 0 && (d & (d - 1)) == 0));
    }
}

TEST_CASE("valid strings: enumeration, order, and classification") {
  auto vs = enumerate_valid(4);
  REQUIRE(vs.size() == 31);  // 2^{B+1} - 1
  CHECK(vs[0].bits.str() == "0000");
  CHECK(vs[1].bits.str() == "000M");
  CHECK(vs[2].bits.str() == "0001");
  CHECK(vs[3].bits.str() == "00M1");
  CHECK(vs[4].bits.str() == "0011");
  for (size_t i = 0; i < vs.size(); ++i) {
    CHECK(vs[i].rank == i);
    auto c = classify(vs[i].bits);
    REQUIRE(c.has_value());
    CHECK(c->rank == i);
    CHECK(c->between() == (i % 2 == 1));
    if (i > 0) CHECK(order_cmp(vs[i - 1], vs[i]) == -1);
  }
  CHECK(valid_by_rank(4, 7).str() == star(rg_encode(4, 3), rg_encode(4, 4)).str());
  CHECK_FALSE(is_valid(TritVec::parse("1MM0")));
  CHECK_FALSE(is_valid(TritVec::parse("0MM0")));
  CHECK(is_valid(TritVec::parse("0M10")));
  CHECK(is_valid(TritVec::parse("100M")));
  CHECK_THROWS_AS(require_valid(TritVec::parse("M0M1")), std::invalid_argument);
}

TEST_CASE("validity matches the brute-force definition, exhaustive B <= 8") {
  for (int B = 1; B <= 8; ++B) {
    std::set<std::string> ref;
    for (uint64_t x = 0; x < (1ull << B); ++x) {
      ref.insert(rg_encode(B, x).str());
      if (x + 1 < (1ull << B)) ref.insert(star(rg_encode(B, x), rg_encode(B, x + 1)).str());
    }
    CHECK(ref.size() == (2ull << B) - 1);
    long long n = 1;
    for (int i = 0; i < B; ++i) n *= 3;
    long long hits = 0;
    for (long long a = 0; a < n; ++a) {
      TritVec v(B);
      long long t = a;
      for (int i = 1; i <= B; ++i, t /= 3) v.set(i, static_cast<Trit>(t % 3));
      bool valid = is_valid(v);
      CHECK(valid == (ref.count(v.str()) == 1));
      hits += valid;
    }
    CHECK(hits == static_cast<long long>(ref.size()));
  }
}

TEST_CASE("between-strings end in the M, or in 1 followed by zeros") {
  for (int B = 1; B <= 10; ++B)
    for (auto& v : enumerate_valid(B)) {
      if (!v.between()) continue;
      int p = 1;
      while (v.bits.get(p) != Trit::vM) ++p;
      if (p < B) {
        CHECK(v.bits.get(p + 1) == Trit::v1);
        for (int j = p + 2; j <= B; ++j) CHECK(v.bits.get(j) == Trit::v0);
      }
    }
}

TEST_CASE("max/min closure oracle fixtures") {
  auto chk = [](const char* g, const char* h, const char* mx, const char* mn) {
    auto r = maxmin_closure_oracle(TritVec::parse(g), TritVec::parse(h));
    CHECK(r.first.str() == mx);
    CHECK(r.second.str() == mn);
    // symmetry
    auto s = maxmin_closure_oracle(TritVec::parse(h), TritVec::parse(g));
    CHECK(s.first.str() == mx);
    CHECK(s.second.str() == mn);
  };
  chk("1001", "1000", "1000", "1001");  // decode: 14 vs 15
  chk("0M10", "0010", "0M10", "0010");
  chk("0M10", "0110", "0110", "0M10");
  chk("0M10", "0M10", "0M10", "0M10");  // idempotent
}

TEST_CASE("oracle outputs are valid and order-consistent, exhaustive B <= 6") {
  for (int B = 1; B <= 6; ++B) {
    auto vs = enumerate_valid(B);
    for (auto& g : vs)
      for (auto& h : vs) {
        auto r = maxmin_closure_oracle(g.bits, h.bits);
        auto cmx = classify(r.first);
        auto cmn = classify(r.second);
        REQUIRE(cmx.has_value());
        REQUIRE(cmn.has_value());
        CHECK(cmx->rank == std::max(g.rank, h.rank));
        CHECK(cmn->rank == std::min(g.rank, h.rank));
      }
  }
}
