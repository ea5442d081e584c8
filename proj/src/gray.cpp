#include "mcsort/gray.hpp"

namespace mcsort::gray {

TritVec rg_encode(int B, uint64_t x) {
  if (B < 1 || B > 64) throw std::invalid_argument("rg_encode: width out of range [1,64]");
  if (B < 64 && (x >> B) != 0) throw std::invalid_argument("rg_encode: value out of range");
  return TritVec::stable(B, x ^ (x >> 1));
}

uint64_t rg_decode(const TritVec& g) {
  if (!g.stable_all()) throw std::invalid_argument("rg_decode: metastable bit present");
  uint64_t v = g.value_bits();
  for (int s = 1; s < 64; s <<= 1) v ^= v >> s;
  return v;
}

std::optional<ValidString> classify(const TritVec& x) {
  if (x.width() < 1) return std::nullopt;
  int mc = x.m_count();
  if (mc == 0) return ValidString{x, 2 * rg_decode(x)};
  if (mc > 1) return std::nullopt;
  uint64_t m = x.m_mask();
  uint64_t lo = rg_decode(TritVec::stable(x.width(), x.value_bits()));
  uint64_t hi = rg_decode(TritVec::stable(x.width(), x.value_bits() | m));
  if (lo > hi) std::swap(lo, hi);
  if (hi != lo + 1) return std::nullopt;
  return ValidString{x, 2 * lo + 1};
}

bool is_valid(const TritVec& x) { return classify(x).has_value(); }

ValidString require_valid(const TritVec& x) {
  auto v = classify(x);
  if (!v) throw std::invalid_argument("not a valid string: " + x.str());
  return *v;
}

TritVec valid_by_rank(int B, uint64_t rank) {
  uint64_t x = rank >> 1;
  TritVec g = rg_encode(B, x);
  if (!(rank & 1)) return g;
  return star(g, rg_encode(B, x + 1));
}

std::vector<ValidString> enumerate_valid(int B) {
  if (B < 1 || B > 20) throw std::invalid_argument("enumerate_valid: width out of range [1,20]");
  uint64_t n = (2ull << B) - 1;
  std::vector<ValidString> out;
  out.reserve(n);
  for (uint64_t r = 0; r < n; ++r) out.push_back(ValidString{valid_by_rank(B, r), r});
  return out;
}

int order_cmp(const ValidString& g, const ValidString& h) {
  if (g.bits.width() != h.bits.width()) throw std::invalid_argument("order_cmp: width mismatch");
  return g.rank < h.rank ? -1 : g.rank > h.rank ? 1 : 0;
}

std::pair<TritVec, TritVec> maxmin_closure_oracle(const TritVec& g, const TritVec& h) {
  require_valid(g);
  require_valid(h);
  if (g.width() != h.width()) throw std::invalid_argument("maxmin_closure_oracle: width mismatch");
  TritVec mx, mn;
  bool first = true;
  for_each_resolution(g, [&](const TritVec& gr) {
    uint64_t gv = rg_decode(gr);
    for_each_resolution(h, [&](const TritVec& hr) {
      uint64_t hv = rg_decode(hr);
      const TritVec& top = gv >= hv ? gr : hr;
      const TritVec& bot = gv >= hv ? hr : gr;
      if (first) {
        mx = top;
        mn = bot;
        first = false;
      } else {
        mx = star(mx, top);
        mn = star(mn, bot);
      }
    });
  });
  return {mx, mn};
}

}  // namespace mcsort::gray
