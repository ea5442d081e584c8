#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcsort {

/* Three-valued (Kleene) signal value: 0, 1, or metastable M. */
enum class Trit : uint8_t { v0 = 0, v1 = 1, vM = 2 };

inline char to_char(Trit t) { return t == Trit::v0 ? '0' : t == Trit::v1 ? '1' : 'M'; }

inline Trit trit_from_char(char c) {
  switch (c) {
    case '0': return Trit::v0;
    case '1': return Trit::v1;
    case 'M': return Trit::vM;
    default: throw std::invalid_argument(std::string("bad trit literal character '") + c + "'");
  }
}

/* Kleene gate semantics: AND(0,x)=0 and OR(1,x)=1 mask M; every other
 * combination involving M yields M. */
inline Trit and3(Trit a, Trit b) {
  if (a == Trit::v0 || b == Trit::v0) return Trit::v0;
  if (a == Trit::v1 && b == Trit::v1) return Trit::v1;
  return Trit::vM;
}

inline Trit or3(Trit a, Trit b) {
  if (a == Trit::v1 || b == Trit::v1) return Trit::v1;
  if (a == Trit::v0 && b == Trit::v0) return Trit::v0;
  return Trit::vM;
}

inline Trit not3(Trit a) {
  return a == Trit::v0 ? Trit::v1 : a == Trit::v1 ? Trit::v0 : Trit::vM;
}

enum class GateKind : uint8_t { And, Or, Not, Buf };

Trit gate_eval(GateKind kind, const std::vector<Trit>& inputs);

/* Fixed-width vector of trits, indexed 1..B with index 1 the most
 * significant / leftmost position (notation g = g_1 g_2 ... g_B).
 * Packed into two words: value bits and a metastability mask. Position i
 * lives at machine bit (width - i), so a fully stable vector's value bits
 * read as the natural binary number with g_1 as MSB. */
class TritVec {
 public:
  TritVec() = default;
  explicit TritVec(int width) : w_(check_width(width)) {}

  static TritVec stable(int width, uint64_t bits) {
    TritVec v(width);
    if (width < 64 && (bits >> width) != 0)
      throw std::invalid_argument("stable bits exceed width");
    v.val_ = bits;
    return v;
  }

  static TritVec raw(int width, uint64_t val, uint64_t msk) {
    TritVec v(width);
    uint64_t keep = (width == 64) ? ~0ull : ((1ull << width) - 1);
    v.msk_ = msk & keep;
    v.val_ = val & keep & ~v.msk_;
    return v;
  }

  static TritVec parse(std::string_view s) {
    TritVec v(static_cast<int>(s.size()));
    for (int i = 1; i <= v.w_; ++i) v.set(i, trit_from_char(s[static_cast<size_t>(i - 1)]));
    return v;
  }

  int width() const { return w_; }

  Trit get(int i) const {
    check_index(i);
    uint64_t bit = 1ull << (w_ - i);
    if (msk_ & bit) return Trit::vM;
    return (val_ & bit) ? Trit::v1 : Trit::v0;
  }

  void set(int i, Trit t) {
    check_index(i);
    uint64_t bit = 1ull << (w_ - i);
    val_ &= ~bit;
    msk_ &= ~bit;
    if (t == Trit::v1) val_ |= bit;
    if (t == Trit::vM) msk_ |= bit;
  }

  bool stable_all() const { return msk_ == 0; }
  uint64_t value_bits() const { return val_; }  // M positions read as 0
  uint64_t m_mask() const { return msk_; }
  int m_count() const { return __builtin_popcountll(msk_); }

  /* Contiguous inclusive substring g_{i,j}, 1-based. */
  TritVec slice(int i, int j) const {
    check_index(i);
    check_index(j);
    if (j < i) throw std::invalid_argument("empty slice");
    TritVec r(j - i + 1);
    int shift = w_ - j;
    uint64_t keep = (r.w_ == 64) ? ~0ull : ((1ull << r.w_) - 1);
    r.val_ = (val_ >> shift) & keep;
    r.msk_ = (msk_ >> shift) & keep;
    return r;
  }

  std::string str() const {
    std::string s;
    s.reserve(static_cast<size_t>(w_));
    for (int i = 1; i <= w_; ++i) s.push_back(to_char(get(i)));
    return s;
  }

  bool operator==(const TritVec&) const = default;

 private:
  static int check_width(int w) {
    if (w < 0 || w > 64) throw std::invalid_argument("TritVec width out of range [0,64]");
    return w;
  }
  void check_index(int i) const {
    if (i < 1 || i > w_) throw std::invalid_argument("TritVec index out of range");
  }

  uint64_t val_ = 0;
  uint64_t msk_ = 0;  // invariant: msk_ bit set => val_ bit clear
  int w_ = 0;
};

/* Superposition: (x*y)_i = x_i where x_i = y_i, M elsewhere. */
inline TritVec star(const TritVec& x, const TritVec& y) {
  if (x.width() != y.width()) throw std::invalid_argument("star: width mismatch");
  uint64_t m = x.m_mask() | y.m_mask() | (x.value_bits() ^ y.value_bits());
  return TritVec::raw(x.width(), x.value_bits(), m);
}

/* Streams every stable string agreeing with x on its stable positions
 * (2^(#M) strings, submask enumeration order: M positions count up). */
template <class F>
void for_each_resolution(const TritVec& x, F&& f) {
  uint64_t m = x.m_mask();
  uint64_t base = x.value_bits();
  uint64_t sub = 0;
  while (true) {
    f(TritVec::stable(x.width(), base | sub));
    sub = (sub - m) & m;
    if (sub == 0) break;
  }
}

std::vector<TritVec> resolutions(const TritVec& x);  // materialized; width <= 16 only

/* Explicit truth table of a stable function B^n -> B^m, n <= 8.
 * out[idx] holds the output's value bits, idx the input's value bits. */
struct TruthTable {
  int n = 0, m = 0;
  std::vector<uint64_t> out;
};

TruthTable tabulate(int n, int m, const std::function<TritVec(const TritVec&)>& f);

/* Metastable closure f_M(x) = * f(res(x)). */
TritVec closure_apply(const TruthTable& f, const TritVec& x);
TritVec closure_apply(int m, const std::function<TritVec(const TritVec&)>& f, const TritVec& x);

}  // namespace mcsort
