#include "mcsort/fsm.hpp"

namespace mcsort::fsm {

Pair pair_parse(std::string_view s) {
  if (s.size() != 2) throw std::invalid_argument("pair literal must have exactly 2 characters");
  return pair_of(trit_from_char(s[0]), trit_from_char(s[1]));
}

std::string pair_str(Pair p) {
  std::string s;
  s.push_back(to_char(pair_first(p)));
  s.push_back(to_char(pair_second(p)));
  return s;
}

TritVec pair_vec(Pair p) {
  TritVec v(2);
  v.set(1, pair_first(p));
  v.set(2, pair_second(p));
  return v;
}

Pair pair_from_vec(const TritVec& v) {
  if (v.width() != 2) throw std::invalid_argument("pair_from_vec: width must be 2");
  return pair_of(v.get(1), v.get(2));
}

namespace {

/* 2-bit encoding of a stable pair: 2*first + second. */
int code2(Pair p) {
  if (!pair_stable(p)) throw std::invalid_argument("operator requires stable operands");
  return 2 * static_cast<int>(pair_first(p)) + static_cast<int>(pair_second(p));
}

Pair from_code2(int v) {
  return pair_of(static_cast<Trit>((v >> 1) & 1), static_cast<Trit>(v & 1));
}

constexpr Pair kLt = 1;  // 01
constexpr Pair kGt = 3;  // 10

}  // namespace

Pair diamond(Pair s, Pair b) {
  int sv = code2(s), bv = code2(b);
  if (s == kLt || s == kGt) return s;  // absorbing decisions
  return from_code2(sv ^ bv);          // parity tracking in states 00/11
}

Pair out_op(Pair s, Pair b) {
  // rows/cols indexed by the 2-bit codes 00,01,10,11; entries are codes of
  // (max bit, min bit).
  static constexpr int table[4][4] = {
      {0, 2, 2, 3},  // state 00: equal prefix, even parity
      {0, 2, 1, 3},  // state 01: g < h, output (h_i, g_i)
      {0, 1, 2, 3},  // state 10: g > h, output (g_i, h_i)
      {0, 1, 1, 3},  // state 11: equal prefix, odd parity
  };
  return from_code2(table[code2(s)][code2(b)]);
}

namespace {

Table9 close_impl(Pair (*op)(Pair, Pair)) {
  Table9 t{};
  for (Pair s = 0; s < 9; ++s) {
    for (Pair b = 0; b < 9; ++b) {
      TritVec in(4);
      in.set(1, pair_first(s));
      in.set(2, pair_second(s));
      in.set(3, pair_first(b));
      in.set(4, pair_second(b));
      TritVec r = closure_apply(2, [&](const TritVec& x) {
        return pair_vec(op(pair_of(x.get(1), x.get(2)), pair_of(x.get(3), x.get(4))));
      }, in);
      t[s][b] = pair_from_vec(r);
    }
  }
  return t;
}

}  // namespace

Table9 close_pair_op(Pair (*stable_op)(Pair, Pair)) { return close_impl(stable_op); }

const Table9& diamond_m_table() {
  static const Table9 t = close_impl(&diamond);
  return t;
}

const Table9& out_m_table() {
  static const Table9 t = close_impl(&out_op);
  return t;
}

Pair add_mod4(Pair x, Pair y) {
  int s = (code2(x) + code2(y)) & 3;
  return from_code2(s);
}

AssocReport check_associativity(const Table9& op) {
  AssocReport r;
  for (Pair x = 0; x < 9; ++x)
    for (Pair y = 0; y < 9; ++y)
      for (Pair z = 0; z < 9; ++z) {
        ++r.triples_checked;
        if (op[op[x][y]][z] != op[x][op[y][z]]) {
          if (r.associative) {
            r.associative = false;
            r.counterexample = {x, y, z};
          }
        }
      }
  return r;
}

Trace fsm_trace(const TritVec& g, const TritVec& h) {
  gray::require_valid(g);
  gray::require_valid(h);
  if (g.width() != h.width()) throw std::invalid_argument("fsm_trace: width mismatch");
  int B = g.width();
  Trace t;
  t.states.reserve(B + 1);
  t.outputs.reserve(B);
  Pair s = 0;  // 00
  t.states.push_back(s);
  for (int i = 1; i <= B; ++i) {
    Pair b = pair_of(g.get(i), h.get(i));
    t.outputs.push_back(out_m(s, b));
    s = diamond_m(s, b);
    t.states.push_back(s);
  }
  return t;
}

std::pair<TritVec, TritVec> two_sort_reference(const TritVec& g, const TritVec& h) {
  Trace t = fsm_trace(g, h);
  int B = g.width();
  TritVec mx(B), mn(B);
  for (int i = 1; i <= B; ++i) {
    mx.set(i, pair_first(t.outputs[i - 1]));
    mn.set(i, pair_second(t.outputs[i - 1]));
  }
  return {mx, mn};
}

}  // namespace mcsort::fsm
