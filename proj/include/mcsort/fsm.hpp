#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcsort/gray.hpp"
#include "mcsort/trit.hpp"

namespace mcsort::fsm {

/* A width-2 trit pair (comparison-FSM state or an input bit pair g_i h_i),
 * encoded as 3*t(first) + t(second) with t(0)=0, t(1)=1, t(M)=2:
 *   00=0  01=1  0M=2  10=3  11=4  1M=5  M0=6  M1=7  MM=8
 * Stable states carry the machine semantics: 00 equal prefix / even parity,
 * 11 equal prefix / odd parity, 01 g<h (absorbing), 10 g>h (absorbing). */
using Pair = uint8_t;

inline Pair pair_of(Trit a, Trit b) {
  return static_cast<Pair>(3 * static_cast<int>(a) + static_cast<int>(b));
}
inline Trit pair_first(Pair p) { return static_cast<Trit>(p / 3); }
inline Trit pair_second(Pair p) { return static_cast<Trit>(p % 3); }
inline bool pair_stable(Pair p) { return p / 3 < 2 && p % 3 < 2; }

Pair pair_parse(std::string_view s);
std::string pair_str(Pair p);
TritVec pair_vec(Pair p);
Pair pair_from_vec(const TritVec& v);

using Table9 = std::array<std::array<Pair, 9>, 9>;

/* Stable transition / output operators (FSM transition table). Both reject
 * metastable operands; use the _m closures for those. */
Pair diamond(Pair s, Pair b);
Pair out_op(Pair s, Pair b);

/* Metastable closures, served from tables precomputed via closure_apply. */
const Table9& diamond_m_table();
const Table9& out_m_table();
inline Pair diamond_m(Pair s, Pair b) { return diamond_m_table()[s][b]; }
inline Pair out_m(Pair s, Pair b) { return out_m_table()[s][b]; }

/* Closure of an arbitrary stable pair operator (shared machinery for the
 * tables above and for counterexample material like mod-4 addition). */
Table9 close_pair_op(Pair (*stable_op)(Pair, Pair));
Pair add_mod4(Pair x, Pair y);

struct AssocReport {
  bool associative = true;
  int triples_checked = 0;
  std::optional<std::array<Pair, 3>> counterexample;
};
AssocReport check_associativity(const Table9& op);

struct Trace {
  std::vector<Pair> states;   // s^(0..B), states[0] = 00
  std::vector<Pair> outputs;  // outputs[i-1] = out_M(s^(i-1), g_i h_i)
};
Trace fsm_trace(const TritVec& g, const TritVec& h);

/* Sequential reference 2-sort: assembles (max, min) from the trace. */
std::pair<TritVec, TritVec> two_sort_reference(const TritVec& g, const TritVec& h);

}  // namespace mcsort::fsm
