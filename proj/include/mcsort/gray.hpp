#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcsort/trit.hpp"

namespace mcsort::gray {

/* Binary reflected Gray code, MSB first: rg_B(x) = x ^ (x >> 1),
 * equivalent to the recursive reflect-and-prefix definition. */
TritVec rg_encode(int B, uint64_t x);
uint64_t rg_decode(const TritVec& g);  // inverse; rejects metastable bits

/* A member of the valid-string set: either the codeword rg_B(x) (rank 2x)
 * or the superposition rg_B(x)*rg_B(x+1) with its single M bit (rank 2x+1).
 * Ranks are strictly increasing along the total order. */
struct ValidString {
  TritVec bits;
  uint64_t rank = 0;
  bool between() const { return rank & 1; }
  uint64_t low_value() const { return rank >> 1; }
};

std::optional<ValidString> classify(const TritVec& x);
bool is_valid(const TritVec& x);
ValidString require_valid(const TritVec& x);  // throws std::invalid_argument

/* All 2^{B+1}-1 valid strings in strictly increasing order:
 * rg(0), rg(0)*rg(1), rg(1), rg(1)*rg(2), ... */
std::vector<ValidString> enumerate_valid(int B);
TritVec valid_by_rank(int B, uint64_t rank);  // rank in [0, 2^{B+1}-2]

int order_cmp(const ValidString& g, const ValidString& h);  // -1 / 0 / +1

/* Definitional oracle for (max_M, min_M): fold the stable Gray-code
 * max/min (by decoded value) over res(g) x res(h) with the * operator. */
std::pair<TritVec, TritVec> maxmin_closure_oracle(const TritVec& g, const TritVec& h);

}  // namespace mcsort::gray
