#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcsort/blocks.hpp"
#include "mcsort/netlist.hpp"
#include "mcsort/ppc.hpp"
#include "mcsort/trit.hpp"

namespace mcsort::sorter {

/* Operator-layer 2-sort(B): a width-(B-1) prefix circuit over the transition
 * operator followed by one output-operator stage per position, the first fed
 * by the constant 00 state. Inputs/outputs are bit pairs g_i h_i / max_i
 * min_i at ports 1..B. */
net::Netlist build_2sort_op(long long B, const net::Netlist& prefix);
net::Netlist build_2sort_op(long long B, const ppc::PpcConfig& cfg);

/* Gate-level expansion: port 2i-1 carries g_i / max_i, port 2i carries h_i /
 * min_i. */
net::Netlist build_2sort(long long B, const ppc::PpcConfig& cfg,
                         bool share_inverters = true);

struct SortingNetwork {
  int n = 1;
  std::vector<std::vector<std::pair<int, int>>> layers;  // 0-based channel pairs
  std::string provenance;
  size_t comparators() const;
};

SortingNetwork build_batcher(int n);
/* Validates user-supplied layers by the exhaustive 0-1 sweep. */
SortingNetwork build_explicit(int n,
                              std::vector<std::vector<std::pair<int, int>>> layers,
                              std::string name);
bool sorts_01(const SortingNetwork& net);  // exhaustive 2^n sweep, n <= 24

/* n values of B trits each; value v occupies ports (v-1)B+1 .. vB. Channel v
 * carries the v-th smallest value. */
net::Netlist build_nsorter(const SortingNetwork& network, long long B,
                           const ppc::PpcConfig& cfg, bool share_inverters = true);

/* Reference comparator: stable ascending sort of valid strings. */
std::vector<TritVec> sort_oracle(std::vector<TritVec> values);

struct VerifyReport {
  long long pairs = 0;
  long long mismatches = 0;
  /* first few mismatches as (g, h, got_max, got_min) literals */
  std::vector<std::array<std::string, 4>> counterexamples;
  double seconds = 0.0;
};

VerifyReport verify_exhaustive(long long B, const net::Netlist& gate_2sort,
                               int threads = 0);  // 0 = hardware default
std::string report_json(const VerifyReport& r);
std::string report_text(const VerifyReport& r);

}  // namespace mcsort::sorter
