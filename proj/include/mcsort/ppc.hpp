#pragma once

#include <string>
#include <vector>

#include "mcsort/netlist.hpp"

namespace mcsort::ppc {

/* Fibonacci numbers with F_1 = F_2 = 1. */
long long fib(int i);
int clog2(long long b);  // ceiling log2, b >= 1

/* Exact rational arithmetic for the duplication labels a(v) and the size
 * predictors; 128-bit storage keeps products of f-power denominators exact. */
struct Rat {
  __int128 n = 0;
  __int128 d = 1;
  Rat() = default;
  Rat(long long v) : n(v) {}
  Rat(__int128 nn, __int128 dd);
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat div(long long k) const;
  long long floor_val() const;  // requires value >= 0
  double dbl() const;
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const;
  bool operator==(const Rat& o) const;
  std::string str() const;
};

/* Recursion tree of the size-optimal construction. For width 2^b this is the
 * Fibonacci tree; other widths make the rightmost spine irregular while all
 * left branches stay complete powers of two. */
struct TreeNode {
  enum Kind { Leaf, Left, Right } kind = Leaf;
  int depth = 0;          // recursion depth of the node
  int alpha = 0;          // number of left steps above the node
  long long lo = 1;       // first raw input of the node's range (1-based)
  long long wslices = 1;  // subcircuit width = range width / 2^alpha
  Rat a;                  // extra-copy label for fan-out bounding
  int ch[2] = {-1, -1};   // children (Left has one, Right two)
};

struct RecTree {
  std::vector<TreeNode> nodes;
  int root = -1;
};

/* f = 0 builds the tree with all a(v) = 0 (unbounded fan-out). */
RecTree rec_tree(long long width, int f);

enum class Split { Unbalanced, Balanced };

struct PpcConfig {
  long long width = 1;
  int k = 0;                       // extra-depth left steps in [0, clog2(width)]
  int fanout = 0;                  // 0 = unbounded, else >= 3 (implies buffers)
  bool buffers = false;            // insert the fan-out-2 buffers
  Split split = Split::Unbalanced; // Balanced is the halved-split baseline
  void check() const;              // throws std::invalid_argument
  std::string str() const;         // round-trippable flag string
};
PpcConfig parse_config(const std::string& s);

/* Generators. All produce operator-layer netlists with role-0 operator nodes
 * and dense deterministic ids; the config is recorded in netlist.generator. */
net::Netlist build_serial(long long B);
net::Netlist build_tree(int b);  // width 2^b, plain
net::Netlist build_general(const PpcConfig& cfg);

/* Wraps a width-ceil(B/2) prefix circuit in one halving step: pairwise merge
 * operators in front, reconstruction operators behind (odd B passes the last
 * wire straight through). */
net::Netlist build_left_step(const net::Netlist& inner, long long B);

/* Rebuilds from the recorded generator config with buffers / a fan-out bound
 * switched on; source must carry a PPC generator record. */
net::Netlist insert_buffers(const net::Netlist& g);
net::Netlist bound_fanout(const net::Netlist& g, int f);

/* Closed-form predictors. */
long long tree_size(int b);            // operator count of the width-2^b tree
int tree_depth(int b);                 // operator depth of the same
long long cor2_bound(long long B);     // strict size bound, arbitrary width, k = 0
Rat thm5_bound(long long B, int k);    // size bound with k extra-depth steps
long long buffer_count_stated(int b);  // 2^b + 2^{b-1} - F_{b+3}
long long buffer_count_literal(int b); // buffers the construction inserts
long long kogge_stone_size(long long l);
/* Upper bound on extra operator copies of the fan-out-f width-2^b circuit:
 * sum of floor(a(v)) over right nodes plus the per-leaf aggregation bound
 * f*a(v)/(f-2) + 2^{alpha-1}/(f-1). */
Rat fanout_extra_bound(int b, int f);

}  // namespace mcsort::ppc
