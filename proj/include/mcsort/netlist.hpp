#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mcsort/trit.hpp"

namespace mcsort::net {

/* Node kinds shared by both circuit layers. At the operator layer a wire
 * carries a 2-trit pair and the kinds in use are Input/Output/Opc/Buf/Const0
 * (Const0 denoting the constant 00 state); at the gate layer a wire carries a
 * single trit and Opc does not occur. */
enum class Kind : uint8_t { Input, Output, And2, Or2, Not, Buf, Const0, Const1, Opc };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& s);
int kind_arity(Kind k);  // number of fanins

struct Node {
  Kind kind = Kind::Buf;
  int32_t a = -1, b = -1;  // fanin ids; -1 = unused slot
  int32_t port = 0;        // 1-based index for Input/Output, else 0
  uint8_t role = 0;        // Opc only: which operator the block computes
  bool exempt = false;     // excluded from the strict fan-out audit
  std::string tag;         // provenance label (recursion-tree path etc.)
};

/* Immutable-after-build DAG. Node ids are dense and assigned in construction
 * order; fanins always precede their sinks, so the id order is topological. */
struct Netlist {
  int width_in = 0;
  int width_out = 0;
  bool op_layer = false;
  std::string generator;  // flag-style description of how it was built
  std::vector<Node> nodes;

  int32_t add(Node n);
  int32_t add_input(int port);
  int32_t add_output(int32_t src, int port);
  int32_t add_gate(Kind k, int32_t a, int32_t b = -1);
  int32_t add_opc(uint8_t role, int32_t a, int32_t b, std::string tag = {});

  void validate() const;  // throws std::invalid_argument on contract violations
  std::vector<int32_t> outputs_by_port() const;
  std::vector<int> fanout_counts() const;  // sinks per node (Output counts as a sink)
};

/* Drops nodes unreachable from any Output and renumbers densely, keeping the
 * relative (topological) order. */
Netlist sweep(const Netlist& n);

/* Copies `src` into `dst`, wiring src's input port p to drivers[p-1]; src's
 * Output nodes are not copied, their drivers are returned by port. */
std::vector<int32_t> splice(Netlist& dst, const Netlist& src,
                            const std::vector<int32_t>& drivers);

struct Metrics {
  long long size_opc = 0;  // Opc node count
  long long size_buf = 0;  // Buf node count
  std::map<std::string, long long> gate_counts;
  int depth = 0;      // counted nodes on the longest path: Opc only at the
                      // operator layer; And/Or/Not/Buf at the gate layer
  int depth_buf = 0;  // operator layer: longest path counting Opc and Buf
  int max_fanout = 0;            // over all nodes
  int max_fanout_audited = 0;    // excluding Input and exempt-flagged nodes
  int max_fanout_inputs = 0;     // over Input nodes only
  std::map<int, long long> fanout_histogram;  // over all nodes
};

Metrics metrics(const Netlist& n);

/* Gate-layer simulator: flattens the node list once, then evaluates with a
 * caller-owned scratch buffer so one shared instance serves many threads. */
class GateSim {
 public:
  explicit GateSim(const Netlist& n);
  int width_in() const { return win_; }
  int width_out() const { return wout_; }
  size_t scratch_size() const { return kind_.size(); }
  /* in[i] / out[i]: trit at port i+1, encoded 0/1/2. */
  void run(const uint8_t* in, uint8_t* out, std::vector<uint8_t>& scratch) const;
  TritVec run(const TritVec& in) const;

 private:
  int win_ = 0, wout_ = 0;
  std::vector<uint8_t> kind_;
  std::vector<int32_t> a_, b_;
  std::vector<std::pair<int32_t, int32_t>> out_src_;  // (node, port-1)
};

/* Operator-layer simulator over 2-trit pairs encoded 0..8. Each Opc role is
 * served by an 81-entry table (row-major 9x9), e.g. the transition/output
 * closures from the comparison FSM. */
class OpSim {
 public:
  OpSim(const Netlist& n, std::vector<const uint8_t*> role_tables,
        uint8_t const0 = 0);
  int width_in() const { return win_; }
  int width_out() const { return wout_; }
  void run(const uint8_t* in, uint8_t* out, std::vector<uint8_t>& scratch) const;
  std::vector<uint8_t> run(const std::vector<uint8_t>& in) const;

 private:
  int win_ = 0, wout_ = 0;
  uint8_t const0_;
  std::vector<uint8_t> kind_;
  std::vector<uint8_t> role_;
  std::vector<int32_t> a_, b_;
  std::vector<const uint8_t*> tables_;
  std::vector<std::pair<int32_t, int32_t>> out_src_;
};

/* Generic operator-layer fold for symbolic checks: `in(port)` supplies input
 * values, `op(role, x, y)` the operator, `c0` the constant. */
template <class V, class InFn, class OpFn>
std::vector<V> eval_op_graph(const Netlist& n, InFn&& in, OpFn&& op, const V& c0) {
  std::vector<V> val(n.nodes.size());
  std::vector<V> out(n.width_out);
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const Node& nd = n.nodes[i];
    switch (nd.kind) {
      case Kind::Input: val[i] = in(nd.port); break;
      case Kind::Const0: val[i] = c0; break;
      case Kind::Buf: val[i] = val[nd.a]; break;
      case Kind::Opc: val[i] = op(nd.role, val[nd.a], val[nd.b]); break;
      case Kind::Output:
        val[i] = val[nd.a];
        out[nd.port - 1] = val[i];
        break;
      default: throw std::invalid_argument("eval_op_graph: gate-layer node in operator graph");
    }
  }
  return out;
}

/* Serialization. JSON schema:
 * {"width_in": n, "width_out": m, "nodes": [{"id", "kind", "fanin",
 *  "port", "meta"}, ...]} plus optional top-level "op_layer"/"generator". */
std::string export_json(const Netlist& n);
Netlist import_json(const std::string& text);  // throws std::invalid_argument with location
std::string export_dot(const Netlist& n);

}  // namespace mcsort::net
