#include "mcsort/blocks.hpp"

#include <array>
#include <stdexcept>

namespace mcsort::blocks {

using net::Kind;
using net::Netlist;

namespace {

int32_t emit_xmux(Netlist& n, int32_t sel1, int32_t sel2, int32_t x, int32_t y) {
  int32_t or1 = n.add_gate(Kind::Or2, sel2, x);
  int32_t and1 = n.add_gate(Kind::And2, x, sel1);
  int32_t and2 = n.add_gate(Kind::And2, y, or1);
  return n.add_gate(Kind::Or2, and2, and1);
}

/* Complement provider over the block's four inputs. Shared: one inverter per
 * signal, created on demand and reused by both xmuxes. Unshared: each xmux
 * carries a private bank of all four inverters. */
struct Inverters {
  Netlist& n;
  const std::array<int32_t, 4>& in;
  bool share;
  std::array<int32_t, 4> cache{-1, -1, -1, -1};

  void fresh_bank() {
    if (share) return;
    for (int i = 0; i < 4; ++i) cache[i] = n.add_gate(Kind::Not, in[i]);
  }
  int32_t neg(int i) {
    if (cache[i] < 0) cache[i] = n.add_gate(Kind::Not, in[i]);
    return cache[i];
  }
};

Netlist block_frame() {
  Netlist n;
  n.width_in = 4;
  n.width_out = 2;
  return n;
}

}  // namespace

Netlist build_xmux() {
  Netlist n;
  n.width_in = 4;
  n.width_out = 1;
  int32_t sel1 = n.add_input(1), sel2 = n.add_input(2);
  int32_t x = n.add_input(3), y = n.add_input(4);
  n.add_output(emit_xmux(n, sel1, sel2, x, y), 1);
  n.validate();
  return n;
}

Netlist build_diamond_block(bool share_inverters) {
  Netlist n = block_frame();
  std::array<int32_t, 4> in{n.add_input(1), n.add_input(2), n.add_input(3),
                            n.add_input(4)};  // s1 s2 b1 b2
  Inverters inv{n, in, share_inverters};
  enum { S1, S2, B1, B2 };
  inv.fresh_bank();
  int32_t o1 = emit_xmux(n, in[B1], inv.neg(B1), inv.neg(S2), in[S1]);
  inv.fresh_bank();
  int32_t o2 = emit_xmux(n, in[B2], inv.neg(B2), inv.neg(S1), in[S2]);
  n.add_output(o1, 1);
  n.add_output(o2, 2);
  n.validate();
  return n;
}

Netlist build_out_block(bool share_inverters) {
  Netlist n = block_frame();
  std::array<int32_t, 4> in{n.add_input(1), n.add_input(2), n.add_input(3),
                            n.add_input(4)};  // s1 s2 b1 b2
  Inverters inv{n, in, share_inverters};
  enum { S1, S2, B1, B2 };
  inv.fresh_bank();
  int32_t o1 = emit_xmux(n, inv.neg(S1), inv.neg(S2), in[B2], in[B1]);
  inv.fresh_bank();
  int32_t o2 = emit_xmux(n, in[S2], in[S1], in[B1], in[B2]);
  n.add_output(o1, 1);
  n.add_output(o2, 2);
  n.validate();
  return n;
}

BlockLibrary default_library(bool share_inverters) {
  return {build_diamond_block(share_inverters), build_out_block(share_inverters),
          share_inverters};
}

Netlist expand(const Netlist& op_graph, const BlockLibrary& lib) {
  if (!op_graph.op_layer)
    throw std::invalid_argument("expand: expected an operator-layer netlist");
  Netlist g;
  g.width_in = 2 * op_graph.width_in;
  g.width_out = 2 * op_graph.width_out;
  g.generator = op_graph.generator.empty()
                    ? std::string("expanded")
                    : op_graph.generator + " expanded share=" +
                          (lib.share ? "1" : "0");
  std::vector<std::pair<int32_t, int32_t>> w(op_graph.nodes.size(), {-1, -1});
  for (size_t i = 0; i < op_graph.nodes.size(); ++i) {
    const net::Node& nd = op_graph.nodes[i];
    switch (nd.kind) {
      case Kind::Input:
        w[i] = {g.add_input(2 * nd.port - 1), g.add_input(2 * nd.port)};
        break;
      case Kind::Output:
        g.add_output(w[nd.a].first, 2 * nd.port - 1);
        g.add_output(w[nd.a].second, 2 * nd.port);
        break;
      case Kind::Const0:
        w[i] = {g.add(net::Node{Kind::Const0, -1, -1, 0, 0, false, {}}),
                g.add(net::Node{Kind::Const0, -1, -1, 0, 0, false, {}})};
        break;
      case Kind::Buf:
        w[i] = {g.add_gate(Kind::Buf, w[nd.a].first),
                g.add_gate(Kind::Buf, w[nd.a].second)};
        break;
      case Kind::Opc: {
        const Netlist* blk = nullptr;
        if (nd.role == 0) blk = &lib.diamond;
        else if (nd.role == 1) blk = &lib.out;
        else throw std::invalid_argument("expand: unknown operator role");
        auto out = net::splice(g, *blk,
                               {w[nd.a].first, w[nd.a].second, w[nd.b].first,
                                w[nd.b].second});
        w[i] = {out[0], out[1]};
        break;
      }
      default:
        throw std::invalid_argument("expand: gate-layer node in operator graph");
    }
  }
  g.validate();
  return g;
}

}  // namespace mcsort::blocks
