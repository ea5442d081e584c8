#pragma once

#include "mcsort/netlist.hpp"

namespace mcsort::blocks {

/* Extended multiplexer y(x + sel2) + x sel1: inputs sel1, sel2, x, y on ports
 * 1..4, one output; 2 AND + 2 OR gates, depth 3. */
net::Netlist build_xmux();

/* Two-xmux blocks over a state pair s (ports 1,2) and a bit pair b (ports
 * 3,4), outputs ports 1,2. With shared inverters each required complemented
 * signal is generated once per block; without sharing each xmux instantiates
 * its own four-inverter bank. */
net::Netlist build_diamond_block(bool share_inverters = true);
net::Netlist build_out_block(bool share_inverters = true);

/* Gate templates for operator roles: role 0 = transition closure, role 1 =
 * output closure. */
struct BlockLibrary {
  net::Netlist diamond;
  net::Netlist out;
  bool share = true;
};
BlockLibrary default_library(bool share_inverters = true);

/* Expands an operator-layer netlist into gates: pair wire i becomes trit
 * wires 2i-1, 2i; each operator node becomes one block instance. */
net::Netlist expand(const net::Netlist& op_graph, const BlockLibrary& lib);

}  // namespace mcsort::blocks
