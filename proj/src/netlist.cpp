#include "mcsort/netlist.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace mcsort::net {

namespace {
constexpr const char* kNames[] = {"INPUT", "OUTPUT", "AND2", "OR2", "NOT",
                                  "BUF",   "CONST0", "CONST1", "OPC"};
}

const char* kind_name(Kind k) { return kNames[static_cast<int>(k)]; }

Kind kind_from_name(const std::string& s) {
  for (int i = 0; i < 9; ++i)
    if (s == kNames[i]) return static_cast<Kind>(i);
  throw std::invalid_argument("unknown node kind: " + s);
}

int kind_arity(Kind k) {
  switch (k) {
    case Kind::Input:
    case Kind::Const0:
    case Kind::Const1: return 0;
    case Kind::Output:
    case Kind::Not:
    case Kind::Buf: return 1;
    default: return 2;
  }
}

int32_t Netlist::add(Node n) {
  nodes.push_back(std::move(n));
  return static_cast<int32_t>(nodes.size()) - 1;
}

int32_t Netlist::add_input(int port) {
  Node n;
  n.kind = Kind::Input;
  n.port = port;
  return add(n);
}

int32_t Netlist::add_output(int32_t src, int port) {
  Node n;
  n.kind = Kind::Output;
  n.a = src;
  n.port = port;
  return add(n);
}

int32_t Netlist::add_gate(Kind k, int32_t a, int32_t b) {
  Node n;
  n.kind = k;
  n.a = a;
  n.b = b;
  return add(n);
}

int32_t Netlist::add_opc(uint8_t role, int32_t a, int32_t b, std::string tag) {
  Node n;
  n.kind = Kind::Opc;
  n.role = role;
  n.a = a;
  n.b = b;
  n.tag = std::move(tag);
  return add(n);
}

void Netlist::validate() const {
  std::vector<int> in_seen(width_in + 1, 0), out_seen(width_out + 1, 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    int ar = kind_arity(n.kind);
    int32_t f[2] = {n.a, n.b};
    for (int j = 0; j < 2; ++j) {
      if (j < ar) {
        if (f[j] < 0 || f[j] >= static_cast<int32_t>(i))
          throw std::invalid_argument("node " + std::to_string(i) +
                                      ": fanin must reference an earlier node");
      } else if (f[j] != -1) {
        throw std::invalid_argument("node " + std::to_string(i) + ": excess fanin");
      }
    }
    if (n.kind == Kind::Opc && !op_layer)
      throw std::invalid_argument("OPC node in a gate-layer netlist");
    if ((n.kind == Kind::And2 || n.kind == Kind::Or2 || n.kind == Kind::Not ||
         n.kind == Kind::Const1) && op_layer)
      throw std::invalid_argument("gate-layer node in an operator graph");
    if (n.kind == Kind::Input) {
      if (n.port < 1 || n.port > width_in)
        throw std::invalid_argument("input port out of range");
      ++in_seen[n.port];
    }
    if (n.kind == Kind::Output) {
      if (n.port < 1 || n.port > width_out)
        throw std::invalid_argument("output port out of range");
      ++out_seen[n.port];
    }
  }
  for (int p = 1; p <= width_in; ++p)
    if (in_seen[p] != 1)
      throw std::invalid_argument("input port " + std::to_string(p) +
                                  " bound " + std::to_string(in_seen[p]) + " times");
  for (int p = 1; p <= width_out; ++p)
    if (out_seen[p] != 1)
      throw std::invalid_argument("output port " + std::to_string(p) +
                                  " bound " + std::to_string(out_seen[p]) + " times");
}

std::vector<int32_t> Netlist::outputs_by_port() const {
  std::vector<int32_t> out(width_out, -1);
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].kind == Kind::Output) out[nodes[i].port - 1] = static_cast<int32_t>(i);
  return out;
}

std::vector<int> Netlist::fanout_counts() const {
  std::vector<int> f(nodes.size(), 0);
  for (const Node& n : nodes) {
    if (n.a >= 0) ++f[n.a];
    if (n.b >= 0) ++f[n.b];
  }
  return f;
}

Netlist sweep(const Netlist& n) {
  std::vector<char> live(n.nodes.size(), 0);
  std::vector<int32_t> stack;
  for (size_t i = 0; i < n.nodes.size(); ++i)
    if (n.nodes[i].kind == Kind::Output) {
      live[i] = 1;
      stack.push_back(static_cast<int32_t>(i));
    }
  while (!stack.empty()) {
    int32_t v = stack.back();
    stack.pop_back();
    for (int32_t f : {n.nodes[v].a, n.nodes[v].b})
      if (f >= 0 && !live[f]) {
        live[f] = 1;
        stack.push_back(f);
      }
  }
  // inputs stay even if dangling, so the port contract survives the sweep
  for (size_t i = 0; i < n.nodes.size(); ++i)
    if (n.nodes[i].kind == Kind::Input) live[i] = 1;
  Netlist r;
  r.width_in = n.width_in;
  r.width_out = n.width_out;
  r.op_layer = n.op_layer;
  r.generator = n.generator;
  std::vector<int32_t> remap(n.nodes.size(), -1);
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    if (!live[i]) continue;
    Node nd = n.nodes[i];
    if (nd.a >= 0) nd.a = remap[nd.a];
    if (nd.b >= 0) nd.b = remap[nd.b];
    remap[i] = r.add(std::move(nd));
  }
  return r;
}

std::vector<int32_t> splice(Netlist& dst, const Netlist& src,
                            const std::vector<int32_t>& drivers) {
  if (static_cast<int>(drivers.size()) != src.width_in)
    throw std::invalid_argument("splice: driver count does not match input width");
  std::vector<int32_t> map(src.nodes.size(), -1);
  std::vector<int32_t> out(src.width_out, -1);
  for (size_t i = 0; i < src.nodes.size(); ++i) {
    const Node& nd = src.nodes[i];
    if (nd.kind == Kind::Input) {
      map[i] = drivers[nd.port - 1];
    } else if (nd.kind == Kind::Output) {
      out[nd.port - 1] = map[nd.a];
    } else {
      Node c = nd;
      if (c.a >= 0) c.a = map[c.a];
      if (c.b >= 0) c.b = map[c.b];
      c.port = 0;
      map[i] = dst.add(std::move(c));
    }
  }
  return out;
}

Metrics metrics(const Netlist& n) {
  Metrics m;
  std::vector<int> d(n.nodes.size(), 0), db(n.nodes.size(), 0);
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const Node& nd = n.nodes[i];
    ++m.gate_counts[kind_name(nd.kind)];
    if (nd.kind == Kind::Opc) ++m.size_opc;
    if (nd.kind == Kind::Buf) ++m.size_buf;
    int in_d = 0, in_db = 0;
    for (int32_t f : {nd.a, nd.b})
      if (f >= 0) {
        in_d = std::max(in_d, d[f]);
        in_db = std::max(in_db, db[f]);
      }
    int unit;
    if (n.op_layer)
      unit = nd.kind == Kind::Opc ? 1 : 0;
    else
      unit = (nd.kind == Kind::And2 || nd.kind == Kind::Or2 || nd.kind == Kind::Not ||
              nd.kind == Kind::Buf)
                 ? 1
                 : 0;
    int unit_b = n.op_layer ? (nd.kind == Kind::Opc || nd.kind == Kind::Buf ? 1 : 0) : unit;
    d[i] = in_d + unit;
    db[i] = in_db + unit_b;
    m.depth = std::max(m.depth, d[i]);
    m.depth_buf = std::max(m.depth_buf, db[i]);
  }
  auto fo = n.fanout_counts();
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const Node& nd = n.nodes[i];
    if (nd.kind == Kind::Output) continue;  // sinks, not drivers
    ++m.fanout_histogram[fo[i]];
    m.max_fanout = std::max(m.max_fanout, fo[i]);
    if (nd.kind == Kind::Input)
      m.max_fanout_inputs = std::max(m.max_fanout_inputs, fo[i]);
    else if (!nd.exempt)
      m.max_fanout_audited = std::max(m.max_fanout_audited, fo[i]);
  }
  return m;
}

GateSim::GateSim(const Netlist& n) : win_(n.width_in), wout_(n.width_out) {
  if (n.op_layer) throw std::invalid_argument("GateSim: operator graph");
  n.validate();
  kind_.reserve(n.nodes.size());
  a_.reserve(n.nodes.size());
  b_.reserve(n.nodes.size());
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const Node& nd = n.nodes[i];
    kind_.push_back(static_cast<uint8_t>(nd.kind));
    // Input nodes store port-1 in the fanin slot so run() is branch-light.
    a_.push_back(nd.kind == Kind::Input ? nd.port - 1 : nd.a);
    b_.push_back(nd.b);
    if (nd.kind == Kind::Output)
      out_src_.emplace_back(static_cast<int32_t>(i), nd.port - 1);
  }
}

namespace {
constexpr uint8_t kAnd[9] = {0, 0, 0, 0, 1, 2, 0, 2, 2};  // index 3*a+b
constexpr uint8_t kOr[9] = {0, 1, 2, 1, 1, 1, 2, 1, 2};
constexpr uint8_t kNot[3] = {1, 0, 2};
}  // namespace

void GateSim::run(const uint8_t* in, uint8_t* out, std::vector<uint8_t>& scratch) const {
  scratch.resize(kind_.size());
  uint8_t* v = scratch.data();
  for (size_t i = 0; i < kind_.size(); ++i) {
    switch (static_cast<Kind>(kind_[i])) {
      case Kind::Input: v[i] = in[a_[i]]; break;
      case Kind::And2: v[i] = kAnd[3 * v[a_[i]] + v[b_[i]]]; break;
      case Kind::Or2: v[i] = kOr[3 * v[a_[i]] + v[b_[i]]]; break;
      case Kind::Not: v[i] = kNot[v[a_[i]]]; break;
      case Kind::Buf:
      case Kind::Output: v[i] = v[a_[i]]; break;
      case Kind::Const0: v[i] = 0; break;
      case Kind::Const1: v[i] = 1; break;
      default: throw std::logic_error("GateSim: unexpected node kind");
    }
  }
  for (auto [node, port] : out_src_) out[port] = v[node];
}

TritVec GateSim::run(const TritVec& in) const {
  if (in.width() != win_) throw std::invalid_argument("GateSim: input width mismatch");
  std::vector<uint8_t> iv(win_), ov(wout_), scratch;
  for (int i = 1; i <= win_; ++i) iv[i - 1] = static_cast<uint8_t>(in.get(i));
  run(iv.data(), ov.data(), scratch);
  TritVec out(wout_);
  for (int i = 1; i <= wout_; ++i) out.set(i, static_cast<Trit>(ov[i - 1]));
  return out;
}

OpSim::OpSim(const Netlist& n, std::vector<const uint8_t*> role_tables, uint8_t const0)
    : win_(n.width_in), wout_(n.width_out), const0_(const0), tables_(std::move(role_tables)) {
  if (!n.op_layer) throw std::invalid_argument("OpSim: gate-layer netlist");
  n.validate();
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const Node& nd = n.nodes[i];
    if (nd.kind == Kind::Opc && nd.role >= tables_.size())
      throw std::invalid_argument("OpSim: no table for operator role " +
                                  std::to_string(nd.role));
    kind_.push_back(static_cast<uint8_t>(nd.kind));
    role_.push_back(nd.role);
    a_.push_back(nd.kind == Kind::Input ? nd.port - 1 : nd.a);
    b_.push_back(nd.b);
    if (nd.kind == Kind::Output)
      out_src_.emplace_back(static_cast<int32_t>(i), nd.port - 1);
  }
}

void OpSim::run(const uint8_t* in, uint8_t* out, std::vector<uint8_t>& scratch) const {
  scratch.resize(kind_.size());
  uint8_t* v = scratch.data();
  for (size_t i = 0; i < kind_.size(); ++i) {
    switch (static_cast<Kind>(kind_[i])) {
      case Kind::Input: v[i] = in[a_[i]]; break;
      case Kind::Opc: v[i] = tables_[role_[i]][9 * v[a_[i]] + v[b_[i]]]; break;
      case Kind::Buf:
      case Kind::Output: v[i] = v[a_[i]]; break;
      case Kind::Const0: v[i] = const0_; break;
      default: throw std::logic_error("OpSim: unexpected node kind");
    }
  }
  for (auto [node, port] : out_src_) out[port] = v[node];
}

std::vector<uint8_t> OpSim::run(const std::vector<uint8_t>& in) const {
  if (static_cast<int>(in.size()) != win_)
    throw std::invalid_argument("OpSim: input width mismatch");
  std::vector<uint8_t> out(wout_), scratch;
  run(in.data(), out.data(), scratch);
  return out;
}

std::string export_json(const Netlist& n) {
  nlohmann::json j;
  j["width_in"] = n.width_in;
  j["width_out"] = n.width_out;
  j["op_layer"] = n.op_layer;
  if (!n.generator.empty()) j["generator"] = n.generator;
  auto& arr = j["nodes"] = nlohmann::json::array();
  for (size_t i = 0; i < n.nodes.size(); ++i) {
    const Node& nd = n.nodes[i];
    nlohmann::json e;
    e["id"] = i;
    e["kind"] = kind_name(nd.kind);
    auto& f = e["fanin"] = nlohmann::json::array();
    if (nd.a >= 0) f.push_back(nd.a);
    if (nd.b >= 0) f.push_back(nd.b);
    e["port"] = (nd.kind == Kind::Input || nd.kind == Kind::Output)
                    ? nlohmann::json(nd.port)
                    : nlohmann::json(nullptr);
    nlohmann::json meta = nlohmann::json::object();
    if (nd.role) meta["role"] = nd.role;
    if (nd.exempt) meta["exempt"] = true;
    if (!nd.tag.empty()) meta["tag"] = nd.tag;
    e["meta"] = meta;
    arr.push_back(std::move(e));
  }
  return j.dump(1);
}

Netlist import_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error at byte ") +
                                std::to_string(e.byte) + ": " + e.what());
  }
  Netlist n;
  try {
    n.width_in = j.at("width_in").get<int>();
    n.width_out = j.at("width_out").get<int>();
    n.op_layer = j.value("op_layer", false);
    n.generator = j.value("generator", std::string());
    size_t id = 0;
    for (const auto& e : j.at("nodes")) {
      if (e.at("id").get<size_t>() != id)
        throw std::invalid_argument("node ids must be dense and ordered");
      Node nd;
      nd.kind = kind_from_name(e.at("kind").get<std::string>());
      const auto& f = e.at("fanin");
      if (static_cast<int>(f.size()) != kind_arity(nd.kind))
        throw std::invalid_argument("node " + std::to_string(id) + ": bad fanin arity");
      if (f.size() > 0) nd.a = f[0].get<int32_t>();
      if (f.size() > 1) nd.b = f[1].get<int32_t>();
      if (!e.at("port").is_null()) nd.port = e.at("port").get<int>();
      if (e.contains("meta")) {
        const auto& m = e.at("meta");
        nd.role = static_cast<uint8_t>(m.value("role", 0));
        nd.exempt = m.value("exempt", false);
        nd.tag = m.value("tag", std::string());
      }
      n.add(std::move(nd));
      ++id;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("JSON schema error: ") + e.what());
  }
  n.validate();
  return n;
}

std::string export_dot(const Netlist& n) {
  std::ostringstream os;
  os << "digraph netlist {\n  rankdir=LR;\n  node [shape=box];\n";
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < n.nodes.size(); ++i)
    groups[n.nodes[i].tag].push_back(i);
  int gi = 0;
  for (auto& [tag, ids] : groups) {
    bool cluster = !tag.empty();
    if (cluster)
      os << "  subgraph cluster_" << gi++ << " {\n    label=\"" << tag
         << "\";\n    style=filled;\n    color=lightgrey;\n";
    for (size_t i : ids) {
      const Node& nd = n.nodes[i];
      os << (cluster ? "    " : "  ") << "n" << i << " [label=\"" << kind_name(nd.kind);
      if (nd.kind == Kind::Input || nd.kind == Kind::Output) os << " " << nd.port;
      if (nd.kind == Kind::Opc) os << " r" << static_cast<int>(nd.role);
      os << "\"];\n";
    }
    if (cluster) os << "  }\n";
  }
  for (size_t i = 0; i < n.nodes.size(); ++i)
    for (int32_t f : {n.nodes[i].a, n.nodes[i].b})
      if (f >= 0) os << "  n" << f << " -> n" << i << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace mcsort::net
