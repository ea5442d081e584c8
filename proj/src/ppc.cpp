#include "mcsort/ppc.hpp"

#include <climits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcsort::ppc {

long long fib(int i) {
  if (i < 1) throw std::invalid_argument("fib: index must be >= 1");
  long long a = 1, b = 1;  // F_1, F_2
  for (int j = 2; j < i; ++j) {
    long long c = a + b;
    a = b;
    b = c;
  }
  return i == 1 ? 1 : b;
}

int clog2(long long b) {
  if (b < 1) throw std::invalid_argument("clog2: argument must be >= 1");
  int c = 0;
  while ((1ll << c) < b) ++c;
  return c;
}

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

std::string i128_str(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}
}  // namespace

Rat::Rat(__int128 nn, __int128 dd) {
  if (dd == 0) throw std::invalid_argument("Rat: zero denominator");
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  __int128 g = gcd128(nn, dd);
  n = nn / g;
  d = dd / g;
}

Rat Rat::operator+(const Rat& o) const { return Rat(n * o.d + o.n * d, d * o.d); }
Rat Rat::operator-(const Rat& o) const { return Rat(n * o.d - o.n * d, d * o.d); }
Rat Rat::operator*(const Rat& o) const { return Rat(n * o.n, d * o.d); }
Rat Rat::div(long long k) const { return Rat(n, d * k); }
long long Rat::floor_val() const {
  if (n < 0) throw std::invalid_argument("Rat::floor_val: negative value");
  return static_cast<long long>(n / d);
}
double Rat::dbl() const { return static_cast<double>(n) / static_cast<double>(d); }
bool Rat::operator<(const Rat& o) const { return n * o.d < o.n * d; }
bool Rat::operator<=(const Rat& o) const { return n * o.d <= o.n * d; }
bool Rat::operator==(const Rat& o) const { return n == o.n && d == o.d; }
std::string Rat::str() const {
  return d == 1 ? i128_str(n) : i128_str(n) + "/" + i128_str(d);
}

void PpcConfig::check() const {
  if (width < 1) throw std::invalid_argument("ppc: width must be >= 1");
  if (width > (1ll << 20)) throw std::invalid_argument("ppc: width too large to build");
  if (k < 0 || k > clog2(width))
    throw std::invalid_argument("ppc: k out of range [0, ceil(log2 width)]");
  if (fanout != 0 && fanout < 3)
    throw std::invalid_argument("ppc: fan-out bound must be >= 3");
  if (split == Split::Balanced && (fanout != 0 || buffers))
    throw std::invalid_argument("ppc: balanced split supports only the plain variant");
}

std::string PpcConfig::str() const {
  std::ostringstream os;
  os << "ppc width=" << width << " k=" << k << " split="
     << (split == Split::Balanced ? "balanced" : "unbalanced") << " fanout=" << fanout
     << " buffers=" << (buffers ? 1 : 0);
  return os.str();
}

PpcConfig parse_config(const std::string& s) {
  std::istringstream is(s);
  std::string head;
  is >> head;
  if (head != "ppc") throw std::invalid_argument("not a prefix-circuit generator record: " + s);
  PpcConfig c;
  std::string kv;
  while (is >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed generator record token: " + kv);
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "width") c.width = std::stoll(val);
    else if (key == "k") c.k = std::stoi(val);
    else if (key == "fanout") c.fanout = std::stoi(val);
    else if (key == "buffers") c.buffers = std::stoi(val) != 0;
    else if (key == "split") {
      if (val == "balanced") c.split = Split::Balanced;
      else if (val == "unbalanced") c.split = Split::Unbalanced;
      else throw std::invalid_argument("unknown split: " + val);
    } else throw std::invalid_argument("unknown generator key: " + key);
  }
  c.check();
  return c;
}

// ---------------------------------------------------------------------------
// Recursion tree
// ---------------------------------------------------------------------------

namespace {

int rec_build(RecTree& t, long long lo, long long w, int depth, int alpha, Rat a, int f) {
  int id = static_cast<int>(t.nodes.size());
  t.nodes.push_back({});
  TreeNode& self = t.nodes[id];
  self.depth = depth;
  self.alpha = alpha;
  self.lo = lo;
  self.wslices = w;
  self.a = a;
  if (w == 1) {
    t.nodes[id].kind = TreeNode::Leaf;
    return id;
  }
  // right node; left branch is the largest power of two below w
  long long wl = 1ll << (clog2(w) - 1);
  long long wr = w - wl;
  Rat al = f > 0 ? (a + Rat(wr)).div(f) : Rat(0);
  Rat ar = f > 0 ? a.div(f) : Rat(0);
  long long unit = 1ll << alpha;  // raw inputs per slice
  int left;
  if (wl == 1) {
    left = rec_build(t, lo, 1, depth + 1, alpha, al, f);
  } else {
    left = static_cast<int>(t.nodes.size());
    t.nodes.push_back({});
    TreeNode& ln = t.nodes[left];
    ln.kind = TreeNode::Left;
    ln.depth = depth + 1;
    ln.alpha = alpha;
    ln.lo = lo;
    ln.wslices = wl;
    ln.a = al;
    int inner = rec_build(t, lo, wl / 2, depth + 2, alpha + 1, al, f);
    t.nodes[left].ch[0] = inner;
  }
  int right = rec_build(t, lo + wl * unit, wr, depth + 1, alpha, ar, f);
  t.nodes[id].kind = TreeNode::Right;
  t.nodes[id].ch[0] = left;
  t.nodes[id].ch[1] = right;
  return id;
}

}  // namespace

RecTree rec_tree(long long width, int f) {
  if (width < 1) throw std::invalid_argument("rec_tree: width must be >= 1");
  RecTree t;
  t.root = rec_build(t, 1, width, 0, 0, Rat(0), f);
  return t;
}

// ---------------------------------------------------------------------------
// Circuit generators
// ---------------------------------------------------------------------------

namespace {

using net::Kind;
using net::Netlist;

class Builder {
 public:
  explicit Builder(const PpcConfig& c)
      : cfg(c), f(c.fanout), buf(c.buffers || c.fanout > 0) {}

  Netlist build() {
    nl.op_layer = true;
    nl.width_in = static_cast<int>(cfg.width);
    nl.width_out = static_cast<int>(cfg.width);
    nl.generator = cfg.str();
    std::vector<int> cur;
    cur.reserve(cfg.width);
    for (long long p = 1; p <= cfg.width; ++p)
      cur.push_back(new_val(nl.add_input(static_cast<int>(p)), true));
    std::vector<int> out = left_steps(cur, cfg.k);
    for (long long p = 1; p <= cfg.width; ++p)
      nl.add_output(take(out[p - 1]), static_cast<int>(p));
    if (overflow > 0)
      throw std::logic_error("ppc builder: fan-out capacity overflow (" +
                             std::to_string(overflow) + " sinks)");
    nl.validate();
    return std::move(nl);
  }

 private:
  PpcConfig cfg;
  int f;     // 0 = unbounded
  bool buf;  // buffer insertion active
  Netlist nl;
  long long overflow = 0;

  struct Val {
    std::vector<int32_t> ids;
    std::vector<int> used;
    bool input = false;
  };
  std::vector<Val> vals;

  // tree bookkeeping: atom spans [i,j), split points of merged spans, values
  std::vector<int> atoms;
  std::map<std::pair<int, int>, int> reg;
  std::map<std::pair<int, int>, int> split_at;

  int new_val(int32_t id, bool input = false) {
    vals.push_back({{id}, {0}, input});
    return static_cast<int>(vals.size()) - 1;
  }
  int new_val_multi(std::vector<int32_t> ids) {
    vals.push_back({std::move(ids), {}, false});
    vals.back().used.assign(vals.back().ids.size(), 0);
    return static_cast<int>(vals.size()) - 1;
  }
  int32_t take(int h) {
    Val& v = vals[h];
    int cap = (v.input || f == 0) ? INT_MAX : f;
    for (size_t i = 0; i < v.ids.size(); ++i)
      if (v.used[i] < cap) {
        ++v.used[i];
        return v.ids[i];
      }
    ++overflow;
    return v.ids.back();
  }
  /* A fresh single-sink driver for an output wire (Buf in buffered mode). */
  int fresh_out(int h) {
    if (!buf) return h;
    return new_val(nl.add_gate(Kind::Buf, take(h)));
  }
  /* Wire from an aggregation value into a subcircuit (buffered per mod 1). */
  int32_t consume_agg(int h) {
    if (!buf) return take(h);
    return nl.add_gate(Kind::Buf, take(h));
  }

  // -- the k top-level depth-trading left steps (gates created directly) ----
  std::vector<int> left_steps(const std::vector<int>& cur, int k) {
    int W = static_cast<int>(cur.size());
    if (k == 0 || W == 1) return run_tree(cur);
    std::vector<int> inner_in;
    for (int i = 0; i + 1 < W; i += 2)
      inner_in.push_back(new_val(nl.add_opc(0, take(cur[i]), take(cur[i + 1]))));
    if (W % 2) inner_in.push_back(cur[W - 1]);
    std::vector<int> inner = left_steps(inner_in, k - 1);
    std::vector<int> out(W);
    out[0] = fresh_out(cur[0]);
    for (int p = 2; p <= W; p += 2)
      out[p - 1] = (p < W) ? fresh_out(inner[p / 2 - 1]) : inner[p / 2 - 1];
    for (int p = 3; p <= W; p += 2)
      out[p - 1] = (p < W)
                       ? new_val(nl.add_opc(0, take(inner[p / 2 - 1]), take(cur[p - 1])))
                       : inner[p / 2];  // odd width: last wire passes through
    return out;
  }

  // -- recursion-tree construction over atom spans --------------------------
  std::vector<int> run_tree(const std::vector<int>& cur) {
    atoms = cur;
    reg.clear();
    split_at.clear();
    int n = static_cast<int>(atoms.size());
    std::vector<std::pair<int, int>> spans;
    spans.reserve(n);
    for (int i = 0; i < n; ++i) {
      reg[{i, i + 1}] = atoms[i];
      spans.emplace_back(i, i + 1);
    }
    return tree(spans, Rat(0));
  }

  std::vector<int> tree(const std::vector<std::pair<int, int>>& sl, Rat a) {
    int W = static_cast<int>(sl.size());
    if (W == 1) return {leaf(sl[0], a)};
    long long wl =
        cfg.split == Split::Balanced ? (W + 1) / 2 : (1ll << (clog2(W) - 1));
    long long wr = W - wl;
    Rat al = f > 0 ? (a + Rat(wr)).div(f) : Rat(0);
    Rat ar = f > 0 ? a.div(f) : Rat(0);
    std::vector<std::pair<int, int>> lsl(sl.begin(), sl.begin() + wl);
    std::vector<std::pair<int, int>> rsl(sl.begin() + wl, sl.end());
    std::vector<int> L = (wl == 1) ? std::vector<int>{leaf(lsl[0], al)}
                                   : left_part(lsl, al);
    std::vector<int> R = tree(rsl, ar);
    std::vector<int> out(sl.size());
    for (long long p = 0; p + 1 < wl; ++p) out[p] = L[p];
    int last_left = L.back();
    out[wl - 1] = fresh_out(last_left);  // buffer before the forwarded output
    long long extra = f > 0 ? a.floor_val() : 0;
    for (long long j = 0; j < wr; ++j) {
      if (j + 1 < wr) {
        out[wl + j] = new_val(nl.add_opc(0, take(last_left), take(R[j])));
      } else {
        std::vector<int32_t> copies;
        for (long long c = 0; c <= extra; ++c) {
          int32_t g = nl.add_opc(0, take(last_left), take(R[j]));
          nl.nodes[g].exempt = true;  // provides a subcircuit's last output
          copies.push_back(g);
        }
        out[wl + j] = new_val_multi(std::move(copies));
      }
    }
    return out;
  }

  std::vector<int> left_part(const std::vector<std::pair<int, int>>& sl, Rat a) {
    int W = static_cast<int>(sl.size());
    std::vector<std::pair<int, int>> merged;
    for (int i = 0; i + 1 < W; i += 2) {
      std::pair<int, int> m{sl[i].first, sl[i + 1].second};
      split_at[m] = sl[i].second;
      merged.push_back(m);
    }
    if (W % 2) merged.push_back(sl[W - 1]);
    std::vector<int> inner = tree(merged, a);  // the only child keeps a
    std::vector<int> out(W);
    out[0] = new_val(consume_agg_handle(sl[0]));
    for (int p = 2; p <= W; p += 2)
      out[p - 1] = (p < W) ? fresh_out(inner[p / 2 - 1]) : inner[p / 2 - 1];
    for (int p = 3; p <= W; p += 2)
      out[p - 1] = (p < W)
                       ? new_val(nl.add_opc(0, take(inner[p / 2 - 1]),
                                            consume_agg_handle(sl[p - 1])))
                       : inner[p / 2];
    return out;
  }

  int32_t consume_agg_handle(std::pair<int, int> span) {
    return consume_agg(reg.at(span));
  }

  int leaf(std::pair<int, int> span, Rat a) {
    long long extra = f > 0 ? a.floor_val() : 0;
    return agg(span, extra, true);
  }

  /* Builds (or finds) the aggregation value for a span, with `extra`
   * duplicate gates for fan-out headroom. */
  int agg(std::pair<int, int> span, long long extra, bool root) {
    if (span.second - span.first == 1) {
      if (extra > 0)
        throw std::logic_error("ppc builder: duplicate copies requested at an input");
      return reg.at(span);
    }
    int mid = split_at.at(span);
    long long el = f > 0 ? (extra + 1) / f : 0;  // left half also feeds a subcircuit
    long long er = f > 0 ? extra / f : 0;
    int hl = agg({span.first, mid}, el, false);
    int hr = agg({mid, span.second}, er, false);
    std::vector<int32_t> copies;
    for (long long c = 0; c <= extra; ++c) {
      int32_t g = nl.add_opc(0, take(hl), take(hr));
      if (root) nl.nodes[g].exempt = true;  // the leaf's output value
      copies.push_back(g);
    }
    int h = new_val_multi(std::move(copies));
    reg[span] = h;
    return h;
  }
};

}  // namespace

net::Netlist build_serial(long long B) {
  if (B < 1 || B > (1ll << 20)) throw std::invalid_argument("serial: width out of range");
  Netlist nl;
  nl.op_layer = true;
  nl.width_in = static_cast<int>(B);
  nl.width_out = static_cast<int>(B);
  nl.generator = "serial width=" + std::to_string(B);
  int32_t acc = nl.add_input(1);
  nl.add_output(acc, 1);
  for (long long i = 2; i <= B; ++i) {
    int32_t d = nl.add_input(static_cast<int>(i));
    acc = nl.add_opc(0, acc, d);
    nl.add_output(acc, static_cast<int>(i));
  }
  nl.validate();
  return nl;
}

net::Netlist build_left_step(const net::Netlist& inner, long long B) {
  if (B < 1 || B > (1ll << 20)) throw std::invalid_argument("left_step: width out of range");
  if (!inner.op_layer || inner.width_in != (B + 1) / 2 ||
      inner.width_out != inner.width_in)
    throw std::invalid_argument("left_step: inner circuit width mismatch");
  Netlist nl;
  nl.op_layer = true;
  nl.width_in = static_cast<int>(B);
  nl.width_out = static_cast<int>(B);
  nl.generator = "left_step width=" + std::to_string(B);
  std::vector<int32_t> d;
  for (long long p = 1; p <= B; ++p) d.push_back(nl.add_input(static_cast<int>(p)));
  std::vector<int32_t> pre;
  for (long long i = 0; i + 1 < B; i += 2) pre.push_back(nl.add_opc(0, d[i], d[i + 1]));
  if (B % 2) pre.push_back(d[B - 1]);
  // splice the inner circuit, remapping its inputs onto the merged wires
  std::vector<int32_t> map(inner.nodes.size(), -1);
  std::vector<int32_t> iout(pre.size(), -1);
  for (size_t i = 0; i < inner.nodes.size(); ++i) {
    const net::Node& nd = inner.nodes[i];
    switch (nd.kind) {
      case Kind::Input: map[i] = pre[nd.port - 1]; break;
      case Kind::Output: iout[nd.port - 1] = map[nd.a]; break;
      case Kind::Buf: map[i] = nl.add_gate(Kind::Buf, map[nd.a]); break;
      case Kind::Opc: map[i] = nl.add_opc(nd.role, map[nd.a], map[nd.b], nd.tag); break;
      default:
        throw std::invalid_argument("left_step: unsupported node kind in inner circuit");
    }
  }
  std::vector<int32_t> out(B);
  out[0] = d[0];
  for (long long p = 2; p <= B; p += 2) out[p - 1] = iout[p / 2 - 1];
  for (long long p = 3; p <= B; p += 2)
    out[p - 1] = (p < B) ? nl.add_opc(0, iout[p / 2 - 1], d[p - 1]) : iout[p / 2];
  for (long long p = 1; p <= B; ++p)
    nl.add_output(out[p - 1], static_cast<int>(p));
  nl.validate();
  return nl;
}

net::Netlist build_general(const PpcConfig& cfg) {
  cfg.check();
  return Builder(cfg).build();
}

net::Netlist build_tree(int b) {
  if (b < 0 || b > 20) throw std::invalid_argument("build_tree: b out of range [0,20]");
  PpcConfig c;
  c.width = 1ll << b;
  return build_general(c);
}

namespace {
PpcConfig config_of(const net::Netlist& g) {
  if (g.generator.empty())
    throw std::invalid_argument("netlist carries no generator record");
  return parse_config(g.generator);
}
}  // namespace

net::Netlist insert_buffers(const net::Netlist& g) {
  PpcConfig c = config_of(g);
  c.buffers = true;
  return build_general(c);
}

net::Netlist bound_fanout(const net::Netlist& g, int f) {
  if (f < 3) throw std::invalid_argument("bound_fanout: f must be >= 3");
  PpcConfig c = config_of(g);
  c.buffers = true;
  c.fanout = f;
  return build_general(c);
}

// ---------------------------------------------------------------------------
// Predictors
// ---------------------------------------------------------------------------

long long tree_size(int b) {
  if (b < 0) throw std::invalid_argument("tree_size: b must be >= 0");
  return (1ll << (b + 2)) - fib(b + 5) + 1;
}

int tree_depth(int b) {
  if (b < 0) throw std::invalid_argument("tree_depth: b must be >= 0");
  return b;
}

long long cor2_bound(long long B) {
  int b = clog2(B);
  return 5 * B - (1ll << b) - fib(b + 3);
}

Rat thm5_bound(long long B, int k) {
  if (k < 0 || k > clog2(B)) throw std::invalid_argument("thm5_bound: k out of range");
  if (k == 0) return Rat(cor2_bound(B));
  __int128 half = static_cast<__int128>(1) << (k - 1);
  return Rat((2 * half + 1) * B, half) - Rat(fib(clog2(B) - k + 3));
}

long long buffer_count_stated(int b) {
  if (b < 1) return 0;
  return (1ll << b) + (1ll << (b - 1)) - fib(b + 3);
}

long long buffer_count_literal(int b) {
  if (b < 1) return 0;
  return (1ll << (b + 1)) - fib(b + 3);
}

long long kogge_stone_size(long long l) {
  if (l < 1) throw std::invalid_argument("kogge_stone_size: width must be >= 1");
  return l * (clog2(l) - 1) + 1;
}

Rat fanout_extra_bound(int b, int f) {
  if (f < 3) throw std::invalid_argument("fanout_extra_bound: f must be >= 3");
  RecTree t = rec_tree(1ll << b, f);
  Rat total(0);
  for (const TreeNode& v : t.nodes) {
    if (v.kind == TreeNode::Right) {
      total = total + Rat(v.a.floor_val());
    } else if (v.kind == TreeNode::Leaf) {
      total = total + v.a * Rat(f, f - 2) + Rat(static_cast<__int128>(1) << v.alpha,
                                                2 * (f - 1));
    }
  }
  return total;
}

}  // namespace mcsort::ppc
