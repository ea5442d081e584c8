#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mcsort/blocks.hpp"
#include "mcsort/fsm.hpp"
#include "mcsort/gray.hpp"
#include "mcsort/netlist.hpp"
#include "mcsort/ppc.hpp"
#include "mcsort/sorter.hpp"

using namespace mcsort;

namespace {

struct PpcFlags {
  long long B = 1;
  int k = 0;
  int fanout = 0;
  bool buffers = false;
  bool serial = false;
  std::string split = "unbalanced";

  void attach(CLI::App* app, bool with_width = true) {
    if (with_width) app->add_option("--B", B, "input width")->required();
    app->add_option("--k", k, "extra-depth halving steps");
    app->add_option("--fanout,-f", fanout, "fan-out bound (0 = unbounded, else >= 3)");
    app->add_flag("--buffers", buffers, "insert fan-out buffers");
    app->add_flag("--serial", serial, "use the linear-depth chain instead of a tree");
    app->add_option("--split", split, "recursion split: unbalanced | balanced")
        ->check(CLI::IsMember({"unbalanced", "balanced"}));
  }

  ppc::PpcConfig config(long long width) const {
    ppc::PpcConfig c;
    c.width = width;
    c.k = k;
    c.fanout = fanout;
    c.buffers = buffers || fanout > 0;
    c.split = split == "balanced" ? ppc::Split::Balanced : ppc::Split::Unbalanced;
    c.check();
    return c;
  }

  net::Netlist build_prefix(long long width) const {
    return serial ? ppc::build_serial(width) : ppc::build_general(config(width));
  }
};

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write file: " + tmp);
    f << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " to " + path);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

std::string render(const net::Netlist& n, const std::string& fmt) {
  if (fmt == "json") return net::export_json(n) + "\n";
  if (fmt == "dot") return net::export_dot(n);
  throw std::invalid_argument("unknown format: " + fmt);
}

net::Netlist read_netlist(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("unreadable file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return net::import_json(ss.str());
}

std::string trace_table(const TritVec& g, const TritVec& h) {
  fsm::Trace tr = fsm::fsm_trace(g, h);
  int B = g.width();
  auto cell = [](const std::string& s) {
    return s.size() >= 2 ? s : std::string(2 - s.size(), ' ') + s;
  };
  std::ostringstream os;
  auto row = [&](const std::string& label, auto value) {
    os << label;
    for (int i = 0; i <= B; ++i) os << " | " << cell(value(i));
    os << "\n";
  };
  row("i      ", [](int i) { return std::to_string(i); });
  row("g_i h_i", [&](int i) {
    return i == 0 ? std::string() : fsm::pair_str(fsm::pair_of(g.get(i), h.get(i)));
  });
  row("s^(i)  ", [&](int i) { return fsm::pair_str(tr.states[i]); });
  row("g'_i   ", [&](int i) {
    return i == 0 ? std::string() : std::string(1, to_char(fsm::pair_first(tr.outputs[i - 1])));
  });
  row("h'_i   ", [&](int i) {
    return i == 0 ? std::string() : std::string(1, to_char(fsm::pair_second(tr.outputs[i - 1])));
  });
  auto sorted = fsm::two_sort_reference(g, h);
  os << "max     | " << sorted.first.str() << "\n";
  os << "min     | " << sorted.second.str() << "\n";
  return os.str();
}

TritVec parse_literal(const std::string& s) {
  return TritVec::parse(s);  // throws with the offending character named
}

int cmd_simulate(const std::string& path, const std::string& literal) {
  net::Netlist n = read_netlist(path);
  TritVec in = parse_literal(literal);
  if (n.op_layer) {
    if (in.width() != 2 * n.width_in)
      throw std::invalid_argument("input literal must supply " +
                                  std::to_string(2 * n.width_in) + " trits");
    net::OpSim sim(n, {&fsm::diamond_m_table()[0][0], &fsm::out_m_table()[0][0]});
    std::vector<uint8_t> pin(n.width_in);
    for (int i = 0; i < n.width_in; ++i)
      pin[i] = fsm::pair_of(in.get(2 * i + 1), in.get(2 * i + 2));
    auto out = sim.run(pin);
    std::string s;
    for (auto p : out) s += fsm::pair_str(p);
    std::cout << s << "\n";
  } else {
    if (in.width() != n.width_in)
      throw std::invalid_argument("input literal must supply " +
                                  std::to_string(n.width_in) + " trits");
    std::cout << net::GateSim(n).run(in).str() << "\n";
  }
  return 0;
}

int cmd_verify_2sort(long long B, const PpcFlags& pf, bool share, int threads) {
  net::Netlist gate = blocks::expand(
      B == 1 ? sorter::build_2sort_op(B, pf.config(1))
             : sorter::build_2sort_op(B, pf.build_prefix(B - 1)),
      blocks::default_library(share));
  sorter::VerifyReport rep = sorter::verify_exhaustive(B, gate, threads);
  std::cout << rep.pairs << " pairs, " << rep.mismatches << " mismatches\n";
  for (const auto& c : rep.counterexamples)
    std::cout << "mismatch: g=" << c[0] << " h=" << c[1] << " -> max=" << c[2]
              << " min=" << c[3] << "\n";
  return rep.mismatches == 0 ? 0 : 2;
}

int cmd_verify_nsort(int n, long long B, const PpcFlags& pf, bool share,
                     long long samples, uint64_t seed) {
  net::Netlist circ = sorter::build_nsorter(sorter::build_batcher(n), B,
                                            pf.config(std::max<long long>(1, B - 1)),
                                            share);
  net::GateSim sim(circ);
  std::mt19937_64 rng(seed);
  uint64_t nvalid = (2ull << B) - 1;
  long long bad = 0;
  std::vector<uint8_t> in(n * B), out(n * B);
  std::vector<uint8_t> scratch;
  for (long long t = 0; t < samples; ++t) {
    std::vector<TritVec> tup;
    for (int v = 0; v < n; ++v) {
      tup.push_back(gray::valid_by_rank(static_cast<int>(B), rng() % nvalid));
      for (long long i = 1; i <= B; ++i)
        in[v * B + i - 1] = static_cast<uint8_t>(tup.back().get(static_cast<int>(i)));
    }
    sim.run(in.data(), out.data(), scratch);
    auto want = sorter::sort_oracle(tup);
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      for (long long i = 1; i <= B && ok; ++i)
        ok = out[v * B + i - 1] == static_cast<uint8_t>(want[v].get(static_cast<int>(i)));
    if (!ok) ++bad;
  }
  std::cout << samples << " tuples, " << bad << " mismatches\n";
  return bad == 0 ? 0 : 2;
}

struct Variant {
  std::string name;
  int k = 0;
  int f = 0;
};

Variant parse_variant(const std::string& tok) {
  Variant v{tok, 0, 0};
  if (tok == "unbalanced" || tok == "balanced" || tok == "serial" ||
      tok == "buffered")
    return v;
  if (tok.size() > 1 && tok[0] == 'k') {
    v.k = std::stoi(tok.substr(1));
    return v;
  }
  if (tok.size() > 1 && tok[0] == 'f') {
    v.f = std::stoi(tok.substr(1));
    return v;
  }
  throw std::invalid_argument("unknown variant: " + tok);
}

bool power_of_two(long long B) { return (B & (B - 1)) == 0; }

int cmd_stats(const std::string& range, const std::string& variants,
              const std::string& out_path) {
  auto dots = range.find("..");
  long long lo = 1, hi = 1;
  if (dots == std::string::npos) {
    lo = hi = std::stoll(range);
  } else {
    lo = std::stoll(range.substr(0, dots));
    hi = std::stoll(range.substr(dots + 2));
  }
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad width range: " + range);
  std::vector<Variant> vs;
  std::stringstream vss(variants);
  std::string tok;
  while (std::getline(vss, tok, ',')) vs.push_back(parse_variant(tok));
  std::ostringstream csv;
  csv << "B,variant,k,f,size_opc,size_buf,depth,max_fanout,predicted_bound\n";
  for (long long B = lo; B <= hi; ++B) {
    for (const Variant& v : vs) {
      net::Netlist g;
      std::string bound;
      if (v.name == "serial") {
        g = ppc::build_serial(B);
        bound = std::to_string(B - 1);
      } else if (v.name == "balanced") {
        ppc::PpcConfig c;
        c.width = B;
        c.split = ppc::Split::Balanced;
        g = ppc::build_general(c);
      } else if (v.name == "buffered") {
        ppc::PpcConfig c;
        c.width = B;
        c.buffers = true;
        g = ppc::build_general(c);
        if (power_of_two(B))
          bound = std::to_string(ppc::buffer_count_literal(ppc::clog2(B)));
      } else if (v.f > 0) {
        ppc::PpcConfig c;
        c.width = B;
        c.fanout = v.f;
        c.buffers = true;
        g = ppc::build_general(c);
        if (power_of_two(B)) {
          int b = ppc::clog2(B);
          bound = (ppc::Rat(ppc::tree_size(b)) + ppc::fanout_extra_bound(b, v.f)).str();
        }
      } else {
        if (v.k > ppc::clog2(B)) continue;
        ppc::PpcConfig c;
        c.width = B;
        c.k = v.k;
        g = ppc::build_general(c);
        bound = v.k == 0 ? std::to_string(ppc::cor2_bound(B))
                         : ppc::thm5_bound(B, v.k).str();
      }
      net::Metrics m = net::metrics(g);
      csv << B << ',' << v.name << ',' << v.k << ',' << v.f << ',' << m.size_opc
          << ',' << m.size_buf << ',' << m.depth << ',' << m.max_fanout << ','
          << bound << "\n";
    }
  }
  emit(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metastability-containing sorting circuit toolkit"};
  app.require_subcommand(1);

  std::string out_path, fmt = "json";
  PpcFlags pf;
  bool no_share = false;
  int threads = 0;

  auto* gen_ppc = app.add_subcommand("gen-ppc", "generate a prefix circuit");
  pf.attach(gen_ppc);
  gen_ppc->add_option("--fmt", fmt, "json | dot");
  gen_ppc->add_option("--out", out_path, "output path (default stdout)");

  long long B2 = 1;
  auto* gen_2sort = app.add_subcommand("gen-2sort", "generate a gate-level 2-sort");
  gen_2sort->add_option("--B", B2, "string width")->required();
  pf.attach(gen_2sort, false);
  gen_2sort->add_flag("--no-share", no_share, "private inverter bank per xmux");
  bool op_level = false;
  gen_2sort->add_flag("--op-level", op_level, "emit the operator layer instead of gates");
  gen_2sort->add_option("--fmt", fmt, "json | dot");
  gen_2sort->add_option("--out", out_path, "output path (default stdout)");

  int nsort_n = 2;
  auto* gen_nsort = app.add_subcommand("gen-nsort", "generate an n-input sorter");
  gen_nsort->add_option("--n", nsort_n, "number of values")->required();
  gen_nsort->add_option("--B", B2, "string width")->required();
  pf.attach(gen_nsort, false);
  gen_nsort->add_flag("--no-share", no_share, "private inverter bank per xmux");
  gen_nsort->add_option("--fmt", fmt, "json | dot");
  gen_nsort->add_option("--out", out_path, "output path (default stdout)");

  std::string sim_path, sim_literal;
  auto* simulate = app.add_subcommand("simulate", "evaluate a netlist on one input");
  simulate->add_option("netlist", sim_path, "netlist JSON file")->required();
  simulate->add_option("input", sim_literal, "trit literal (0/1/M)")->required();

  std::string tr_g, tr_h;
  auto* trace = app.add_subcommand("trace", "comparison-machine trace of a pair");
  trace->add_option("g_literal", tr_g, "first string")->required();
  trace->add_option("h_literal", tr_h, "second string")->required();
  trace->add_option("--out", out_path, "output path (default stdout)");

  long long vB = 1, samples = 10000;
  int vn = 0;
  uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "check a build against the oracle");
  verify->add_option("--B", vB, "string width")->required();
  verify->add_option("--n", vn, "sorter size (enables sampled n-sort mode)");
  verify->add_option("--samples", samples, "samples in n-sort mode");
  verify->add_option("--seed", seed, "sample seed");
  verify->add_option("--threads", threads, "worker threads (0 = auto)");
  pf.attach(verify, false);
  verify->add_flag("--no-share", no_share, "private inverter bank per xmux");

  std::string stats_range = "1..70", stats_variants = "unbalanced,balanced";
  auto* stats = app.add_subcommand("stats", "size/depth CSV over a width range");
  stats->add_option("--B", stats_range, "width range, e.g. 1..70");
  stats->add_option("--variants", stats_variants,
                    "comma list: unbalanced,balanced,serial,buffered,k<i>,f<i>");
  stats->add_option("--csv,--out", out_path, "output path (default stdout)");

  std::string exp_path;
  auto* exp = app.add_subcommand("export", "re-emit a netlist file as json or dot");
  exp->add_option("netlist", exp_path, "netlist JSON file")->required();
  exp->add_option("--fmt", fmt, "json | dot");
  exp->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (gen_ppc->parsed()) {
      emit(out_path, render(pf.serial ? ppc::build_serial(pf.B)
                                      : ppc::build_general(pf.config(pf.B)),
                            fmt));
      return 0;
    }
    if (gen_2sort->parsed()) {
      net::Netlist op = B2 == 1 ? sorter::build_2sort_op(B2, pf.config(1))
                                : sorter::build_2sort_op(B2, pf.build_prefix(B2 - 1));
      emit(out_path, render(op_level ? op
                                     : blocks::expand(op, blocks::default_library(
                                                              !no_share)),
                            fmt));
      return 0;
    }
    if (gen_nsort->parsed()) {
      emit(out_path,
           render(sorter::build_nsorter(sorter::build_batcher(nsort_n), B2,
                                        pf.config(std::max<long long>(1, B2 - 1)),
                                        !no_share),
                  fmt));
      return 0;
    }
    if (simulate->parsed()) return cmd_simulate(sim_path, sim_literal);
    if (trace->parsed()) {
      TritVec g = parse_literal(tr_g), h = parse_literal(tr_h);
      if (g.width() != h.width())
        throw std::invalid_argument("trace: strings must share one width");
      emit(out_path, trace_table(g, h));
      return 0;
    }
    if (verify->parsed()) {
      if (vn > 0) return cmd_verify_nsort(vn, vB, pf, !no_share, samples, seed);
      return cmd_verify_2sort(vB, pf, !no_share, threads);
    }
    if (stats->parsed()) return cmd_stats(stats_range, stats_variants, out_path);
    if (exp->parsed()) {
      emit(out_path, render(read_netlist(exp_path), fmt));
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
