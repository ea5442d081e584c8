#include "mcsort/sorter.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mcsort/gray.hpp"

namespace mcsort::sorter {

using net::Kind;
using net::Netlist;

namespace {

Netlist assemble_2sort(long long B, const Netlist* prefix) {
  if (B < 1) throw std::invalid_argument("2sort: B must be >= 1");
  if (B > 1) {
    if (prefix == nullptr || !prefix->op_layer ||
        prefix->width_in != B - 1 || prefix->width_out != B - 1)
      throw std::invalid_argument("2sort: prefix circuit width mismatch");
  }
  Netlist n;
  n.op_layer = true;
  n.width_in = static_cast<int>(B);
  n.width_out = static_cast<int>(B);
  n.generator = "2sort B=" + std::to_string(B) +
                (B > 1 ? " | " + prefix->generator : std::string());
  std::vector<int32_t> d;
  for (long long p = 1; p <= B; ++p) d.push_back(n.add_input(static_cast<int>(p)));
  std::vector<int32_t> pi;
  if (B > 1)
    pi = net::splice(n, *prefix, {d.begin(), d.end() - 1});
  int32_t state = n.add(net::Node{Kind::Const0, -1, -1, 0, 0, false, {}});
  for (long long i = 1; i <= B; ++i) {
    int32_t s = (i == 1) ? state : pi[i - 2];
    n.add_output(n.add_opc(1, s, d[i - 1]), static_cast<int>(i));
  }
  n.validate();
  return n;
}

}  // namespace

Netlist build_2sort_op(long long B, const Netlist& prefix) {
  return assemble_2sort(B, &prefix);
}

Netlist build_2sort_op(long long B, const ppc::PpcConfig& cfg) {
  if (B == 1) return assemble_2sort(B, nullptr);
  ppc::PpcConfig c = cfg;
  c.width = B - 1;
  Netlist prefix = ppc::build_general(c);
  return assemble_2sort(B, &prefix);
}

Netlist build_2sort(long long B, const ppc::PpcConfig& cfg, bool share_inverters) {
  return blocks::expand(build_2sort_op(B, cfg),
                        blocks::default_library(share_inverters));
}

size_t SortingNetwork::comparators() const {
  size_t c = 0;
  for (const auto& l : layers) c += l.size();
  return c;
}

SortingNetwork build_batcher(int n) {
  if (n < 1) throw std::invalid_argument("batcher: n must be >= 1");
  SortingNetwork net;
  net.n = n;
  net.provenance = "batcher";
  for (int p = 1; p < n; p *= 2)
    for (int k = p; k >= 1; k /= 2) {
      std::vector<std::pair<int, int>> layer;
      for (int j = k % p; j + k < n; j += 2 * k)
        for (int i = 0; i < k && i + j + k < n; ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p))
            layer.emplace_back(i + j, i + j + k);
      if (!layer.empty()) net.layers.push_back(std::move(layer));
    }
  return net;
}

bool sorts_01(const SortingNetwork& net) {
  if (net.n > 24) throw std::invalid_argument("sorts_01: n too large for the sweep");
  std::vector<int> seen(net.n);
  for (const auto& layer : net.layers) {
    std::fill(seen.begin(), seen.end(), 0);
    for (auto [i, j] : layer) {
      if (i < 0 || j >= net.n || i >= j) return false;
      if (seen[i]++ || seen[j]++) return false;  // channel reused in a layer
    }
  }
  std::vector<uint8_t> b(net.n);
  for (uint64_t x = 0; x < (1ull << net.n); ++x) {
    for (int i = 0; i < net.n; ++i) b[i] = (x >> i) & 1;
    for (const auto& layer : net.layers)
      for (auto [i, j] : layer)
        if (b[i] > b[j]) std::swap(b[i], b[j]);
    for (int i = 0; i + 1 < net.n; ++i)
      if (b[i] > b[i + 1]) return false;
  }
  return true;
}

SortingNetwork build_explicit(int n,
                              std::vector<std::vector<std::pair<int, int>>> layers,
                              std::string name) {
  SortingNetwork net;
  net.n = n;
  net.layers = std::move(layers);
  net.provenance = std::move(name);
  if (!sorts_01(net))
    throw std::invalid_argument("explicit network fails the 0-1 sorting sweep");
  return net;
}

Netlist build_nsorter(const SortingNetwork& network, long long B,
                      const ppc::PpcConfig& cfg, bool share_inverters) {
  Netlist comp = build_2sort(B, cfg, share_inverters);
  Netlist n;
  n.width_in = static_cast<int>(network.n * B);
  n.width_out = static_cast<int>(network.n * B);
  n.generator = "nsort n=" + std::to_string(network.n) + " net=" +
                network.provenance + " | " + comp.generator;
  std::vector<std::vector<int32_t>> chan(network.n, std::vector<int32_t>(B));
  for (int v = 0; v < network.n; ++v)
    for (long long i = 0; i < B; ++i)
      chan[v][i] = n.add_input(static_cast<int>(v * B + i + 1));
  std::vector<int32_t> drivers(2 * B);
  for (const auto& layer : network.layers)
    for (auto [u, v] : layer) {
      for (long long i = 0; i < B; ++i) {
        drivers[2 * i] = chan[u][i];      // g bit
        drivers[2 * i + 1] = chan[v][i];  // h bit
      }
      auto out = net::splice(n, comp, drivers);
      for (long long i = 0; i < B; ++i) {
        chan[u][i] = out[2 * i + 1];  // lower channel takes the minimum
        chan[v][i] = out[2 * i];      // higher channel takes the maximum
      }
    }
  for (int v = 0; v < network.n; ++v)
    for (long long i = 0; i < B; ++i)
      n.add_output(chan[v][i], static_cast<int>(v * B + i + 1));
  n.validate();
  return n;
}

std::vector<TritVec> sort_oracle(std::vector<TritVec> values) {
  std::vector<std::pair<uint64_t, size_t>> keyed(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    keyed[i] = {gray::require_valid(values[i]).rank, i};
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TritVec> out;
  out.reserve(values.size());
  for (auto& [rank, idx] : keyed) out.push_back(values[idx]);
  return out;
}

VerifyReport verify_exhaustive(long long B, const Netlist& gate_2sort,
                               int threads) {
  if (gate_2sort.op_layer || gate_2sort.width_in != 2 * B ||
      gate_2sort.width_out != 2 * B)
    throw std::invalid_argument("verify: expected a gate-level 2-sort of width B");
  auto t0 = std::chrono::steady_clock::now();
  auto strings = gray::enumerate_valid(static_cast<int>(B));
  size_t nv = strings.size();
  // flat trit literals, one row per valid string
  std::vector<uint8_t> lit(nv * B);
  for (size_t s = 0; s < nv; ++s)
    for (long long i = 0; i < B; ++i)
      lit[s * B + i] = static_cast<uint8_t>(strings[s].bits.get(static_cast<int>(i) + 1));
  net::GateSim sim(gate_2sort);
  unsigned hw = std::thread::hardware_concurrency();
  int nt = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
  nt = std::min<int>(nt, static_cast<int>(nv));
  VerifyReport rep;
  rep.pairs = static_cast<long long>(nv) * static_cast<long long>(nv);
  std::mutex mx;
  auto worker = [&](size_t lo, size_t hi) {
    std::vector<uint8_t> in(2 * B), out(2 * B), scratch;
    long long bad = 0;
    std::vector<std::array<std::string, 4>> ce;
    for (size_t gi = lo; gi < hi; ++gi)
      for (size_t hi2 = 0; hi2 < nv; ++hi2) {
        const uint8_t* g = &lit[gi * B];
        const uint8_t* h = &lit[hi2 * B];
        for (long long i = 0; i < B; ++i) {
          in[2 * i] = g[i];
          in[2 * i + 1] = h[i];
        }
        sim.run(in.data(), out.data(), scratch);
        const uint8_t* mx_row = strings[gi].rank >= strings[hi2].rank ? g : h;
        const uint8_t* mn_row = strings[gi].rank >= strings[hi2].rank ? h : g;
        bool ok = true;
        for (long long i = 0; i < B && ok; ++i)
          ok = out[2 * i] == mx_row[i] && out[2 * i + 1] == mn_row[i];
        if (!ok) {
          ++bad;
          if (ce.size() < 8) {
            TritVec got_max(static_cast<int>(B)), got_min(static_cast<int>(B));
            for (long long i = 0; i < B; ++i) {
              got_max.set(static_cast<int>(i) + 1, static_cast<Trit>(out[2 * i]));
              got_min.set(static_cast<int>(i) + 1, static_cast<Trit>(out[2 * i + 1]));
            }
            ce.push_back({strings[gi].bits.str(), strings[hi2].bits.str(),
                          got_max.str(), got_min.str()});
          }
        }
      }
    std::lock_guard<std::mutex> lock(mx);
    rep.mismatches += bad;
    for (auto& c : ce)
      if (rep.counterexamples.size() < 8) rep.counterexamples.push_back(std::move(c));
  };
  if (nt <= 1) {
    worker(0, nv);
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (nv + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      size_t lo = t * chunk, hi = std::min(nv, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string report_json(const VerifyReport& r) {
  nlohmann::json j;
  j["pairs"] = r.pairs;
  j["mismatches"] = r.mismatches;
  j["seconds"] = r.seconds;
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& c : r.counterexamples)
    j["counterexamples"].push_back({c[0], c[1], c[2], c[3]});
  return j.dump(1);
}

std::string report_text(const VerifyReport& r) {
  std::string s = "pairs checked: " + std::to_string(r.pairs) +
                  "\nmismatches:    " + std::to_string(r.mismatches) +
                  "\nelapsed:       " + std::to_string(r.seconds) + " s\n";
  for (const auto& c : r.counterexamples)
    s += "  mismatch: g=" + c[0] + " h=" + c[1] + " -> max=" + c[2] +
         " min=" + c[3] + "\n";
  return s;
}

}  // namespace mcsort::sorter
