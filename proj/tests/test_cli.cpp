#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mcsort/netlist.hpp"
#include "mcsort/ppc.hpp"

namespace {

struct Res {
  int code = -1;
  std::string out;
};

Res run(const std::string& args) {
  std::string cmd = std::string(MCSORT_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  Res r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = std::move(out);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) {
  return slurp(std::string(MCSORT_GOLDEN_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("trace reproduces the worked comparison tables") {
  Res t4 = run("trace 1001 1000");
  CHECK(t4.code == 0);
  CHECK(t4.out == golden("trace_1001_1000.txt"));

  Res t10 = run("trace 101010110 101M10000");
  CHECK(t10.code == 0);
  CHECK(t10.out == golden("trace_101010110_101M10000.txt"));
}

TEST_CASE("verify: exhaustive sweep and sampled n-sort mode") {
  Res v = run("verify --B 4");
  CHECK(v.code == 0);
  CHECK(v.out == "961 pairs, 0 mismatches\n");

  Res vf = run("verify --B 3 --fanout 3");
  CHECK(vf.code == 0);
  CHECK(vf.out == "225 pairs, 0 mismatches\n");

  Res vs = run("verify --B 3 --serial --threads 2");
  CHECK(vs.code == 0);
  CHECK(vs.out == "225 pairs, 0 mismatches\n");

  Res vn = run("verify --B 2 --n 3 --samples 200 --seed 1");
  CHECK(vn.code == 0);
  CHECK(vn.out == "200 tuples, 0 mismatches\n");
}

TEST_CASE("generators emit valid, deterministic netlists") {
  Res a = run("gen-ppc --B 8");
  Res b = run("gen-ppc --B 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  mcsort::net::Netlist n = mcsort::net::import_json(a.out);
  CHECK(mcsort::net::metrics(n).size_opc == mcsort::ppc::tree_size(3));
  CHECK(a.out == golden("gen_ppc_b8.json"));

  Res dot = run("gen-2sort --B 2 --fmt dot");
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);

  Res nsort = run("gen-nsort --n 3 --B 2");
  CHECK(nsort.code == 0);
  mcsort::net::Netlist sn = mcsort::net::import_json(nsort.out);
  CHECK(sn.width_in == 6);
}

TEST_CASE("simulate evaluates files on literals") {
  Res gen = run("gen-2sort --B 2 --out cli_tmp_2sort.json");
  CHECK(gen.code == 0);
  // g=01 (below), h=10 (above): outputs interleave max=10, min=01
  Res sim = run("simulate cli_tmp_2sort.json 0110");
  CHECK(sim.code == 0);
  CHECK(sim.out == "1001\n");

  Res gop = run("gen-ppc --B 2 --serial --out cli_tmp_ppc.json");
  CHECK(gop.code == 0);
  Res sop = run("simulate cli_tmp_ppc.json 1100");
  CHECK(sop.code == 0);
  CHECK(sop.out == "1111\n");  // pairs 11,00: prefixes 11 and 11*00 = 11
}

TEST_CASE("stats CSV") {
  Res s = run("stats --B 1..8 --variants unbalanced,balanced,serial,f3");
  CHECK(s.code == 0);
  CHECK(s.out == golden("stats_1_8.csv"));
  CHECK(s.out.rfind("B,variant,k,f,size_opc,size_buf,depth,max_fanout,predicted_bound\n",
                    0) == 0);
  Res again = run("stats --B 1..8 --variants unbalanced,balanced,serial,f3");
  CHECK(again.out == s.out);
}

TEST_CASE("export re-emits files") {
  Res gen = run("gen-ppc --B 4 --out cli_tmp_p4.json");
  CHECK(gen.code == 0);
  Res exp = run("export cli_tmp_p4.json --fmt json");
  CHECK(exp.code == 0);
  CHECK(exp.out == slurp("cli_tmp_p4.json"));
  Res dot = run("export cli_tmp_p4.json --fmt dot");
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("diagnostics and exit codes") {
  Res usage = run("gen-ppc --B 8 --definitely-not-a-flag");
  CHECK(usage.code == 1);

  Res bad_lit = run("trace 10X1 1000");
  CHECK(bad_lit.code == 1);
  CHECK(bad_lit.out.find("'X'") != std::string::npos);

  Res bad_file = run("simulate no_such_file.json 01");
  CHECK(bad_file.code == 1);
  CHECK(bad_file.out.find("no_such_file.json") != std::string::npos);

  Res bad_cfg = run("gen-ppc --B 8 --k 9");
  CHECK(bad_cfg.code == 1);

  Res no_cmd = run("");
  CHECK(no_cmd.code == 1);
}
