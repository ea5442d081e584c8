#include "mcsort/trit.hpp"

namespace mcsort {

Trit gate_eval(GateKind kind, const std::vector<Trit>& inputs) {
  auto need = [&](size_t n) {
    if (inputs.size() != n)
      throw std::invalid_argument("gate_eval: arity mismatch");
  };
  switch (kind) {
    case GateKind::And: need(2); return and3(inputs[0], inputs[1]);
    case GateKind::Or: need(2); return or3(inputs[0], inputs[1]);
    case GateKind::Not: need(1); return not3(inputs[0]);
    case GateKind::Buf: need(1); return inputs[0];
  }
  throw std::invalid_argument("gate_eval: unknown gate kind");
}

std::vector<TritVec> resolutions(const TritVec& x) {
  if (x.width() > 16)
    throw std::invalid_argument("resolutions(): materialized variant is limited to width <= 16");
  std::vector<TritVec> out;
  out.reserve(1ull << x.m_count());
  for_each_resolution(x, [&](const TritVec& r) { out.push_back(r); });
  return out;
}

TruthTable tabulate(int n, int m, const std::function<TritVec(const TritVec&)>& f) {
  if (n < 0 || n > 8) throw std::invalid_argument("tabulate: n out of range [0,8]");
  TruthTable t{n, m, {}};
  t.out.resize(1ull << n);
  for (uint64_t i = 0; i < (1ull << n); ++i) {
    TritVec y = f(TritVec::stable(n, i));
    if (y.width() != m || !y.stable_all())
      throw std::invalid_argument("tabulate: function is not a stable function of the stated shape");
    t.out[i] = y.value_bits();
  }
  return t;
}

TritVec closure_apply(const TruthTable& f, const TritVec& x) {
  if (x.width() != f.n) throw std::invalid_argument("closure_apply: width mismatch");
  uint64_t val = 0, seen_diff = 0;
  bool first = true;
  for_each_resolution(x, [&](const TritVec& r) {
    uint64_t y = f.out[r.value_bits()];
    if (first) {
      val = y;
      first = false;
    } else {
      seen_diff |= val ^ y;
    }
  });
  return TritVec::raw(f.m, val, seen_diff);
}

TritVec closure_apply(int m, const std::function<TritVec(const TritVec&)>& f, const TritVec& x) {
  TritVec acc(m);
  bool first = true;
  for_each_resolution(x, [&](const TritVec& r) {
    TritVec y = f(r);
    if (y.width() != m || !y.stable_all())
      throw std::invalid_argument("closure_apply: function returned a non-stable or misshaped value");
    acc = first ? y : star(acc, y);
    first = false;
  });
  return acc;
}

}  // namespace mcsort
