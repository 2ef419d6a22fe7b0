#include "dtc/generate.hpp"

#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace dtc {

Digraph generate_instance(const GenParams& params) {
  if (params.nodes < 2) throw std::invalid_argument("need at least 2 nodes to place arcs");
  if (params.arcs == 0) throw std::invalid_argument("need at least 1 arc");
  if (params.zero_frac.is_infinite() || params.zero_frac > Cost::from_int(1))
    throw std::invalid_argument("zero-frac must lie in [0, 1]");

  // zero_frac = p/q; an arc cost is zeroed when a uniform 64-bit draw lands
  // below floor(p * 2^64 / q).
  mpz_class threshold = 0;
  if (!params.zero_frac.is_zero()) {
    mpz_class two64 = mpz_class(1) << 64;
    threshold = params.zero_frac.value().get_num() * two64 / params.zero_frac.value().get_den();
  }

  SplitMix64 rng(params.seed);
  std::vector<Arc> arcs;
  arcs.reserve(params.arcs);
  for (std::uint32_t i = 0; i < params.arcs; ++i) {
    Arc a;
    a.tail = static_cast<NodeId>(rng.below(params.nodes));
    NodeId h = static_cast<NodeId>(rng.below(params.nodes - 1));
    a.head = h + (h >= a.tail ? 1 : 0);
    std::uint64_t zero_draw = rng.next();
    std::uint64_t cost_draw = rng.below(params.max_cost + 1);
    if (mpz_class(zero_draw) < threshold)
      a.cost = Cost();
    else
      a.cost = Cost::from_int(cost_draw);
    arcs.push_back(std::move(a));
  }
  return Digraph(params.nodes, std::move(arcs));
}

unsigned thread_budget() {
  if (const char* env = std::getenv("DTC_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v > 16 ? 16 : v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return hw > 16 ? 16 : hw;
}

}  // namespace dtc
