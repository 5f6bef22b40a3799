#include "tvnrel/reliability.hpp"

#include <stdexcept>
#include <unordered_map>

namespace tvnrel {

const char *to_string(Method method) {
  switch (method) {
  case Method::b:
    return "b";
  case Method::z:
    return "z";
  case Method::oracle:
    return "oracle";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "b" || text == "B")
    return Method::b;
  if (text == "z" || text == "Z")
    return Method::z;
  if (text == "oracle")
    return Method::oracle;
  throw std::invalid_argument("unknown method: " + std::string(text));
}

namespace {

void check_probabilities(std::span<const double> probs, Var m) {
  if (probs.size() < m)
    throw std::invalid_argument("reliability: expected " + std::to_string(m) + " probabilities");
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("reliability: probability out of [0,1]");
}

// Products of (1 - p) over variable ranges. Computed directly rather than
// from prefix quotients, which underflow on long ranges.
class FailureProducts {
public:
  explicit FailureProducts(std::span<const double> probs) : probs_(probs) {}
  /// Π (1 - p_j) for from <= j < to.
  [[nodiscard]] double range(Var from, Var to) const {
    double r = 1.0;
    for (Var j = from; j < to; ++j)
      r *= 1.0 - probs_[j - 1];
    return r;
  }

private:
  std::span<const double> probs_;
};

} // namespace

double reliability_bdd(const DiagramStore &store, NodeRef root, std::span<const double> probs,
                       Var m) {
  check_probabilities(probs, m);
  std::unordered_map<std::uint32_t, double> psi;
  auto rec = [&](auto &self, NodeRef n) -> double {
    if (n == BOT)
      return 0.0;
    if (n == TOP)
      return 1.0;
    if (auto it = psi.find(n.id); it != psi.end())
      return it->second;
    const double p = probs[store.label(n) - 1];
    const double v = self(self, store.hi(n)) * p + self(self, store.lo(n)) * (1.0 - p);
    psi.emplace(n.id, v);
    return v;
  };
  return rec(rec, root);
}

double reliability_zdd(const DiagramStore &store, NodeRef root, std::span<const double> probs,
                       Var m) {
  check_probabilities(probs, m);
  const FailureProducts fail(probs);
  auto level = [&](NodeRef n) -> Var { return n.is_terminal() ? m + 1 : store.label(n); };
  std::unordered_map<std::uint32_t, double> psi;
  auto rec = [&](auto &self, NodeRef n) -> double {
    if (n == BOT)
      return 0.0;
    if (n == TOP)
      return 1.0;
    if (auto it = psi.find(n.id); it != psi.end())
      return it->second;
    const Var l = store.label(n);
    const double p = probs[l - 1];
    const NodeRef lo = store.lo(n), hi = store.hi(n);
    const double v = self(self, hi) * fail.range(l + 1, level(hi)) * p +
                     self(self, lo) * fail.range(l + 1, level(lo)) * (1.0 - p);
    psi.emplace(n.id, v);
    return v;
  };
  return rec(rec, root) * fail.range(1, level(root));
}

} // namespace tvnrel
