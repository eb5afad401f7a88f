#include "gapwalk/estimate.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "gapwalk/error.hpp"

namespace gapwalk {

namespace mp = boost::multiprecision;

StateBound estimate_state_bound(std::size_t edges, std::size_t nodes, std::uint64_t max_domain,
                                std::uint32_t depth) {
  if (nodes == 0) throw Error(ErrorCode::kEmptyGraph, "the state bound needs at least one node");
  // (E/N + b)^L = (E + bN)^L / N^L
  mp::cpp_int base = mp::cpp_int(edges) + mp::cpp_int(max_domain) * nodes;
  mp::cpp_int num = mp::pow(base, depth);
  mp::cpp_int den = mp::pow(mp::cpp_int(nodes), depth);
  const mp::cpp_int divisor = mp::gcd(num, den);
  if (divisor != 0) {
    num /= divisor;
    den /= divisor;
  }

  StateBound bound;
  bound.is_integer = den == 1;
  bound.exact = num.str();
  if (!bound.is_integer) bound.exact += "/" + den.str();
  bound.approximate = static_cast<double>(mp::cpp_rational(num, den));

  const mp::cpp_int ceiling = (num + den - 1) / den;
  bound.capped = ceiling >= StateBound::kSaturated ? StateBound::kSaturated
                                                  : static_cast<std::uint64_t>(ceiling);
  return bound;
}

StateBound estimate_state_bound(const TypedGraph& g, std::uint64_t max_domain, std::uint32_t depth) {
  return estimate_state_bound(g.edge_count(), g.node_count(), max_domain, depth);
}

}  // namespace gapwalk
