#include "gapwalk/accumulation.hpp"

#include <algorithm>

#include "gapwalk/error.hpp"

namespace gapwalk {

Accumulation& Accumulation::add_dimension(std::string name, std::string unit, double initial) {
  if (has(name)) throw Error(ErrorCode::kConfigError, "accumulation dimension '" + name + "' repeated");
  dims_.push_back({std::move(name), std::move(unit), initial});
  return *this;
}

std::optional<std::size_t> Accumulation::find(std::string_view name) const {
  auto it = std::find_if(dims_.begin(), dims_.end(),
                         [&](const Dimension& d) { return d.name == name; });
  if (it == dims_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - dims_.begin());
}

std::size_t Accumulation::require(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::kDimensionMismatch, "no accumulation dimension '" + std::string(name) + "'");
}

double Accumulation::get(std::string_view name) const { return dims_[require(name)].value; }

void Accumulation::set(std::string_view name, double value) { dims_[require(name)].value = value; }

}  // namespace gapwalk
