#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gapwalk {

struct Dimension {
  std::string name;
  std::string unit;
  double value = 0.0;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

/// Accumulation carrier used by the scenario models, the policy files and the
/// CLI: an ordered tuple of named numeric dimensions. Counters are dimensions
/// holding whole numbers.
class Accumulation {
 public:
  Accumulation() = default;

  /// Throws Error(kConfigError) on a repeated name.
  Accumulation& add_dimension(std::string name, std::string unit = {}, double initial = 0.0);

  std::optional<std::size_t> find(std::string_view name) const;
  bool has(std::string_view name) const { return find(name).has_value(); }

  /// Throws Error(kDimensionMismatch) for an unknown name.
  double get(std::string_view name) const;
  void set(std::string_view name, double value);
  void add(std::string_view name, double delta) { set(name, get(name) + delta); }

  std::span<const Dimension> dimensions() const { return dims_; }
  std::size_t size() const { return dims_.size(); }

  friend bool operator==(const Accumulation&, const Accumulation&) = default;

 private:
  std::size_t require(std::string_view name) const;

  std::vector<Dimension> dims_;
};

}  // namespace gapwalk
