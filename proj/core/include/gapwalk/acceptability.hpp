#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gapwalk/graph.hpp"

namespace gapwalk {

/// Produces the gap candidate set of a node. Implementations return candidates
/// in any order; `candidates` sorts, deduplicates and drops the node itself.
class DomainProvider {
 public:
  virtual ~DomainProvider() = default;

  std::vector<NodeIndex> candidates(const TypedGraph& g, NodeIndex n) const;
  std::vector<std::string> candidates(const TypedGraph& g, std::string_view id) const;

 protected:
  virtual std::vector<NodeIndex> collect(const TypedGraph& g, NodeIndex n) const = 0;
};

using DomainPtr = std::shared_ptr<const DomainProvider>;

class EmptyDomain final : public DomainProvider {
 protected:
  std::vector<NodeIndex> collect(const TypedGraph&, NodeIndex) const override { return {}; }
};

// Providers below index one specific graph at construction and refuse
// queries against any other graph (ConfigError).
class IndexedDomain : public DomainProvider {
 public:
  explicit IndexedDomain(std::shared_ptr<const TypedGraph> graph);
  const TypedGraph& graph() const { return *graph_; }

 protected:
  void check_graph(const TypedGraph& g) const;

 private:
  std::shared_ptr<const TypedGraph> graph_;
};

/// All nodes whose `scope_key` property equals that of n. Nodes without the
/// key have no candidates.
class ScopeDomain final : public IndexedDomain {
 public:
  ScopeDomain(std::shared_ptr<const TypedGraph> graph, std::string scope_key);
  const std::string& scope_key() const { return key_; }

 protected:
  std::vector<NodeIndex> collect(const TypedGraph& g, NodeIndex n) const override;

 private:
  std::string key_;
  std::vector<std::size_t> group_of_;  // npos for nodes lacking the key
  std::vector<std::vector<NodeIndex>> groups_;
};

/// All nodes whose string property `key` is one of `values`, independent of n.
class PropertyInDomain final : public IndexedDomain {
 public:
  PropertyInDomain(std::shared_ptr<const TypedGraph> graph, std::string key,
                   std::set<std::string, std::less<>> values);

 protected:
  std::vector<NodeIndex> collect(const TypedGraph& g, NodeIndex n) const override;

 private:
  std::vector<NodeIndex> matches_;
};

/// All nodes within `radius_m` (inclusive) of n, through a uniform grid whose
/// cell side equals the radius. Exact: the grid only narrows the scan.
class SpatialDomain final : public IndexedDomain {
 public:
  SpatialDomain(std::shared_ptr<const TypedGraph> graph, double radius_m,
                std::string coordinates_key = std::string(kCoordinatesKey));
  double radius_m() const { return radius_m_; }

 protected:
  std::vector<NodeIndex> collect(const TypedGraph& g, NodeIndex n) const override;

 private:
  using Cell = std::pair<std::int64_t, std::int64_t>;
  struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
      return std::hash<std::int64_t>{}(c.first * 0x9E3779B97F4A7C15LL ^ c.second);
    }
  };
  Cell cell_of(const Coordinates& p) const;

  double radius_m_;
  std::string key_;
  std::vector<std::optional<Coordinates>> positions_;
  std::unordered_map<Cell, std::vector<NodeIndex>, CellHash> cells_;
};

class CompositeDomain final : public DomainProvider {
 public:
  enum class Mode { kIntersection, kUnion };
  CompositeDomain(Mode mode, std::vector<DomainPtr> parts);

 protected:
  std::vector<NodeIndex> collect(const TypedGraph& g, NodeIndex n) const override;

 private:
  Mode mode_;
  std::vector<DomainPtr> parts_;
};

/// Fine-grained test on a candidate pair (n, m), n != m. Pure.
class GapPredicate {
 public:
  virtual ~GapPredicate() = default;

  bool accepts(const TypedGraph& g, NodeIndex n, NodeIndex m) const;
  bool accepts(const TypedGraph& g, std::string_view n, std::string_view m) const;

 protected:
  virtual bool evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const = 0;
};

using PredicatePtr = std::shared_ptr<const GapPredicate>;

class AcceptAll final : public GapPredicate {
 protected:
  bool evaluate(const TypedGraph&, NodeIndex, NodeIndex) const override { return true; }
};

/// True iff the endpoints are strictly closer than `limit_m`.
class MaxDistance final : public GapPredicate {
 public:
  explicit MaxDistance(double limit_m, std::string coordinates_key = std::string(kCoordinatesKey))
      : limit_m_(limit_m), key_(std::move(coordinates_key)) {}
  double limit_m() const { return limit_m_; }

 protected:
  bool evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const override;

 private:
  double limit_m_;
  std::string key_;
};

class PropertyEquals final : public GapPredicate {
 public:
  explicit PropertyEquals(std::string key) : key_(std::move(key)) {}

 protected:
  bool evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const override;

 private:
  std::string key_;
};

/// Identical values are always compatible; `table` lists additional
/// compatible (unordered) pairs.
class PropertyCompatible final : public GapPredicate {
 public:
  PropertyCompatible(std::string key, std::vector<std::pair<std::string, std::string>> table = {});

 protected:
  bool evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const override;

 private:
  std::string key_;
  std::set<std::pair<std::string, std::string>, std::less<>> compatible_;
};

/// Both endpoints report a positive `available_ports` count.
class HasAvailablePorts final : public GapPredicate {
 public:
  static constexpr std::string_view kDefaultKey = "available_ports";
  explicit HasAvailablePorts(std::string key = std::string(kDefaultKey)) : key_(std::move(key)) {}

 protected:
  bool evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const override;

 private:
  std::string key_;
};

class Conjunction final : public GapPredicate {
 public:
  explicit Conjunction(std::vector<PredicatePtr> parts) : parts_(std::move(parts)) {}

 protected:
  bool evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const override;

 private:
  std::vector<PredicatePtr> parts_;
};

}  // namespace gapwalk
