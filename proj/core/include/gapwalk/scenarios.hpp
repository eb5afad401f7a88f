#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gapwalk/accumulation.hpp"
#include "gapwalk/engine.hpp"
#include "gapwalk/graph.hpp"

namespace gapwalk {

// Node types recognised by the scenario models.
namespace node_types {
inline constexpr std::string_view kOdf = "odf";
inline constexpr std::string_view kSpliceBox = "splice_box";
inline constexpr std::string_view kAmplifier = "amplifier";
inline constexpr std::string_view kServer = "server";
inline constexpr std::string_view kPatchPanel = "patch_panel";
inline constexpr std::string_view kSwitch = "switch";
}  // namespace node_types

// ---------------------------------------------------------------------------
// Telco: optical route between two ODFs.
// ---------------------------------------------------------------------------

namespace telco_dims {
inline constexpr std::string_view kLength = "total_length_m";
inline constexpr std::string_view kAttenuation = "total_attenuation_db";
inline constexpr std::string_view kGaps = "gap_count";
inline constexpr std::string_view kAmplifiers = "amplifier_count";
}  // namespace telco_dims

struct TelcoPolicy {
  std::string target;
  double max_gap_distance_m = 100.0;
  double attenuation_budget_db = 30.0;
  std::size_t max_gaps = 1;
  std::size_t max_amplifiers = 1;
  // A gap is costed as its straight-line length times the fiber coefficient
  // plus one connector loss.
  double gap_attenuation_db_per_km = 0.35;
  double gap_connector_loss_db = 0.5;
  // Extra compatible fiber type pairs; equal types are always compatible.
  std::vector<std::pair<std::string, std::string>> fiber_compatibility;
};

/// Typed read-out of the telco accumulation dimensions.
struct TelcoAccumulation {
  double total_length_m = 0.0;
  double total_attenuation_db = 0.0;
  std::size_t gap_count = 0;
  std::size_t amplifier_count = 0;

  static TelcoAccumulation from(const Accumulation& acc);
  friend bool operator==(const TelcoAccumulation&, const TelcoAccumulation&) = default;
};

Accumulation telco_initial_accumulation();

/// Scope domain on "site", distance + fiber compatibility predicate, additive
/// length/attenuation accumulation, budget-pruning sigma that terminates at the
/// target. Throws kUnknownNode, kNotAnOdf (start or target), kConfigError.
SearchConfig<Accumulation> telco_config(std::shared_ptr<const TypedGraph> g, NodeIndex start,
                                        const TelcoPolicy& policy);
SearchConfig<Accumulation> telco_config(std::shared_ptr<const TypedGraph> g, std::string_view start,
                                        const TelcoPolicy& policy);

// ---------------------------------------------------------------------------
// Datacenter: server to upstream switch.
// ---------------------------------------------------------------------------

namespace datacenter_dims {
inline constexpr std::string_view kGaps = "gap_count";
inline constexpr std::string_view kRacks = "racks_traversed";
inline constexpr std::string_view kRowChanges = "row_changes";
}  // namespace datacenter_dims

enum class ClientTier { kStandard, kPremium };
enum class GapScope { kSameRack, kSameRoom };

struct DatacenterPolicy {
  ClientTier tier = ClientTier::kStandard;
  std::size_t max_gaps = 2;
  std::size_t max_row_changes = 1;
  GapScope gap_scope = GapScope::kSameRack;
  // When set, only this upstream node terminates a traversal.
  std::optional<std::string> target;

  static DatacenterPolicy standard() { return {}; }
  static DatacenterPolicy premium() {
    return {ClientTier::kPremium, 5, 1, GapScope::kSameRoom, std::nullopt};
  }
};

struct DatacenterAccumulation {
  std::size_t gap_count = 0;
  std::size_t racks_traversed = 0;
  std::size_t row_changes = 0;

  static DatacenterAccumulation from(const Accumulation& acc);
  friend bool operator==(const DatacenterAccumulation&, const DatacenterAccumulation&) = default;
};

/// Throws kUnknownNode, kNotAServer, kMissingProperty (start without rack/row).
SearchConfig<Accumulation> datacenter_config(std::shared_ptr<const TypedGraph> g, NodeIndex start,
                                             const DatacenterPolicy& policy);
SearchConfig<Accumulation> datacenter_config(std::shared_ptr<const TypedGraph> g,
                                             std::string_view start,
                                             const DatacenterPolicy& policy);

// ---------------------------------------------------------------------------
// Synthetic topologies.
// ---------------------------------------------------------------------------

struct TelcoGeneratorParams {
  std::uint64_t seed = 1;
  std::size_t sites = 4;
  std::size_t odfs_per_site = 2;
  std::size_t splice_boxes_per_site = 1;
  // Probability that a site hosts one amplifier.
  double amplifier_fraction = 0.25;
  double site_spacing_m = 15000.0;
  // Side of the square in which a site's equipment is placed.
  double site_extent_m = 120.0;
  // Probability that an intra-site ODF/splice patch is documented.
  double intra_site_link_probability = 0.5;
  double min_attenuation_db_per_km = 0.25;
  double max_attenuation_db_per_km = 0.45;
  double connector_loss_db = 0.5;
};

struct DatacenterGeneratorParams {
  std::uint64_t seed = 1;
  std::size_t rooms = 1;
  std::size_t rows_per_room = 2;
  std::size_t racks_per_row = 4;
  std::size_t panels_per_rack = 2;
  // Client racks per distribution rack along a row.
  std::size_t client_racks_per_distribution = 3;
  // Probability that an intra-rack cross-connect already exists.
  double existing_cross_connect_probability = 0.3;
  // Probability that a patch panel has no free port.
  double full_panel_probability = 0.2;
};

/// Deterministic per seed. Throws Error(kInvalidParams).
TypedGraph generate_telco(const TelcoGeneratorParams& params);
TypedGraph generate_datacenter(const DatacenterGeneratorParams& params);

}  // namespace gapwalk
