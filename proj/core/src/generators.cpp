#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "gapwalk/error.hpp"
#include "gapwalk/scenarios.hpp"

namespace gapwalk {
namespace {

// std::uniform_real_distribution is implementation-defined; map the engine's
// raw output ourselves so a seed means the same graph everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool chance(double p) { return uniform() < p; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

std::string numbered(const char* format, std::size_t a, std::size_t b = 0, std::size_t c = 0) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, a, b, c);
  return buffer;
}

double round_to(double value, double step) { return std::round(value / step) * step; }

Quantity quantity(double value, std::string unit = {}) { return {value, std::move(unit)}; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, what);
}

void link(std::vector<EdgeSpec>& edges, const std::string& a, const std::string& b,
          const PropertyBag& props) {
  edges.push_back({a, b, props});
  edges.push_back({b, a, props});
}

}  // namespace

TypedGraph generate_telco(const TelcoGeneratorParams& p) {
  require(p.sites >= 1, "sites must be >= 1");
  require(p.odfs_per_site >= 1, "odfs_per_site must be >= 1");
  require(p.amplifier_fraction >= 0.0 && p.amplifier_fraction <= 1.0, "amplifier_fraction must be in [0, 1]");
  require(p.intra_site_link_probability >= 0.0 && p.intra_site_link_probability <= 1.0,
          "intra_site_link_probability must be in [0, 1]");
  require(p.site_spacing_m > 0.0 && p.site_extent_m > 0.0, "site dimensions must be positive");
  require(p.min_attenuation_db_per_km > 0.0 && p.min_attenuation_db_per_km <= p.max_attenuation_db_per_km,
          "attenuation range must satisfy 0 < min <= max");
  require(p.connector_loss_db > 0.0, "connector_loss_db must be positive");

  Rng rng(p.seed);
  const auto columns = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p.sites))));

  struct Site {
    std::vector<std::string> odfs;
    std::vector<std::string> outside;  // splice boxes and amplifier, ODFs when none
  };
  std::vector<Site> sites(p.sites);
  std::vector<NodeSpec> nodes;
  std::vector<Coordinates> where;
  auto add_node = [&](std::string id, std::size_t site, std::string_view type) {
    const double ox = static_cast<double>(site % columns) * p.site_spacing_m;
    const double oy = static_cast<double>(site / columns) * p.site_spacing_m;
    Coordinates c{round_to(ox + rng.uniform(0.0, p.site_extent_m), 1.0),
                  round_to(oy + rng.uniform(0.0, p.site_extent_m), 1.0)};
    PropertyBag props{{std::string(kNodeTypeKey), std::string(type)},
                      {"site", numbered("S%02zu", site)},
                      {std::string(kCoordinatesKey), c},
                      {"fiber_type", std::string(rng.chance(0.85) ? "SMF" : "NZDSF")}};
    nodes.push_back({id, std::move(props)});
    where.push_back(c);
    return id;
  };
  auto position = [&](const std::string& id) {
    auto it = std::find_if(nodes.begin(), nodes.end(), [&](const NodeSpec& n) { return n.id == id; });
    return where[static_cast<std::size_t>(it - nodes.begin())];
  };
  auto fiber_of = [&](const std::string& id) {
    auto it = std::find_if(nodes.begin(), nodes.end(), [&](const NodeSpec& n) { return n.id == id; });
    return it->properties.at("fiber_type");
  };

  std::vector<EdgeSpec> edges;
  for (std::size_t s = 0; s < p.sites; ++s) {
    Site& site = sites[s];
    for (std::size_t i = 1; i <= p.odfs_per_site; ++i) {
      site.odfs.push_back(add_node(numbered("S%02zu-ODF%zu", s, i), s, node_types::kOdf));
    }
    std::vector<std::string> splices;
    for (std::size_t i = 1; i <= p.splice_boxes_per_site; ++i) {
      splices.push_back(add_node(numbered("S%02zu-SPL%zu", s, i), s, node_types::kSpliceBox));
    }
    site.outside = splices.empty() ? site.odfs : splices;
    if (rng.chance(p.amplifier_fraction)) {
      const std::string amp = add_node(numbered("S%02zu-AMP", s), s, node_types::kAmplifier);
      const std::string& anchor = site.outside[rng.index(site.outside.size())];
      const double length = std::max(1.0, round_to(euclidean_distance(position(amp), position(anchor)), 1.0));
      link(edges, anchor, amp,
           {{"length_m", quantity(length, "m")},
            {"attenuation_db", quantity(p.connector_loss_db, "dB")},
            {"fiber_type", fiber_of(anchor)}});
      site.outside.push_back(amp);
    }
    for (const auto& odf : site.odfs) {
      for (const auto& splice : splices) {
        if (!rng.chance(p.intra_site_link_probability)) continue;
        const double length = std::max(1.0, round_to(euclidean_distance(position(odf), position(splice)), 1.0));
        link(edges, odf, splice,
             {{"length_m", quantity(length, "m")},
              {"attenuation_db", quantity(p.connector_loss_db, "dB")},
              {"fiber_type", fiber_of(odf)}});
      }
    }
  }

  auto span = [&](std::size_t a, std::size_t b) {
    const std::string& from = sites[a].outside[rng.index(sites[a].outside.size())];
    const std::string& to = sites[b].outside[rng.index(sites[b].outside.size())];
    const double length =
        round_to(euclidean_distance(position(from), position(to)) * rng.uniform(1.05, 1.3), 1.0);
    const double per_km = rng.uniform(p.min_attenuation_db_per_km, p.max_attenuation_db_per_km);
    const double attenuation = round_to(length / 1000.0 * per_km + p.connector_loss_db, 0.01);
    link(edges, from, to,
         {{"length_m", quantity(length, "m")},
          {"attenuation_db", quantity(attenuation, "dB")},
          {"fiber_type", std::string("SMF")}});
  };
  for (std::size_t s = 0; s < p.sites; ++s) {
    if ((s + 1) % columns != 0 && s + 1 < p.sites) span(s, s + 1);
    if (s + columns < p.sites) span(s, s + columns);
  }
  return build_graph(std::move(nodes), std::move(edges));
}

TypedGraph generate_datacenter(const DatacenterGeneratorParams& p) {
  require(p.rooms >= 1, "rooms must be >= 1");
  require(p.rows_per_room >= 1, "rows_per_room must be >= 1");
  require(p.racks_per_row >= 1, "racks_per_row must be >= 1");
  require(p.panels_per_rack >= 1, "panels_per_rack must be >= 1");
  require(p.existing_cross_connect_probability >= 0.0 && p.existing_cross_connect_probability <= 1.0,
          "existing_cross_connect_probability must be in [0, 1]");
  require(p.full_panel_probability >= 0.0 && p.full_panel_probability <= 1.0,
          "full_panel_probability must be in [0, 1]");

  Rng rng(p.seed);
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  auto cable = [](const char* kind, double length) {
    return PropertyBag{{"cable", std::string(kind)}, {"length_m", quantity(length, "m")}};
  };

  for (std::size_t room = 1; room <= p.rooms; ++room) {
    std::string previous_row_uplink;
    for (std::size_t row = 1; row <= p.rows_per_room; ++row) {
      const std::string room_id = numbered("R%zu", room);
      const std::string row_id = numbered("R%zu-W%zu", room, row);
      std::vector<bool> distribution(p.racks_per_row, false);
      for (std::size_t k = 0; k < p.racks_per_row; ++k) {
        distribution[k] = k % (p.client_racks_per_distribution + 1) == p.client_racks_per_distribution;
      }
      if (std::none_of(distribution.begin(), distribution.end(), [](bool d) { return d; })) {
        distribution.back() = true;
      }

      std::vector<std::string> last_panel(p.racks_per_row);
      for (std::size_t k = 0; k < p.racks_per_row; ++k) {
        const std::string rack_id = numbered("R%zu-W%zu-K%02zu", room, row, k + 1);
        auto add = [&](const std::string& id, std::string_view type, double ports, double slot) {
          PropertyBag props{{std::string(kNodeTypeKey), std::string(type)},
                            {"room", room_id},
                            {"row", row_id},
                            {"rack", rack_id},
                            {"available_ports", quantity(ports)},
                            {std::string(kCoordinatesKey),
                             Coordinates{static_cast<double>(room - 1) * 100.0 + static_cast<double>(k) * 0.6,
                                         static_cast<double>(row - 1) * 3.0 + slot * 0.1}}};
          if (type == node_types::kSwitch) props.emplace("upstream", true);
          nodes.push_back({id, std::move(props)});
        };
        std::vector<std::string> panels;
        for (std::size_t i = 1; i <= p.panels_per_rack; ++i) {
          const double ports = rng.chance(p.full_panel_probability) ? 0.0 : 1.0 + static_cast<double>(rng.index(4));
          panels.push_back(rack_id + numbered("-PP%zu", i));
          add(panels.back(), node_types::kPatchPanel, ports, static_cast<double>(i));
        }
        for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
          if (rng.chance(p.existing_cross_connect_probability)) {
            link(edges, panels[i], panels[i + 1], cable("cross_connect", 1.0));
          }
        }
        if (distribution[k]) {
          const std::string sw = rack_id + "-SW";
          add(sw, node_types::kSwitch, 1.0 + static_cast<double>(rng.index(8)), 0.0);
          link(edges, sw, panels.front(), cable("patch", 1.0));
        } else {
          const std::string srv = rack_id + "-SRV";
          add(srv, node_types::kServer, 0.0, 0.0);
          link(edges, srv, panels.front(), cable("patch", 1.0));
        }
        last_panel[k] = panels.back();
      }

      // Structured cabling from each client rack to the nearest distribution rack.
      std::string first_distribution;
      for (std::size_t k = 0; k < p.racks_per_row; ++k) {
        if (distribution[k]) {
          if (first_distribution.empty()) first_distribution = last_panel[k];
          continue;
        }
        std::size_t best = p.racks_per_row;
        for (std::size_t d = 0; d < p.racks_per_row; ++d) {
          if (!distribution[d]) continue;
          auto gap = [&](std::size_t x) { return x > k ? x - k : k - x; };
          if (best == p.racks_per_row || gap(d) < gap(best)) best = d;
        }
        const double length = static_cast<double>(best > k ? best - k : k - best) * 0.6 + 2.0;
        link(edges, last_panel[k], last_panel[best], cable("structured", length));
      }
      if (!previous_row_uplink.empty()) {
        link(edges, previous_row_uplink, first_distribution, cable("structured", 5.0));
      }
      previous_row_uplink = first_distribution;
    }
  }
  return build_graph(std::move(nodes), std::move(edges));
}

}  // namespace gapwalk
