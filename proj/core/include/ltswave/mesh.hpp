#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ltswave {

// Distance assigned to vertices with no path to the fine region.
inline constexpr int unreachable_distance = std::numeric_limits<int>::max();

struct RegionSpec {
    double a = 0.0;
    double b = 1.0;
    std::optional<std::pair<double, double>> fine_interval;
    double h_coarse = 0.1;
    int refinement_ratio = 1;
};

struct Mesh1D {
    std::vector<double> vertices;             // strictly increasing
    std::vector<std::array<int, 2>> elements; // vertex index pairs
    std::vector<std::uint8_t> fine_flags;     // one flag per element
    double h_coarse = 0.0;                    // max coarse element length
    double h_fine = 0.0;                      // max fine element length
    // Hops to the nearest vertex of a fine element, over the vertex graph
    // whose edges are the elements; unreachable_distance when no fine region.
    std::vector<int> vertex_distance;

    int num_vertices() const { return int(vertices.size()); }
    int num_elements() const { return int(elements.size()); }
};

// Builds a mesh that is uniform with spacing h_coarse outside fine_interval
// and uniform with spacing h_coarse/refinement_ratio inside it.  Endpoints of
// fine_interval are snapped to the coarse grid; geometry that does not sit on
// the grid (off by half a cell) is rejected with std::invalid_argument.
Mesh1D build_locally_refined(const RegionSpec& spec);

// Per-vertex transition weight eta(z) = max(0, 1 - dist(z)/s); s >= 1.
// s = 1 yields the indicator of the fine-region vertices.
std::vector<double> eta_weights(const Mesh1D& mesh, int s);

// Element mask of the fine region enlarged r times by all elements touching
// the closure of the previous set; r = 0 returns the fine flags themselves.
std::vector<std::uint8_t> fine_layers(const Mesh1D& mesh, int r);

// Compact JSON summary (element counts, spacings, fine fraction).
std::string mesh_summary_json(const Mesh1D& mesh);

}  // namespace ltswave
