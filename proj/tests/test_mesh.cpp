#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "ltswave/mesh.hpp"

using namespace ltswave;

namespace {

RegionSpec pulse_region() {
    RegionSpec spec;
    spec.a = 0.0;
    spec.b = 4.0;
    spec.fine_interval = {{1.6, 2.4}};
    spec.h_coarse = 0.1;
    spec.refinement_ratio = 2;
    return spec;
}

// Exhaustive relaxation distance oracle over the vertex graph.
std::vector<int> brute_force_distance(const Mesh1D& mesh) {
    std::vector<int> dist(mesh.num_vertices(), unreachable_distance);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        if (!mesh.fine_flags[e]) continue;
        dist[mesh.elements[e][0]] = 0;
        dist[mesh.elements[e][1]] = 0;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : mesh.elements) {
            for (int side = 0; side < 2; ++side) {
                int u = e[side], v = e[1 - side];
                if (dist[u] != unreachable_distance &&
                    dist[u] + 1 < dist[v]) {
                    dist[v] = dist[u] + 1;
                    changed = true;
                }
            }
        }
    }
    return dist;
}

int vertex_at(const Mesh1D& mesh, double x) {
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (std::abs(mesh.vertices[v] - x) < 1e-12) return v;
    FAIL("no vertex at " << x);
    return -1;
}

}  // namespace

TEST_CASE("locally refined mesh has the expected layout") {
    Mesh1D mesh = build_locally_refined(pulse_region());

    CHECK(mesh.num_elements() == 48);
    CHECK(mesh.num_vertices() == 49);
    CHECK(std::count(mesh.fine_flags.begin(), mesh.fine_flags.end(), 1) == 16);
    CHECK(mesh.h_coarse == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(mesh.h_fine == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(mesh.vertices.front() == 0.0);
    CHECK(mesh.vertices.back() == 4.0);

    for (int v = 1; v < mesh.num_vertices(); ++v)
        CHECK(mesh.vertices[v] > mesh.vertices[v - 1]);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        CHECK(mesh.elements[e][0] == e);
        CHECK(mesh.elements[e][1] == e + 1);
        double len = mesh.vertices[e + 1] - mesh.vertices[e];
        double mid = 0.5 * (mesh.vertices[e] + mesh.vertices[e + 1]);
        bool inside = mid > 1.6 && mid < 2.4;
        CHECK(bool(mesh.fine_flags[e]) == inside);
        CHECK(len == doctest::Approx(inside ? 0.05 : 0.1).epsilon(1e-12));
    }
}

TEST_CASE("vertex distances count hops to the fine region") {
    Mesh1D mesh = build_locally_refined(pulse_region());

    CHECK(mesh.vertex_distance[vertex_at(mesh, 1.6)] == 0);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 2.4)] == 0);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 1.65)] == 0);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 1.5)] == 1);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 2.5)] == 1);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 1.4)] == 2);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 0.0)] == 16);
    CHECK(mesh.vertex_distance[vertex_at(mesh, 4.0)] == 16);

    // 1-Lipschitz across every element.
    for (const auto& e : mesh.elements)
        CHECK(std::abs(mesh.vertex_distance[e[0]] -
                       mesh.vertex_distance[e[1]]) <= 1);
}

TEST_CASE("distances agree with an exhaustive oracle") {
    std::vector<RegionSpec> specs;
    specs.push_back(pulse_region());
    RegionSpec s2;
    s2.a = 0.0;
    s2.b = 1.0;
    s2.fine_interval = {{0.3, 0.5}};
    s2.h_coarse = 0.05;
    s2.refinement_ratio = 3;
    specs.push_back(s2);
    RegionSpec s3;
    s3.a = -1.0;
    s3.b = 1.0;
    s3.fine_interval = {{-1.0, -0.5}};
    s3.h_coarse = 0.25;
    s3.refinement_ratio = 4;
    specs.push_back(s3);

    for (const auto& spec : specs) {
        Mesh1D mesh = build_locally_refined(spec);
        REQUIRE(mesh.num_vertices() <= 200);
        std::vector<int> oracle = brute_force_distance(mesh);
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            CAPTURE(v);
            CHECK(mesh.vertex_distance[v] == oracle[v]);
        }
    }
}

TEST_CASE("uniform mesh when no fine interval is given") {
    RegionSpec spec;
    spec.a = 0.0;
    spec.b = 1.0;
    spec.h_coarse = 0.1;
    spec.refinement_ratio = 4;
    Mesh1D mesh = build_locally_refined(spec);

    CHECK(mesh.num_elements() == 10);
    CHECK(mesh.h_fine == mesh.h_coarse);
    CHECK(std::count(mesh.fine_flags.begin(), mesh.fine_flags.end(), 1) == 0);
    for (int d : mesh.vertex_distance) CHECK(d == unreachable_distance);
    for (double w : eta_weights(mesh, 3)) CHECK(w == 0.0);

    // An empty fine interval behaves like no fine interval.
    spec.fine_interval = {{0.3, 0.3}};
    Mesh1D degenerate = build_locally_refined(spec);
    CHECK(degenerate.num_elements() == 10);
    CHECK(std::count(degenerate.fine_flags.begin(), degenerate.fine_flags.end(),
                     1) == 0);
}

TEST_CASE("transition weights decay linearly in the hop distance") {
    Mesh1D mesh = build_locally_refined(pulse_region());

    std::vector<double> indicator = eta_weights(mesh, 1);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        double expected = mesh.vertex_distance[v] == 0 ? 1.0 : 0.0;
        CHECK(indicator[v] == expected);
    }

    std::vector<double> eta = eta_weights(mesh, 3);
    CHECK(eta[vertex_at(mesh, 1.4)] == doctest::Approx(1.0 / 3.0));
    CHECK(eta[vertex_at(mesh, 1.5)] == doctest::Approx(2.0 / 3.0));
    CHECK(eta[vertex_at(mesh, 2.0)] == 1.0);
    CHECK(eta[vertex_at(mesh, 1.3)] == 0.0);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        CHECK(eta[v] >= 0.0);
        CHECK(eta[v] <= 1.0);
        if (mesh.vertex_distance[v] >= 3) CHECK(eta[v] == 0.0);
        if (mesh.vertex_distance[v] == 0) CHECK(eta[v] == 1.0);
    }

    CHECK_THROWS_AS(eta_weights(mesh, 0), std::invalid_argument);
}

TEST_CASE("layer masks grow one element ring at a time") {
    Mesh1D mesh = build_locally_refined(pulse_region());

    std::vector<std::uint8_t> base = fine_layers(mesh, 0);
    CHECK(base == mesh.fine_flags);

    std::vector<std::uint8_t> one = fine_layers(mesh, 1);
    int count = int(std::count(one.begin(), one.end(), 1));
    CHECK(count == 18);
    CHECK(one[15] == 1);
    CHECK(one[32] == 1);
    CHECK(one[14] == 0);

    std::vector<std::uint8_t> prev = base;
    for (int r = 1; r <= 17; ++r) {
        std::vector<std::uint8_t> cur = fine_layers(mesh, r);
        for (int e = 0; e < mesh.num_elements(); ++e) {
            if (prev[e]) CHECK(cur[e] == 1);
        }
        prev = cur;
    }
    CHECK(std::count(prev.begin(), prev.end(), 1) == mesh.num_elements());
    std::vector<std::uint8_t> fifteen = fine_layers(mesh, 15);
    CHECK(fifteen[0] == 0);
    std::vector<std::uint8_t> sixteen = fine_layers(mesh, 16);
    CHECK(sixteen[0] == 1);

    CHECK_THROWS_AS(fine_layers(mesh, -1), std::invalid_argument);
}

TEST_CASE("geometry snaps to the coarse grid or is rejected") {
    // Domain length off by less than half a cell rescales the spacing.
    RegionSpec near;
    near.a = 0.0;
    near.b = 1.03;
    near.h_coarse = 0.1;
    Mesh1D rescaled = build_locally_refined(near);
    CHECK(rescaled.num_elements() == 10);
    CHECK(rescaled.h_coarse == doctest::Approx(0.103).epsilon(1e-13));

    // Exactly half a cell is ambiguous.
    RegionSpec tie;
    tie.a = 0.0;
    tie.b = 1.05;
    tie.h_coarse = 0.1;
    CHECK_THROWS_AS(build_locally_refined(tie), std::invalid_argument);

    // Fine endpoints snap to the nearest grid line.
    RegionSpec offgrid = pulse_region();
    offgrid.fine_interval = {{1.63, 2.38}};
    Mesh1D snapped = build_locally_refined(offgrid);
    Mesh1D exact = build_locally_refined(pulse_region());
    CHECK(snapped.fine_flags == exact.fine_flags);

    RegionSpec fine_tie = pulse_region();
    fine_tie.fine_interval = {{1.65, 2.4}};
    CHECK_THROWS_AS(build_locally_refined(fine_tie), std::invalid_argument);

    RegionSpec narrow = pulse_region();
    narrow.fine_interval = {{1.6, 1.64}};
    CHECK_THROWS_AS(build_locally_refined(narrow), std::invalid_argument);

    RegionSpec outside = pulse_region();
    outside.fine_interval = {{-0.5, 2.4}};
    CHECK_THROWS_AS(build_locally_refined(outside), std::invalid_argument);

    RegionSpec flipped;
    flipped.a = 1.0;
    flipped.b = 0.0;
    CHECK_THROWS_AS(build_locally_refined(flipped), std::invalid_argument);

    RegionSpec badh;
    badh.h_coarse = 0.0;
    CHECK_THROWS_AS(build_locally_refined(badh), std::invalid_argument);

    RegionSpec badratio = pulse_region();
    badratio.refinement_ratio = 0;
    CHECK_THROWS_AS(build_locally_refined(badratio), std::invalid_argument);
}

TEST_CASE("summary serializes the mesh statistics") {
    Mesh1D mesh = build_locally_refined(pulse_region());
    nlohmann::json j = nlohmann::json::parse(mesh_summary_json(mesh));

    CHECK(j.at("vertices").get<int>() == 49);
    CHECK(j.at("elements").get<int>() == 48);
    CHECK(j.at("fine_elements").get<int>() == 16);
    CHECK(j.at("coarse_elements").get<int>() == 32);
    CHECK(j.at("h_coarse").get<double>() == doctest::Approx(0.1));
    CHECK(j.at("h_fine").get<double>() == doctest::Approx(0.05));
    CHECK(j.at("fine_fraction").get<double>() ==
          doctest::Approx(1.0 / 3.0));
}
