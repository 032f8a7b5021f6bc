#include "ltswave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "json.hpp"

namespace ltswave {

namespace {

// Snaps x to the nearest multiple of h measured from a; rejects values that
// sit half a cell away from the grid (ambiguous geometry).
long snap_to_grid(double x, double a, double h, const char* what) {
    double t = (x - a) / h;
    long i = std::lround(t);
    if (std::abs(t - double(i)) > 0.5 - 1e-9) {
        throw std::invalid_argument(std::string(what) +
                                    " does not lie on the coarse grid");
    }
    return i;
}

}  // namespace

Mesh1D build_locally_refined(const RegionSpec& spec) {
    if (!(spec.b > spec.a))
        throw std::invalid_argument("build_locally_refined: need b > a");
    if (!(spec.h_coarse > 0.0))
        throw std::invalid_argument("build_locally_refined: need h_coarse > 0");
    if (spec.refinement_ratio < 1)
        throw std::invalid_argument(
            "build_locally_refined: refinement ratio must be >= 1");

    long n_total = snap_to_grid(spec.b, spec.a, spec.h_coarse, "domain length");
    if (n_total < 1)
        throw std::invalid_argument(
            "build_locally_refined: domain shorter than one coarse cell");
    double h = (spec.b - spec.a) / double(n_total);

    long ic = 0, id = 0;
    bool has_fine = false;
    if (spec.fine_interval) {
        auto [c, d] = *spec.fine_interval;
        if (!(spec.a <= c && c <= d && d <= spec.b))
            throw std::invalid_argument(
                "build_locally_refined: fine interval outside domain");
        if (c < d) {
            ic = snap_to_grid(c, spec.a, h, "fine interval start");
            id = snap_to_grid(d, spec.a, h, "fine interval end");
            if (ic == id)
                throw std::invalid_argument(
                    "build_locally_refined: fine interval narrower than one "
                    "coarse cell");
            has_fine = true;
        }
    }

    Mesh1D mesh;
    mesh.h_coarse = h;
    mesh.h_fine = has_fine ? h / double(spec.refinement_ratio) : h;

    auto push_span = [&](long cells, double x0, double dx, bool fine) {
        for (long i = 0; i < cells; ++i) {
            int left = mesh.num_vertices() - 1;
            mesh.vertices.push_back(x0 + double(i + 1) * dx);
            mesh.elements.push_back({left, left + 1});
            mesh.fine_flags.push_back(fine ? 1 : 0);
        }
    };

    mesh.vertices.push_back(spec.a);
    if (!has_fine) {
        push_span(n_total, spec.a, h, false);
    } else {
        double xc = spec.a + double(ic) * h;
        double xd = spec.a + double(id) * h;
        push_span(ic, spec.a, h, false);
        push_span((id - ic) * spec.refinement_ratio, xc, mesh.h_fine, true);
        push_span(n_total - id, xd, h, false);
    }
    mesh.vertices.back() = spec.b;  // avoid accumulated roundoff at the end

    // Multi-source BFS from all vertices of fine elements.
    mesh.vertex_distance.assign(mesh.num_vertices(), unreachable_distance);
    std::deque<int> queue;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        if (!mesh.fine_flags[e]) continue;
        for (int v : mesh.elements[e]) {
            if (mesh.vertex_distance[v] != 0) {
                mesh.vertex_distance[v] = 0;
                queue.push_back(v);
            }
        }
    }
    std::vector<std::vector<int>> adjacency(mesh.num_vertices());
    for (const auto& e : mesh.elements) {
        adjacency[e[0]].push_back(e[1]);
        adjacency[e[1]].push_back(e[0]);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adjacency[v]) {
            if (mesh.vertex_distance[w] == unreachable_distance) {
                mesh.vertex_distance[w] = mesh.vertex_distance[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return mesh;
}

std::vector<double> eta_weights(const Mesh1D& mesh, int s) {
    if (s < 1) throw std::invalid_argument("eta_weights: need s >= 1");
    std::vector<double> eta(mesh.num_vertices(), 0.0);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        int d = mesh.vertex_distance[v];
        if (d == unreachable_distance || d >= s) continue;
        eta[v] = 1.0 - double(d) / double(s);
    }
    return eta;
}

std::vector<std::uint8_t> fine_layers(const Mesh1D& mesh, int r) {
    if (r < 0) throw std::invalid_argument("fine_layers: need r >= 0");
    std::vector<std::uint8_t> mask(mesh.num_elements(), 0);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        if (mesh.fine_flags[e]) {
            mask[e] = 1;
            continue;
        }
        if (r == 0) continue;
        // A coarse element joins layer r once some vertex of it is within
        // r-1 hops of the fine region (touching the previous layer closure).
        int md = std::min(mesh.vertex_distance[mesh.elements[e][0]],
                          mesh.vertex_distance[mesh.elements[e][1]]);
        if (md != unreachable_distance && md <= r - 1) mask[e] = 1;
    }
    return mask;
}

std::string mesh_summary_json(const Mesh1D& mesh) {
    long fine_count =
        std::count(mesh.fine_flags.begin(), mesh.fine_flags.end(), 1);
    nlohmann::json j;
    j["vertices"] = mesh.num_vertices();
    j["elements"] = mesh.num_elements();
    j["fine_elements"] = fine_count;
    j["coarse_elements"] = mesh.num_elements() - fine_count;
    j["h_coarse"] = mesh.h_coarse;
    j["h_fine"] = mesh.h_fine;
    j["fine_fraction"] =
        mesh.num_elements() ? double(fine_count) / mesh.num_elements() : 0.0;
    return j.dump();
}

}  // namespace ltswave
