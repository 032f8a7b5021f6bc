#include "ltswave/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ltswave {

namespace {

struct QuadRule {
    std::vector<double> t;  // nodes on [0,1]
    std::vector<double> w;  // weights summing to 1
};

// Gauss-Legendre nodes by Newton iteration on P_n, mapped to [0,1].
QuadRule gauss_rule(int n) {
    QuadRule rule;
    rule.t.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.t[i] = 0.5 * (1.0 - x);  // descending x -> ascending t
        rule.w[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const QuadRule& load_rule() {
    static const QuadRule rule = gauss_rule(8);
    return rule;
}

const QuadRule& error_rule() {
    static const QuadRule rule = gauss_rule(5);
    return rule;
}

constexpr int error_subdivisions = 8;

double shape(int degree, int i, double t) {
    if (degree == 1) return i == 0 ? 1.0 - t : t;
    switch (i) {
        case 0: return (1.0 - t) * (1.0 - 2.0 * t);
        case 1: return 4.0 * t * (1.0 - t);
        default: return t * (2.0 * t - 1.0);
    }
}

double shape_dt(int degree, int i, double t) {
    if (degree == 1) return i == 0 ? -1.0 : 1.0;
    switch (i) {
        case 0: return 4.0 * t - 3.0;
        case 1: return 4.0 - 8.0 * t;
        default: return 4.0 * t - 1.0;
    }
}

// Element index containing x (clamped to the domain).
int locate_element(const Mesh1D& mesh, double x) {
    auto it = std::upper_bound(mesh.vertices.begin(), mesh.vertices.end(), x);
    int e = int(it - mesh.vertices.begin()) - 1;
    return std::clamp(e, 0, mesh.num_elements() - 1);
}

}  // namespace

std::array<int, 3> FeSpace::element_nodes(int e) const {
    const auto& el = mesh.elements[e];
    if (degree == 1) return {el[0], el[1], -1};
    return {el[0], mesh.num_vertices() + e, el[1]};
}

FeSpace assemble(const Mesh1D& mesh, int degree, BoundaryKind bc,
                 const std::vector<double>& c2, int transition_layers) {
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("assemble: degree must be 1 or 2");
    if (int(c2.size()) != mesh.num_elements())
        throw std::invalid_argument("assemble: c2 must have one value per element");
    for (double v : c2)
        if (!(v > 0.0))
            throw std::invalid_argument("assemble: c2 must be positive");
    if (transition_layers < 1)
        throw std::invalid_argument("assemble: transition layers must be >= 1");

    FeSpace space;
    space.mesh = mesh;
    space.degree = degree;
    space.boundary = bc;
    space.c2 = c2;
    space.transition_layers = transition_layers;

    int num_nodes = mesh.num_vertices() +
                    (degree == 2 ? mesh.num_elements() : 0);
    space.node_x.resize(num_nodes);
    for (int v = 0; v < mesh.num_vertices(); ++v)
        space.node_x[v] = mesh.vertices[v];
    if (degree == 2) {
        for (int e = 0; e < mesh.num_elements(); ++e) {
            const auto& el = mesh.elements[e];
            space.node_x[mesh.num_vertices() + e] =
                0.5 * (mesh.vertices[el[0]] + mesh.vertices[el[1]]);
        }
    }

    space.active_index.assign(num_nodes, -1);
    int next = 0;
    for (int nd = 0; nd < num_nodes; ++nd) {
        if (bc == BoundaryKind::dirichlet &&
            (nd == 0 || nd == mesh.num_vertices() - 1))
            continue;
        space.active_index[nd] = next++;
    }
    space.node_of_active.resize(next);
    for (int nd = 0; nd < num_nodes; ++nd)
        if (space.active_index[nd] >= 0)
            space.node_of_active[space.active_index[nd]] = nd;

    // Lumped mass: P1 row-sum (h/2 per endpoint), P2 Simpson weights.
    space.lumped_mass.assign(next, 0.0);
    auto add_mass = [&](int node, double w) {
        int a = space.active_index[node];
        if (a >= 0) space.lumped_mass[a] += w;
    };
    for (int e = 0; e < mesh.num_elements(); ++e) {
        auto nodes = space.element_nodes(e);
        const auto& el = mesh.elements[e];
        double h = mesh.vertices[el[1]] - mesh.vertices[el[0]];
        if (degree == 1) {
            add_mass(nodes[0], 0.5 * h);
            add_mass(nodes[1], 0.5 * h);
        } else {
            add_mass(nodes[0], h / 6.0);
            add_mass(nodes[1], 4.0 * h / 6.0);
            add_mass(nodes[2], h / 6.0);
        }
    }

    // Stiffness via exact element matrices, scattered over active dofs.
    std::vector<std::map<int, double>> rows(next);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        auto nodes = space.element_nodes(e);
        const auto& el = mesh.elements[e];
        double h = mesh.vertices[el[1]] - mesh.vertices[el[0]];
        double s = c2[e] / h;
        double ke[3][3];
        if (degree == 1) {
            ke[0][0] = s;
            ke[0][1] = -s;
            ke[1][0] = -s;
            ke[1][1] = s;
        } else {
            double k11 = 7.0 * s / 3.0, k12 = -8.0 * s / 3.0, k13 = s / 3.0;
            double k22 = 16.0 * s / 3.0;
            ke[0][0] = k11; ke[0][1] = k12; ke[0][2] = k13;
            ke[1][0] = k12; ke[1][1] = k22; ke[1][2] = k12;
            ke[2][0] = k13; ke[2][1] = k12; ke[2][2] = k11;
        }
        int nn = space.nodes_per_element();
        for (int i = 0; i < nn; ++i) {
            int ai = space.active_index[nodes[i]];
            if (ai < 0) continue;
            for (int j = 0; j < nn; ++j) {
                int aj = space.active_index[nodes[j]];
                if (aj < 0) continue;
                rows[ai][aj] += ke[i][j];
            }
        }
    }
    space.k_row_ptr.resize(next + 1, 0);
    for (int i = 0; i < next; ++i)
        space.k_row_ptr[i + 1] = space.k_row_ptr[i] + int(rows[i].size());
    space.k_col.reserve(space.k_row_ptr[next]);
    space.k_val.reserve(space.k_row_ptr[next]);
    for (int i = 0; i < next; ++i) {
        for (const auto& [j, v] : rows[i]) {
            space.k_col.push_back(j);
            space.k_val.push_back(v);
        }
    }

    // Transition weights at dof coordinates: piecewise-linear eta over the
    // vertex graph, averaged onto P2 midpoints.
    std::vector<double> eta_v = eta_weights(mesh, transition_layers);
    space.eta.assign(next, 0.0);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        int a = space.active_index[v];
        if (a >= 0) space.eta[a] = eta_v[v];
    }
    if (degree == 2) {
        for (int e = 0; e < mesh.num_elements(); ++e) {
            int a = space.active_index[mesh.num_vertices() + e];
            if (a < 0) continue;
            const auto& el = mesh.elements[e];
            space.eta[a] = 0.5 * (eta_v[el[0]] + eta_v[el[1]]);
        }
    }
    return space;
}

FeSpace assemble(const Mesh1D& mesh, int degree, BoundaryKind bc, double c2,
                 int transition_layers) {
    return assemble(mesh, degree, bc,
                    std::vector<double>(mesh.num_elements(), c2),
                    transition_layers);
}

void apply_a(const FeSpace& space, const DiscreteField& u, DiscreteField& out) {
    int n = space.num_dofs();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = space.k_row_ptr[i]; k < space.k_row_ptr[i + 1]; ++k)
            acc += space.k_val[k] * u[space.k_col[k]];
        out[i] = acc / space.lumped_mass[i];
    }
}

DiscreteField apply_a(const FeSpace& space, const DiscreteField& u) {
    DiscreteField out;
    apply_a(space, u, out);
    return out;
}

DiscreteField load_vector(const FeSpace& space, const SourceFunction& f,
                          double t) {
    const QuadRule& rule = load_rule();
    DiscreteField out(space.num_dofs(), 0.0);
    int nn = space.nodes_per_element();
    for (int e = 0; e < space.mesh.num_elements(); ++e) {
        auto nodes = space.element_nodes(e);
        const auto& el = space.mesh.elements[e];
        double xl = space.mesh.vertices[el[0]];
        double h = space.mesh.vertices[el[1]] - xl;
        for (size_t q = 0; q < rule.t.size(); ++q) {
            double fx = f(xl + rule.t[q] * h, t) * rule.w[q] * h;
            for (int i = 0; i < nn; ++i) {
                int a = space.active_index[nodes[i]];
                if (a >= 0) out[a] += fx * shape(space.degree, i, rule.t[q]);
            }
        }
    }
    for (int i = 0; i < space.num_dofs(); ++i) out[i] /= space.lumped_mass[i];
    return out;
}

DiscreteField interpolate(const FeSpace& space, const SpaceFunction& g) {
    DiscreteField out(space.num_dofs());
    for (int i = 0; i < space.num_dofs(); ++i)
        out[i] = g(space.node_x[space.node_of_active[i]]);
    return out;
}

DiscreteField map_fine(const FeSpace& space, const DiscreteField& u) {
    DiscreteField out(u.size());
    for (size_t i = 0; i < u.size(); ++i) out[i] = space.eta[i] * u[i];
    return out;
}

DiscreteField map_coarse(const FeSpace& space, const DiscreteField& u) {
    DiscreteField out(u.size());
    for (size_t i = 0; i < u.size(); ++i) out[i] = u[i] - space.eta[i] * u[i];
    return out;
}

double mass_inner(const FeSpace& space, const DiscreteField& u,
                  const DiscreteField& v) {
    double acc = 0.0;
    for (int i = 0; i < space.num_dofs(); ++i)
        acc += space.lumped_mass[i] * u[i] * v[i];
    return acc;
}

double mass_norm(const FeSpace& space, const DiscreteField& u) {
    return std::sqrt(mass_inner(space, u, u));
}

namespace {

// Value and derivative of the FE function at local coordinate t of element e.
void eval_local(const FeSpace& space, const DiscreteField& u, int e, double t,
                double h, double* value, double* deriv) {
    auto nodes = space.element_nodes(e);
    double val = 0.0, der = 0.0;
    for (int i = 0; i < space.nodes_per_element(); ++i) {
        int a = space.active_index[nodes[i]];
        if (a < 0) continue;
        val += u[a] * shape(space.degree, i, t);
        der += u[a] * shape_dt(space.degree, i, t);
    }
    if (value) *value = val;
    if (deriv) *deriv = der / h;
}

}  // namespace

double eval_field(const FeSpace& space, const DiscreteField& u, double x) {
    int e = locate_element(space.mesh, x);
    const auto& el = space.mesh.elements[e];
    double xl = space.mesh.vertices[el[0]];
    double h = space.mesh.vertices[el[1]] - xl;
    double value = 0.0;
    eval_local(space, u, e, (x - xl) / h, h, &value, nullptr);
    return value;
}

double eval_field_dx(const FeSpace& space, const DiscreteField& u, double x) {
    int e = locate_element(space.mesh, x);
    const auto& el = space.mesh.elements[e];
    double xl = space.mesh.vertices[el[0]];
    double h = space.mesh.vertices[el[1]] - xl;
    double deriv = 0.0;
    eval_local(space, u, e, (x - xl) / h, h, nullptr, &deriv);
    return deriv;
}

ErrorNorms error_norms(const FeSpace& space, const DiscreteField& u,
                       const SpaceFunction& exact,
                       const SpaceFunction& exact_dx) {
    const QuadRule& rule = error_rule();
    double err2 = 0.0, derr2 = 0.0, ex2 = 0.0, dex2 = 0.0;
    for (int e = 0; e < space.mesh.num_elements(); ++e) {
        const auto& el = space.mesh.elements[e];
        double xl = space.mesh.vertices[el[0]];
        double h = space.mesh.vertices[el[1]] - xl;
        double sub = h / error_subdivisions;
        for (int s = 0; s < error_subdivisions; ++s) {
            for (size_t q = 0; q < rule.t.size(); ++q) {
                double t = (s + rule.t[q]) / error_subdivisions;
                double x = xl + t * h;
                double val, der;
                eval_local(space, u, e, t, h, &val, &der);
                double wq = rule.w[q] * sub;
                double ev = exact(x), ed = exact_dx(x);
                err2 += wq * (val - ev) * (val - ev);
                derr2 += wq * (der - ed) * (der - ed);
                ex2 += wq * ev * ev;
                dex2 += wq * ed * ed;
            }
        }
    }
    ErrorNorms norms;
    norms.l2 = std::sqrt(err2);
    norms.h1 = std::sqrt(err2 + derr2);
    double l2_exact = std::sqrt(ex2);
    double h1_exact = std::sqrt(ex2 + dex2);
    norms.l2_rel = l2_exact < 1e-14 ? norms.l2 : norms.l2 / l2_exact;
    norms.h1_rel = h1_exact < 1e-14 ? norms.h1 : norms.h1 / h1_exact;
    return norms;
}

}  // namespace ltswave
