#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ltswave/mesh.hpp"

namespace ltswave {

enum class BoundaryKind { dirichlet, neumann };

// Coefficient vector over the active dofs of one FeSpace.
using DiscreteField = std::vector<double>;

using SpaceFunction = std::function<double(double)>;
using SourceFunction = std::function<double(double, double)>;

// Mass-lumped P1/P2 space on a Mesh1D.  Nodes are the mesh vertices followed,
// for P2, by one midpoint node per element.  Dirichlet boundaries eliminate
// the two end-vertex nodes from the active set; fields store active dofs only.
struct FeSpace {
    Mesh1D mesh;
    int degree = 1;
    BoundaryKind boundary = BoundaryKind::dirichlet;
    std::vector<double> c2;  // squared wave speed per element
    int transition_layers = 1;

    std::vector<double> node_x;       // coordinate of every node
    std::vector<int> active_index;    // per node, -1 when eliminated
    std::vector<int> node_of_active;  // inverse of active_index
    std::vector<double> lumped_mass;  // d_z per active dof
    std::vector<double> eta;          // transition weight per active dof

    // Stiffness K over active dofs, CSR.
    std::vector<int> k_row_ptr;
    std::vector<int> k_col;
    std::vector<double> k_val;

    int num_dofs() const { return int(node_of_active.size()); }
    int nodes_per_element() const { return degree + 1; }
    // Global node ids of element e, left to right ([2] unused for P1).
    std::array<int, 3> element_nodes(int e) const;
};

FeSpace assemble(const Mesh1D& mesh, int degree, BoundaryKind bc,
                 const std::vector<double>& c2, int transition_layers = 1);
FeSpace assemble(const Mesh1D& mesh, int degree, BoundaryKind bc,
                 double c2 = 1.0, int transition_layers = 1);

// out = M_lumped^{-1} K u.
void apply_a(const FeSpace& space, const DiscreteField& u, DiscreteField& out);
DiscreteField apply_a(const FeSpace& space, const DiscreteField& u);

// Dof-weighted source: value (1/d_z) \int f(.,t) b_z dx per active dof.
DiscreteField load_vector(const FeSpace& space, const SourceFunction& f,
                          double t);

// Nodal interpolation of g at active dofs.
DiscreteField interpolate(const FeSpace& space, const SpaceFunction& g);

// Pointwise multiplication by the transition weight (and its complement).
// map_fine(u) + map_coarse(u) recovers u up to roundoff; with weights in
// {0,1} both are exact complementary projections.
DiscreteField map_fine(const FeSpace& space, const DiscreteField& u);
DiscreteField map_coarse(const FeSpace& space, const DiscreteField& u);

// Lumped scalar product (u, v)_T = sum d_z u(z) v(z) and its norm.
double mass_inner(const FeSpace& space, const DiscreteField& u,
                  const DiscreteField& v);
double mass_norm(const FeSpace& space, const DiscreteField& u);

// Point evaluation of the FE function (and derivative); eliminated boundary
// nodes contribute zero.
double eval_field(const FeSpace& space, const DiscreteField& u, double x);
double eval_field_dx(const FeSpace& space, const DiscreteField& u, double x);

struct ErrorNorms {
    double l2 = 0.0;      // absolute L2 error
    double h1 = 0.0;      // absolute full H1 error
    double l2_rel = 0.0;  // relative (absolute when the exact norm vanishes)
    double h1_rel = 0.0;
};

// Per-element Gauss quadrature of (u_h - exact)^2 and (u_h' - exactDx)^2;
// relative errors divide by the same norms of exact unless those are < 1e-14.
ErrorNorms error_norms(const FeSpace& space, const DiscreteField& u,
                       const SpaceFunction& exact,
                       const SpaceFunction& exact_dx);

}  // namespace ltswave
