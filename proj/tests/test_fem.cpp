#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ltswave/fem.hpp"

using namespace ltswave;

namespace {

Mesh1D uniform_mesh(double a, double b, double h) {
    RegionSpec spec;
    spec.a = a;
    spec.b = b;
    spec.h_coarse = h;
    return build_locally_refined(spec);
}

Mesh1D refined_mesh() {
    RegionSpec spec;
    spec.a = 0.0;
    spec.b = 4.0;
    spec.fine_interval = {{1.6, 2.4}};
    spec.h_coarse = 0.1;
    spec.refinement_ratio = 2;
    return build_locally_refined(spec);
}

std::vector<std::vector<double>> dense_stiffness(const FeSpace& space) {
    int n = space.num_dofs();
    std::vector<std::vector<double>> k(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int idx = space.k_row_ptr[i]; idx < space.k_row_ptr[i + 1]; ++idx)
            k[i][space.k_col[idx]] = space.k_val[idx];
    return k;
}

DiscreteField random_field(const FeSpace& space, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DiscreteField u(space.num_dofs());
    for (double& v : u) v = dist(rng);
    return u;
}

double rayleigh_max(const FeSpace& space) {
    DiscreteField v = random_field(space, 7u);
    DiscreteField av(space.num_dofs());
    for (int it = 0; it < 400; ++it) {
        apply_a(space, v, av);
        double norm = mass_norm(space, av);
        REQUIRE(norm > 0.0);
        for (int i = 0; i < space.num_dofs(); ++i) v[i] = av[i] / norm;
    }
    apply_a(space, v, av);
    return mass_inner(space, v, av) / mass_inner(space, v, v);
}

}  // namespace

TEST_CASE("lumped mass integrates the constant function") {
    for (int degree : {1, 2}) {
        FeSpace space =
            assemble(refined_mesh(), degree, BoundaryKind::neumann, 1.0);
        double total = 0.0;
        for (double d : space.lumped_mass) {
            CHECK(d > 0.0);
            total += d;
        }
        CHECK(total == doctest::Approx(4.0).epsilon(1e-13));
    }

    // P1 weights on a uniform mesh: h inside, h/2 at the free ends.
    FeSpace p1 = assemble(uniform_mesh(0.0, 1.0, 0.1), 1,
                          BoundaryKind::neumann, 1.0);
    CHECK(p1.lumped_mass.front() == doctest::Approx(0.05));
    CHECK(p1.lumped_mass.back() == doctest::Approx(0.05));
    CHECK(p1.lumped_mass[3] == doctest::Approx(0.1));

    // P2 weights: h/6 end vertices, h/3 shared vertices, 2h/3 midpoints.
    FeSpace p2 = assemble(uniform_mesh(0.0, 1.0, 0.1), 2,
                          BoundaryKind::neumann, 1.0);
    CHECK(p2.lumped_mass[p2.active_index[0]] == doctest::Approx(0.1 / 6.0));
    CHECK(p2.lumped_mass[p2.active_index[4]] == doctest::Approx(0.1 / 3.0));
    int mid_node = p2.mesh.num_vertices() + 2;
    CHECK(p2.lumped_mass[p2.active_index[mid_node]] ==
          doctest::Approx(0.2 / 3.0));
}

TEST_CASE("single element stiffness matrices match the frozen values") {
    Mesh1D cell = uniform_mesh(0.0, 1.0, 1.0);
    REQUIRE(cell.num_elements() == 1);

    FeSpace p1 = assemble(cell, 1, BoundaryKind::neumann, 1.0);
    auto k1 = dense_stiffness(p1);
    CHECK(k1[0][0] == doctest::Approx(1.0));
    CHECK(k1[0][1] == doctest::Approx(-1.0));
    CHECK(k1[1][0] == doctest::Approx(-1.0));
    CHECK(k1[1][1] == doctest::Approx(1.0));

    FeSpace p2 = assemble(cell, 2, BoundaryKind::neumann, 1.0);
    REQUIRE(p2.num_dofs() == 3);
    auto k2 = dense_stiffness(p2);
    int v0 = p2.active_index[0], v1 = p2.active_index[1],
        mid = p2.active_index[2];
    CHECK(k2[v0][v0] == doctest::Approx(7.0 / 3.0));
    CHECK(k2[v1][v1] == doctest::Approx(7.0 / 3.0));
    CHECK(k2[mid][mid] == doctest::Approx(16.0 / 3.0));
    CHECK(k2[v0][v1] == doctest::Approx(1.0 / 3.0));
    CHECK(k2[v0][mid] == doctest::Approx(-8.0 / 3.0));
    CHECK(k2[v1][mid] == doctest::Approx(-8.0 / 3.0));
    CHECK(k2[mid][v0] == doctest::Approx(-8.0 / 3.0));

    // The wave speed scales the whole matrix.
    FeSpace scaled = assemble(cell, 2, BoundaryKind::neumann, 2.25);
    auto ks = dense_stiffness(scaled);
    CHECK(ks[mid][mid] == doctest::Approx(2.25 * 16.0 / 3.0));
}

TEST_CASE("element node ordering is left midpoint right") {
    Mesh1D mesh = uniform_mesh(0.0, 1.0, 0.25);
    FeSpace p1 = assemble(mesh, 1, BoundaryKind::neumann, 1.0);
    CHECK(p1.element_nodes(2) == std::array<int, 3>{2, 3, -1});
    FeSpace p2 = assemble(mesh, 2, BoundaryKind::neumann, 1.0);
    int nv = mesh.num_vertices();
    CHECK(p2.element_nodes(2) == std::array<int, 3>{2, nv + 2, 3});
    CHECK(p2.node_x[nv + 2] == doctest::Approx(0.625));
}

TEST_CASE("stiffness is symmetric and positive semidefinite in the lumped product") {
    Mesh1D mesh = refined_mesh();
    std::vector<double> c2(mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e)
        c2[e] = 1.0 + 0.5 * std::sin(0.7 * e);

    for (int degree : {1, 2}) {
        for (BoundaryKind bc : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
            FeSpace space = assemble(mesh, degree, bc, c2, 3);
            DiscreteField u = random_field(space, 11u);
            DiscreteField v = random_field(space, 12u);
            double lhs = mass_inner(space, apply_a(space, u), v);
            double rhs = mass_inner(space, u, apply_a(space, v));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            double quad = mass_inner(space, apply_a(space, u), u);
            CHECK(quad >= -1e-12 * (1.0 + std::abs(quad)));
        }
    }
}

TEST_CASE("operator annihilates constants and reproduces curvature") {
    FeSpace space =
        assemble(uniform_mesh(0.0, 2.0, 0.1), 2, BoundaryKind::neumann, 2.25);

    DiscreteField ones(space.num_dofs(), 1.0);
    for (double v : apply_a(space, ones)) CHECK(std::abs(v) < 1e-10);

    // A applied to the quadratic x^2 returns -2 c^2 away from the boundary.
    DiscreteField quad = interpolate(space, [](double x) { return x * x; });
    DiscreteField aq = apply_a(space, quad);
    for (int i = 0; i < space.num_dofs(); ++i) {
        double x = space.node_x[space.node_of_active[i]];
        if (x < 0.05 || x > 1.95) continue;
        CHECK(aq[i] == doctest::Approx(-2.0 * 2.25).epsilon(1e-9));
    }

    // P1 version with a linear function.
    FeSpace lin =
        assemble(uniform_mesh(0.0, 2.0, 0.1), 1, BoundaryKind::neumann, 1.0);
    DiscreteField lf =
        interpolate(lin, [](double x) { return 3.0 * x - 1.0; });
    DiscreteField al = apply_a(lin, lf);
    for (int i = 0; i < lin.num_dofs(); ++i) {
        double x = lin.node_x[lin.node_of_active[i]];
        if (x < 0.05 || x > 1.95) continue;
        CHECK(std::abs(al[i]) < 1e-9);
    }
}

TEST_CASE("load vector is the dof-weighted moment of the source") {
    for (int degree : {1, 2}) {
        FeSpace space =
            assemble(refined_mesh(), degree, BoundaryKind::neumann, 1.0);

        // Constant sources load every dof with exactly that constant.
        DiscreteField constant = load_vector(
            space, [](double, double) { return 2.5; }, 0.3);
        for (double v : constant) CHECK(v == doctest::Approx(2.5).epsilon(1e-13));

        // Partition of unity: sum d_z load_z equals the integral of f.
        DiscreteField cubic = load_vector(
            space, [](double x, double) { return x * x * x; }, 0.0);
        double total = 0.0;
        for (int i = 0; i < space.num_dofs(); ++i)
            total += space.lumped_mass[i] * cubic[i];
        CHECK(total == doctest::Approx(std::pow(4.0, 4) / 4.0).epsilon(1e-12));

        // The time argument is forwarded.
        DiscreteField timed = load_vector(
            space, [](double, double t) { return t; }, 1.75);
        for (double v : timed) CHECK(v == doctest::Approx(1.75).epsilon(1e-13));
    }
}

TEST_CASE("interpolation and point evaluation reproduce polynomials") {
    FeSpace p2 =
        assemble(uniform_mesh(0.0, 1.0, 0.125), 2, BoundaryKind::neumann, 1.0);
    auto q = [](double x) { return 1.0 + 0.5 * x - 2.0 * x * x; };
    auto dq = [](double x) { return 0.5 - 4.0 * x; };
    DiscreteField u = interpolate(p2, q);
    for (double x : {0.0, 0.03, 0.31, 0.5, 0.77, 1.0}) {
        CHECK(eval_field(p2, u, x) == doctest::Approx(q(x)).epsilon(1e-13));
        CHECK(eval_field_dx(p2, u, x) == doctest::Approx(dq(x)).epsilon(1e-11));
    }

    FeSpace p1 =
        assemble(uniform_mesh(0.0, 1.0, 0.125), 1, BoundaryKind::neumann, 1.0);
    auto lin = [](double x) { return 2.0 - 3.0 * x; };
    DiscreteField v = interpolate(p1, lin);
    for (double x : {0.0, 0.1, 0.625, 0.99}) {
        CHECK(eval_field(p1, v, x) == doctest::Approx(lin(x)).epsilon(1e-13));
        CHECK(eval_field_dx(p1, v, x) == doctest::Approx(-3.0).epsilon(1e-11));
    }

    // Nodal values round-trip exactly.
    for (int i = 0; i < p2.num_dofs(); ++i)
        CHECK(u[i] == q(p2.node_x[p2.node_of_active[i]]));
}

TEST_CASE("transition maps decompose fields and are complementary projections") {
    Mesh1D mesh = refined_mesh();

    FeSpace smooth = assemble(mesh, 2, BoundaryKind::dirichlet, 1.0, 3);
    DiscreteField u = random_field(smooth, 42u);
    DiscreteField fine = map_fine(smooth, u);
    DiscreteField coarse = map_coarse(smooth, u);
    for (int i = 0; i < smooth.num_dofs(); ++i) {
        // Fractional weights recombine only up to one rounding each way.
        CHECK(fine[i] + coarse[i] ==
              doctest::Approx(u[i]).epsilon(4e-16));
        CHECK(std::abs(fine[i]) <= std::abs(u[i]) + 1e-300);
    }

    FeSpace abrupt = assemble(mesh, 1, BoundaryKind::dirichlet, 1.0, 1);
    DiscreteField w = random_field(abrupt, 43u);
    DiscreteField wf = map_fine(abrupt, w);
    for (int i = 0; i < abrupt.num_dofs(); ++i) {
        bool kept = wf[i] == w[i];
        bool zeroed = wf[i] == 0.0;
        CHECK((kept || zeroed));
    }
    CHECK(map_fine(abrupt, wf) == wf);
    for (double v : map_coarse(abrupt, wf)) CHECK(v == 0.0);
}

TEST_CASE("lumped product is an inner product") {
    FeSpace space = assemble(refined_mesh(), 2, BoundaryKind::dirichlet, 1.0);
    DiscreteField u = random_field(space, 5u);
    DiscreteField v = random_field(space, 6u);
    CHECK(mass_inner(space, u, v) == doctest::Approx(mass_inner(space, v, u)));
    double n = mass_norm(space, u);
    CHECK(n > 0.0);
    CHECK(n * n == doctest::Approx(mass_inner(space, u, u)).epsilon(1e-13));
    DiscreteField zero(space.num_dofs(), 0.0);
    CHECK(mass_norm(space, zero) == 0.0);
}

TEST_CASE("error norms vanish on represented functions and match quadrature") {
    FeSpace p2 =
        assemble(uniform_mesh(0.0, 1.0, 0.1), 2, BoundaryKind::neumann, 1.0);
    auto q = [](double x) { return x * x - 0.3 * x + 2.0; };
    auto dq = [](double x) { return 2.0 * x - 0.3; };
    ErrorNorms zero = error_norms(p2, interpolate(p2, q), q, dq);
    CHECK(zero.l2 < 1e-12);
    CHECK(zero.h1 < 1e-11);

    // Against a dense composite-Simpson oracle for a non-polynomial field.
    FeSpace p1 =
        assemble(uniform_mesh(0.0, 1.0, 0.05), 1, BoundaryKind::dirichlet, 1.0);
    auto g = [](double x) { return std::sin(M_PI * x); };
    auto dg = [](double x) { return M_PI * std::cos(M_PI * x); };
    DiscreteField u = interpolate(p1, g);
    ErrorNorms err = error_norms(p1, u, g, dg);

    double l2sq = 0.0, h1sq = 0.0, exact_l2sq = 0.0, exact_h1sq = 0.0;
    const int sub = 400;
    for (int e = 0; e < p1.mesh.num_elements(); ++e) {
        double xl = p1.mesh.vertices[e], xr = p1.mesh.vertices[e + 1];
        double dx = (xr - xl) / sub;
        for (int j = 0; j < sub; ++j) {
            double x = xl + (j + 0.5) * dx;
            double dv = eval_field(p1, u, x) - g(x);
            double dd = eval_field_dx(p1, u, x) - dg(x);
            l2sq += dv * dv * dx;
            h1sq += (dv * dv + dd * dd) * dx;
            exact_l2sq += g(x) * g(x) * dx;
            exact_h1sq += (g(x) * g(x) + dg(x) * dg(x)) * dx;
        }
    }
    CHECK(err.l2 == doctest::Approx(std::sqrt(l2sq)).epsilon(1e-5));
    CHECK(err.h1 == doctest::Approx(std::sqrt(h1sq)).epsilon(1e-5));
    CHECK(err.l2_rel ==
          doctest::Approx(std::sqrt(l2sq / exact_l2sq)).epsilon(1e-4));
    CHECK(err.h1_rel ==
          doctest::Approx(std::sqrt(h1sq / exact_h1sq)).epsilon(1e-4));

    // When the exact solution vanishes the relative error falls back to the
    // absolute one.
    auto zf = [](double) { return 0.0; };
    ErrorNorms abs_err = error_norms(p1, u, zf, zf);
    CHECK(abs_err.l2_rel == abs_err.l2);
    CHECK(abs_err.h1_rel == abs_err.h1);
}

TEST_CASE("dirichlet spaces eliminate the end vertices") {
    Mesh1D mesh = uniform_mesh(0.0, 1.0, 0.1);

    FeSpace p1 = assemble(mesh, 1, BoundaryKind::dirichlet, 1.0);
    CHECK(p1.num_dofs() == mesh.num_vertices() - 2);
    CHECK(p1.active_index[0] == -1);
    CHECK(p1.active_index[mesh.num_vertices() - 1] == -1);

    FeSpace p2 = assemble(mesh, 2, BoundaryKind::dirichlet, 1.0);
    CHECK(p2.num_dofs() == mesh.num_vertices() - 2 + mesh.num_elements());

    DiscreteField u = interpolate(p2, [](double x) { return std::cos(x); });
    CHECK(eval_field(p2, u, 0.0) == 0.0);
    CHECK(eval_field(p2, u, 1.0) == 0.0);
    CHECK(eval_field(p2, u, 0.5) == doctest::Approx(std::cos(0.5)));

    FeSpace neumann = assemble(mesh, 2, BoundaryKind::neumann, 1.0);
    CHECK(neumann.num_dofs() == mesh.num_vertices() + mesh.num_elements());
}

TEST_CASE("assembly validates its arguments") {
    Mesh1D mesh = uniform_mesh(0.0, 1.0, 0.1);
    CHECK_THROWS_AS(assemble(mesh, 3, BoundaryKind::dirichlet, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble(mesh, 0, BoundaryKind::dirichlet, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble(mesh, 1, BoundaryKind::dirichlet, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble(mesh, 1, BoundaryKind::dirichlet,
                             std::vector<double>(3, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(assemble(mesh, 1, BoundaryKind::dirichlet, 1.0, 0),
                    std::invalid_argument);
}

TEST_CASE("largest operator eigenvalue scales like the inverse square spacing") {
    double l1a = rayleigh_max(
        assemble(uniform_mesh(0.0, 1.0, 0.05), 1, BoundaryKind::dirichlet, 1.0));
    double l1b = rayleigh_max(
        assemble(uniform_mesh(0.0, 1.0, 0.025), 1, BoundaryKind::dirichlet, 1.0));
    CHECK(l1a == doctest::Approx(4.0 / (0.05 * 0.05)).epsilon(0.02));
    CHECK(l1b / l1a == doctest::Approx(4.0).epsilon(0.05));

    double l2a = rayleigh_max(
        assemble(uniform_mesh(0.0, 1.0, 0.05), 2, BoundaryKind::dirichlet, 1.0));
    double l2b = rayleigh_max(
        assemble(uniform_mesh(0.0, 1.0, 0.025), 2, BoundaryKind::dirichlet, 1.0));
    CHECK(l2b / l2a == doctest::Approx(4.0).epsilon(0.05));

    // The P2 operator tops out near 24 / h^2, so leapfrog needs
    // dt <= 2 / sqrt(lambda) ~ 0.408 h: a 0.35 h step clears the bound
    // while 0.5 h violates it.
    double h = 0.05;
    double dt_limit = 2.0 / std::sqrt(l2a);
    CHECK(l2a * h * h == doctest::Approx(24.0).epsilon(0.01));
    CHECK(0.35 * h < dt_limit);
    CHECK(0.5 * h > dt_limit);
}
