#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "gme/entanglement.hpp"
#include "gme/sampling.hpp"
#include "gme/transforms.hpp"
#include "oracles.hpp"

using namespace gme;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

U2Chart random_chart(std::mt19937_64& g) {
    return {gme::detail::uniform(g, 0.0, pi / 2), gme::detail::uniform(g, 0.0, 2 * pi),
            gme::detail::uniform(g, 0.0, 2 * pi), gme::detail::uniform(g, 0.0, 2 * pi)};
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("u2_matrix reproduces the frozen charts") {
    const Mat2c diag = u2_matrix({pi / 2, 0, 0, 0});
    REQUIRE_THAT(std::abs(diag(0, 0) - 1.0), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(diag(1, 1) + 1.0), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(diag(0, 1)), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(diag(1, 0)), WithinAbs(0.0, 1e-15));

    const Mat2c swap = u2_matrix({0, 0, 0, 0});
    REQUIRE_THAT(std::abs(swap(0, 1) - 1.0), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(swap(1, 0) - 1.0), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(swap(0, 0)), WithinAbs(0.0, 1e-15));

    const Mat2c had = u2_matrix({pi / 4, 0, 0, 0});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    REQUIRE_THAT(std::abs(had(0, 0) - inv_sqrt2), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(had(0, 1) - inv_sqrt2), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(had(1, 0) - inv_sqrt2), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(had(1, 1) + inv_sqrt2), WithinAbs(0.0, 1e-15));
}

TEST_CASE("u2_matrix is unitary across the chart") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 200; ++i) {
        const Mat2c u = u2_matrix(random_chart(g));
        REQUIRE((u * u.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("passive_symplectic identity and swap charts") {
    // U = I requires phi' + phi'' = pi with theta = pi/2, phi = 0
    const SymplecticMatrix id = passive_symplectic({pi / 2, 0, pi, 0});
    REQUIRE(max_abs(id.entries - Mat4::Identity()) < 1e-15);

    const SymplecticMatrix swap = passive_symplectic({0, 0, 0, 0});
    Mat4 expected = Mat4::Zero();
    expected(0, 2) = expected(1, 3) = expected(2, 0) = expected(3, 1) = 1.0;
    REQUIRE(max_abs(swap.entries - expected) < 1e-15);
    REQUIRE(swap.kind == SymplecticKind::passive);
}

TEST_CASE("passive_symplectic outputs are symplectic and orthogonal") {
    std::mt19937_64 g(17);
    const Mat4& sigma = symplectic_form();
    for (int i = 0; i < 1000; ++i) {
        const Mat4 s = passive_symplectic(random_chart(g)).entries;
        REQUIRE(max_abs(s * sigma * s.transpose() - sigma) < 1e-10);
        REQUIRE(max_abs(s * s.transpose() - Mat4::Identity()) < 1e-10);
    }
}

TEST_CASE("passive composition matches the product unitary") {
    std::mt19937_64 g(23);
    for (int i = 0; i < 100; ++i) {
        const U2Chart c1 = random_chart(g);
        const U2Chart c2 = random_chart(g);
        const Mat2c u = u2_matrix(c1) * u2_matrix(c2);
        // build S directly from the product unitary via the same grouped form
        Mat4 grouped;
        grouped << u.real(), -u.imag(), u.imag(), u.real();
        const Mat4& p = gme::detail::grouping_permutation();
        const Mat4 s_product = p.transpose() * grouped * p;
        const Mat4 s_composed = (passive_symplectic(c1) * passive_symplectic(c2)).entries;
        REQUIRE(max_abs(s_product - s_composed) < 1e-12);
    }
}

TEST_CASE("apply matches direct conjugation and preserves the trace for passive maps") {
    const CovarianceMatrix vs = standard_form_matrix({1.1, 0.8, 0.3, -0.2});

    const SymplecticMatrix id = passive_symplectic({pi / 2, 0, pi, 0});
    REQUIRE(max_abs(apply(id, vs).matrix() - vs.matrix()) < 1e-14);

    const SymplecticMatrix swap = passive_symplectic({0, 0, 0, 0});
    const CovarianceMatrix swapped = apply(swap, vs);
    REQUIRE(max_abs(swapped.matrix() - standard_form_matrix({0.8, 1.1, 0.3, -0.2}).matrix()) < 1e-14);

    const CovarianceMatrix thermal(0.9 * Mat4::Identity());
    std::mt19937_64 g(31);
    for (int i = 0; i < 100; ++i) {
        const SymplecticMatrix s = passive_symplectic(random_chart(g));
        REQUIRE(max_abs(apply(s, thermal).matrix() - thermal.matrix()) < 1e-12);

        const CovarianceMatrix v = oracle::random_physical_states(1, 1000 + i)[0];
        const double t0 = v.matrix().trace();
        REQUIRE_THAT(apply(s, v).matrix().trace(), WithinAbs(t0, 1e-10 * std::abs(t0)));
    }
}

TEST_CASE("local_squeeze matches its diagonal action") {
    REQUIRE(max_abs(local_squeeze({1.0, 1.0}).entries - Mat4::Identity()) == 0.0);

    const CovarianceMatrix vac(0.5 * Mat4::Identity());
    const CovarianceMatrix squeezed = apply(local_squeeze({4.0, 4.0}), vac);
    Mat4 expected = Mat4::Zero();
    expected(0, 0) = expected(2, 2) = 2.0;
    expected(1, 1) = expected(3, 3) = 1.0 / 8.0;
    REQUIRE(max_abs(squeezed.matrix() - expected) < 1e-15);

    std::mt19937_64 g(37);
    const Mat4& sigma = symplectic_form();
    for (int i = 0; i < 50; ++i) {
        const double ea = std::exp(gme::detail::uniform(g, -1.0, 1.0));
        const double eb = std::exp(gme::detail::uniform(g, -1.0, 1.0));
        const Mat4 s = local_squeeze({ea, eb}).entries;
        const double det_a = s.topLeftCorner(2, 2).determinant();
        const double det_b = s.bottomRightCorner(2, 2).determinant();
        REQUIRE_THAT(det_a, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(det_b, WithinAbs(1.0, 1e-12));
        REQUIRE(max_abs(s * sigma * s.transpose() - sigma) < 1e-12);
    }

    REQUIRE_THROWS_AS(local_squeeze({0.0, 1.0}), NonPositiveSqueeze);
    REQUIRE_THROWS_AS(local_squeeze({1.0, -2.0}), NonPositiveSqueeze);
}

TEST_CASE("local_symplectic Euler form") {
    REQUIRE(max_abs(local_symplectic(0, 1, 0, 0, 1, 0).entries - Mat4::Identity()) < 1e-15);

    // pure rotations leave the vacuum invariant
    const CovarianceMatrix vac(0.5 * Mat4::Identity());
    const SymplecticMatrix rot = local_symplectic(0.7, 1.0, 0.0, -1.2, 1.0, 0.0);
    REQUIRE(max_abs(rot.entries * rot.entries.transpose() - Mat4::Identity()) < 1e-14);
    REQUIRE(max_abs(apply(rot, vac).matrix() - vac.matrix()) < 1e-14);

    std::mt19937_64 g(41);
    for (int i = 0; i < 100; ++i) {
        const SymplecticMatrix s = local_symplectic(
            gme::detail::uniform(g, 0, 2 * pi), std::exp(gme::detail::uniform(g, -1, 1)),
            gme::detail::uniform(g, 0, 2 * pi), gme::detail::uniform(g, 0, 2 * pi),
            std::exp(gme::detail::uniform(g, -1, 1)), gme::detail::uniform(g, 0, 2 * pi));
        REQUIRE(s.kind == SymplecticKind::local);
        REQUIRE(max_abs(s.entries.topRightCorner(2, 2)) == 0.0);
        REQUIRE(max_abs(s.entries.bottomLeftCorner(2, 2)) == 0.0);
        const double det_a = s.entries.topLeftCorner(2, 2).determinant();
        const double det_b = s.entries.bottomRightCorner(2, 2).determinant();
        REQUIRE_THAT(det_a, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(det_b, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("standard_form of a standard-form input is the identity reduction") {
    const StandardFormParams in{1.2, 0.9, 0.4, -0.2};
    const auto [params, l] = standard_form(standard_form_matrix(in));
    REQUIRE_THAT(params.a, WithinAbs(in.a, 1e-12));
    REQUIRE_THAT(params.b, WithinAbs(in.b, 1e-12));
    REQUIRE_THAT(params.c_plus, WithinAbs(in.c_plus, 1e-12));
    REQUIRE_THAT(params.c_minus, WithinAbs(in.c_minus, 1e-12));
    REQUIRE(max_abs(apply(l, standard_form_matrix(in)).matrix() - standard_form_matrix(in).matrix()) <
            1e-12);
}

TEST_CASE("standard_form undoes a local squeeze of a TMS state") {
    const double r = 0.5;
    const CovarianceMatrix vs = pure_tms(r);
    const CovarianceMatrix distorted = apply(local_squeeze({2.0, 1.0}), vs);
    const auto [params, l] = standard_form(distorted);
    REQUIRE_THAT(params.a, WithinAbs(std::cosh(1.0) / 2, 1e-10));
    REQUIRE_THAT(params.b, WithinAbs(std::cosh(1.0) / 2, 1e-10));
    REQUIRE_THAT(params.c_plus, WithinAbs(std::sinh(1.0) / 2, 1e-10));
    REQUIRE_THAT(params.c_minus, WithinAbs(-std::sinh(1.0) / 2, 1e-10));

    const Mat4 reduced = apply(l, distorted).matrix();
    REQUIRE(max_abs(reduced - standard_form_matrix(params).matrix()) < 1e-10);
}

TEST_CASE("standard_form reduction preserves the local invariants") {
    for (const auto& v : oracle::random_physical_states(300)) {
        const auto [params, l] = standard_form(v);
        const CovarianceMatrix reduced = apply(l, v);
        const auto b0 = block_decompose(v);
        const auto b1 = block_decompose(reduced);

        REQUIRE(l.kind == SymplecticKind::local);
        REQUIRE_THAT(b1.A.determinant(), WithinAbs(b0.A.determinant(), 1e-9));
        REQUIRE_THAT(b1.B.determinant(), WithinAbs(b0.B.determinant(), 1e-9));
        REQUIRE_THAT(b1.C.determinant(), WithinAbs(b0.C.determinant(), 1e-9));
        REQUIRE_THAT(reduced.matrix().determinant(), WithinAbs(v.matrix().determinant(), 1e-9));

        // reduced matrix has the standard shape and conventions
        REQUIRE(max_abs(reduced.matrix() - standard_form_matrix(params).matrix()) < 1e-9);
        REQUIRE(params.c_plus >= 0.0);
        REQUIRE(std::abs(params.c_plus) >= std::abs(params.c_minus) - 1e-12);
        const double det_c = b0.C.determinant();
        if (std::abs(det_c) > 1e-12) {
            REQUIRE(params.c_plus * params.c_minus * det_c > 0.0);
        }

        // entanglement unchanged by the local reduction
        REQUIRE_THAT(log_negativity(reduced).log_negativity,
                     WithinAbs(log_negativity(v).log_negativity, 1e-9));
    }
}

TEST_CASE("standard_form rejects non-physical input") {
    REQUIRE_THROWS_AS(standard_form(standard_form_matrix({1.0, 1.0, 0.95, -0.95})), NotPhysical);
}

TEST_CASE("pure standard-form states satisfy c = sqrt(a^2 - 1/4)") {
    for (double r : {0.1, 0.5, 1.0, 1.7}) {
        const auto [params, l] = standard_form(pure_tms(r));
        REQUIRE_THAT(params.c_plus, WithinAbs(std::sqrt(params.a * params.a - 0.25), 1e-10));
        REQUIRE_THAT(params.c_minus, WithinAbs(-params.c_plus, 1e-10));
    }
}
