#include "eplab/projectors.hpp"

#include "eplab/generators.hpp"
#include "eplab/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace eplab;

TEST_CASE("range_projector: zero matrix and rank-one case") {
    const SubspaceProjector zero = range_projector(Matrix::Zero(3, 3));
    CHECK(zero.subspace_dim == 0);
    CHECK(zero.matrix.norm() == 0.0);

    // (e1 (x) e2) has range C e1
    const Matrix t = rank_one(Vector::Unit(3, 0), Vector::Unit(3, 1));
    const SubspaceProjector p = range_projector(t);
    CHECK(p.subspace_dim == 1);
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK((p.matrix - expected).norm() <= 1e-14);
}

TEST_CASE("range_projector: trace matches an elimination-rank oracle") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Matrix t = random_general(6, 3, seed, 100.0);
        const SubspaceProjector p = range_projector(t);
        CHECK(p.subspace_dim == oracles::elimination_rank(t));
        CHECK(std::abs(p.matrix.trace().real() - 3.0) <= 1e-8);
        CHECK(std::abs(p.matrix.trace().imag()) <= 1e-12);
    }
}

TEST_CASE("range_projector: Hermitian, idempotent, equals T pinv(T)") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 5);
        const int rank = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(dim));
        const Matrix t = random_general(dim, rank, seed, 1e3);
        const Matrix p = range_projector(t).matrix;
        CHECK((p - p.adjoint()).norm() <= 1e-12 * std::max(1.0, p.norm()));
        CHECK((p * p - p).norm() <= 1e-12 * std::max(1.0, p.norm()));
        CHECK((p - t * pinv_matrix(t)).norm() <= 1e-8);
    }
}

TEST_CASE("kernel_projector: invertible and rank-one cases") {
    const SubspaceProjector none = kernel_projector(involution_2x2());
    CHECK(none.subspace_dim == 0);
    CHECK(none.matrix.norm() <= 1e-12);

    // T = e1 (x) e2 in C^2 kills exactly C e1
    const Matrix t = rank_one(Vector::Unit(2, 0), Vector::Unit(2, 1));
    const SubspaceProjector p = kernel_projector(t);
    CHECK(p.subspace_dim == 1);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    CHECK((p.matrix - expected).norm() <= 1e-14);
}

TEST_CASE("kernel_projector: complements the row-space projector") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int dim = 3 + static_cast<int>(seed % 4);
        const Matrix t = random_general(dim, dim - 1, seed, 1e3);
        const Matrix sum =
            range_projector(Matrix(t.adjoint())).matrix + kernel_projector(t).matrix;
        CHECK((sum - Matrix::Identity(dim, dim)).norm() <= 1e-8);
    }
}

TEST_CASE("range_included: identical, nilpotent square, and disjoint ranges") {
    const Matrix a = random_general(4, 3, 3, 100.0);
    const InclusionResult same = range_included(a, a);
    CHECK(same.included);
    CHECK(same.residual <= 1e-12);

    const Matrix t = rank_one(Vector::Unit(2, 0), Vector::Unit(2, 1));
    CHECK(range_included(t * t, Matrix(t.adjoint())).included);       // T^2 = 0
    CHECK_FALSE(range_included(t, Matrix(t.adjoint())).included);     // C e1 vs C e2

    CHECK_THROWS_AS(range_included(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), InvalidInput);
}

TEST_CASE("douglas_constant: zero numerator and full-column-rank identity") {
    const Matrix b = random_general(4, 4, 9, 10.0);
    CHECK(douglas_constant(Matrix::Zero(4, 4), b) == doctest::Approx(0.0));
    CHECK(douglas_constant(b, b) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("douglas_constant: infinite marker when ranges are not nested") {
    const Matrix t = rank_one(Vector::Unit(2, 0), Vector::Unit(2, 1));
    CHECK(std::isinf(douglas_constant(t, Matrix(t.adjoint()))));
}

TEST_CASE("douglas_constant: anchored shift constant is 2 and majorizes samples") {
    const Matrix s = anchored_shift(2.0, 9);
    const Matrix a = mat_power(Matrix(s.adjoint()), 2);
    const double c = douglas_constant(a, s);
    CHECK(c == doctest::Approx(2.0).epsilon(1e-10));
    Rng rng(77);
    for (int k = 0; k < 100; ++k) {
        Vector x(9);
        for (int i = 0; i < 9; ++i) x(i) = rng.cgauss();
        CHECK((a * x).norm() <= (c + 1e-8) * (s * x).norm() + 1e-12);
    }
}

TEST_CASE("kernel_invariant: trivial kernels and the identity map") {
    const Matrix inv = involution_2x2();
    const InclusionResult trivial = kernel_invariant(random_normal(2, 4), inv);
    CHECK(trivial.included);
    CHECK(trivial.residual <= 1e-12);

    const Matrix a = random_general(4, 2, 5, 100.0);
    CHECK(kernel_invariant(Matrix::Identity(4, 4), a).included);
}

TEST_CASE("kernel_invariant: agrees with an explicit kernel-basis oracle") {
    Matrix jordan = Matrix::Zero(2, 2);
    jordan(0, 1) = 1.0;
    const Matrix b = jordan.adjoint() * jordan;
    const Matrix a = jordan.adjoint();
    const InclusionResult via_projector = kernel_invariant(b, a);

    bool via_basis = true;
    const Matrix p_perp =
        range_projector(Matrix(a.adjoint())).matrix;  // projector onto N(A)-orthocomplement
    for (const Vector& v : oracles::null_basis(a))
        via_basis = via_basis && (p_perp * (b * v)).norm() <= 1e-8 * std::max(1.0, b.norm());
    CHECK(via_projector.included == via_basis);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int dim = 3 + static_cast<int>(seed % 3);
        const Matrix bb = random_general(dim, dim, seed, 100.0);
        const Matrix aa = random_general(dim, dim - 1, seed + 100, 100.0);
        const InclusionResult proj = kernel_invariant(bb, aa);
        bool basis_ok = true;
        const Matrix perp = range_projector(Matrix(aa.adjoint())).matrix;
        for (const Vector& v : oracles::null_basis(aa))
            basis_ok = basis_ok && (perp * (bb * v)).norm() <= 1e-8 * std::max(1.0, bb.norm());
        CHECK(proj.included == basis_ok);
    }
}
