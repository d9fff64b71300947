#include "eplab/operators.hpp"

#include "eplab/classes.hpp"
#include "eplab/generators.hpp"
#include "eplab/pinv.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace eplab;

TEST_CASE("commutator: identity, involution pinv, antisymmetry") {
    const Matrix b = random_general(4, 4, 3, 100.0);
    CHECK(commutator(Matrix::Identity(4, 4), b).norm() <= 1e-15);

    const Matrix s = involution_2x2();
    CHECK(commutator(pinv_matrix(s), s).norm() <= 1e-14);  // S^dagger = S/4 commutes

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix x = random_general(3, 3, seed, 100.0);
        const Matrix y = random_normal(3, seed + 50);
        CHECK((commutator(x, y) + commutator(y, x)).norm() <= 1e-13);
    }

    CHECK_THROWS_AS(commutator(Matrix::Zero(2, 3), Matrix::Zero(2, 3)), InvalidInput);
    CHECK_THROWS_AS(commutator(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), InvalidInput);
}

TEST_CASE("is_psd: definite, indefinite, Gram and non-Hermitian cases") {
    const PsdResult yes = is_psd(Matrix::Identity(3, 3));
    CHECK(yes.psd);
    CHECK(yes.min_eigenvalue == doctest::Approx(1.0));

    const PsdResult no = is_psd(Matrix(-Matrix::Identity(3, 3)));
    CHECK_FALSE(no.psd);
    CHECK(no.min_eigenvalue == doctest::Approx(-1.0));

    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const Matrix g = random_general(4, 3, seed, 1e3);
        CHECK(is_psd(Matrix(g.adjoint() * g)).psd);
    }

    Matrix skewed = Matrix::Zero(2, 2);
    skewed(0, 1) = 1.0;
    CHECK_FALSE(is_psd(skewed).psd);  // fails the Hermiticity gate
}

TEST_CASE("cauchy_dual: rank-one closed form") {
    Rng rng(12);
    Vector x(4), y(4);
    for (int i = 0; i < 4; ++i) x(i) = rng.cgauss();
    for (int i = 0; i < 4; ++i) y(i) = rng.cgauss();
    const Matrix t = rank_one(x, y);
    const Matrix expected = t / (x.squaredNorm() * y.squaredNorm());
    CHECK((cauchy_dual(t) - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("cauchy_dual: fixed on orthogonal projections") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix p = random_projection(5, 2 + static_cast<int>(seed % 3), seed);
        CHECK((cauchy_dual(p) - p).norm() <= 1e-10);
        CHECK((pinv_matrix(p) - p).norm() <= 1e-10);
    }
}

TEST_CASE("cauchy_dual: weighted shift inverts the weights columnwise") {
    const std::vector<double> weights = {0.5, 2.0, 1.25, 0.8};
    const Matrix s = weighted_shift(weights);
    const Matrix dual = cauchy_dual(s);
    Matrix expected = Matrix::Zero(5, 5);
    for (int k = 0; k + 1 < 5; ++k) expected(k + 1, k) = 1.0 / weights[static_cast<std::size_t>(k)];
    CHECK((dual - expected).norm() <= 1e-12);
}

TEST_CASE("cauchy_dual: agrees with T pinv(T*T) and shares range and kernel") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 4);
        const Matrix t = random_general(dim, std::max(1, dim - static_cast<int>(seed % 2)), seed, 100.0);
        const Matrix dual = cauchy_dual(t);
        CHECK((dual - t * pinv_matrix(Matrix(t.adjoint() * t))).norm() <= 1e-8 * std::max(1.0, dual.norm()));
        CHECK((range_projector(dual).matrix - range_projector(t).matrix).norm() <= 1e-8);
        CHECK((kernel_projector(dual).matrix - kernel_projector(t).matrix).norm() <= 1e-8);
    }
}

TEST_CASE("cauchy_dual: fixed points are exactly the partial isometries") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 4);
        const Matrix t = seed % 2 == 0
                             ? random_partial_isometry(dim, 1 + static_cast<int>(seed % static_cast<std::uint64_t>(dim)), seed)
                             : random_general(dim, dim, seed, 50.0);
        const bool fixed = (cauchy_dual(t) - t).norm() <= 1e-8 * std::max(1.0, t.norm());
        CHECK(fixed == is_partial_isometry(t).holds);
    }
}

TEST_CASE("mat_power: edge exponents and frozen examples") {
    const Matrix t = random_general(3, 3, 8, 10.0);
    CHECK((mat_power(t, 0) - Matrix::Identity(3, 3)).norm() == 0.0);
    CHECK((mat_power(t, 1) - t).norm() == 0.0);

    const Matrix nilpotent = rank_one(Vector::Unit(2, 0), Vector::Unit(2, 1));
    CHECK(mat_power(nilpotent, 2).norm() == 0.0);

    CHECK((mat_power(involution_2x2(), 4) - 16.0 * Matrix::Identity(2, 2)).norm() == 0.0);

    CHECK_THROWS_AS(mat_power(t, -1), InvalidInput);
    CHECK_THROWS_AS(mat_power(Matrix::Zero(2, 3), 2), InvalidInput);
}
