#include <doctest.h>

#include "ssqcv/core.hpp"
#include "test_support.hpp"

using namespace ssqcv;
using namespace ssqcv::testing;

TEST_CASE("rank_vector orders ascending with stable ties") {
    CHECK(rank_vector(Vector{{3.1, 7.3, 2.4, 8.7}}).ranks == std::vector<int>{2, 3, 1, 4});
    CHECK(rank_vector(Vector{{10.0}}).ranks == std::vector<int>{1});
    CHECK(rank_vector(Vector{{5.0, 5.0, 2.0}}).ranks == std::vector<int>{2, 3, 1});
    CHECK_THROWS_AS(rank_vector(Vector(0)), InputError);
    CHECK_THROWS_AS(rank_vector(Vector{{1.0, std::nan("")}}), InputError);
}

TEST_CASE("rank_vector output is a permutation of 1..n") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(20);
        Vector x = rng.normal_vector(n);
        if (n > 2)
            x[1] = x[0];  // force a tie
        auto r = rank_vector(x).ranks;
        std::sort(r.begin(), r.end());
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(r[i] == static_cast<int>(i) + 1);
    }
}

TEST_CASE("permutation matrices commute with ranking on distinct entries") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(10);
        const Permutation p = rng.permutation(n);
        const Vector x = rng.normal_vector(n);
        const auto rx = rank_vector(x).ranks;
        Vector rxv(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            rxv[static_cast<Eigen::Index>(i)] = rx[i];
        const Vector lhs = p.to_matrix() * rxv;
        const auto rhs = rank_vector(Vector(p.to_matrix() * x)).ranks;
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(lhs[static_cast<Eigen::Index>(i)] == rhs[i]);
    }
}

TEST_CASE("Permutation rejects non-bijections and round-trips through inverse") {
    CHECK_THROWS_AS(Permutation({0, 0}), InputError);
    CHECK_THROWS_AS(Permutation({1, 2}), InputError);
    Rng rng(3);
    const Permutation p = rng.permutation(9);
    CHECK(p.inverse().inverse() == p);
    const Matrix pm = p.to_matrix();
    CHECK((pm * pm.transpose()).isApprox(Matrix::Identity(9, 9)));
    const Vector v = rng.normal_vector(9);
    CHECK((p.apply(v) - pm * v).norm() == 0.0);
}

TEST_CASE("gm_objective") {
    Rng rng(5);
    const Matrix s = symmetric_matrix(4, rng);
    CHECK(gm_objective({s, s, ""}, Permutation::identity(4)) == 0.0);

    const Matrix a{{0, 1}, {1, 0}};
    const GraphInstance zero_b{a, Matrix::Zero(2, 2), ""};
    CHECK(gm_objective(zero_b, Permutation::identity(2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(gm_objective(zero_b, Permutation({1, 0})) == doctest::Approx(std::sqrt(2.0)));

    const GraphInstance inst = random_instance(6, rng);
    for_each_permutation(6, [&](const Permutation& p) {
        REQUIRE(gm_objective(inst, p) == doctest::Approx(naive_gm(inst, p)).epsilon(1e-12));
    });
    CHECK_THROWS_AS(gm_objective(inst, Permutation::identity(5)), InputError);
}

TEST_CASE("trace_objective identity with the squared norm") {
    const GraphInstance eye{Matrix::Identity(2, 2), Matrix::Identity(2, 2), ""};
    CHECK(trace_objective(eye, Permutation::identity(2)) == -2.0);

    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(20);
        const GraphInstance inst{uniform_matrix(n, rng, -3, 3), uniform_matrix(n, rng, -3, 3), ""};
        const Permutation p = rng.permutation(n);
        const double g = gm_objective(inst, p);
        const double lhs = g * g - 2.0 * trace_objective(inst, p);
        const double rhs = inst.a.squaredNorm() + inst.b.squaredNorm();
        REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("trace_objective matches the naive double loop") {
    Rng rng(23);
    const GraphInstance inst{uniform_matrix(8, rng, -5, 5), uniform_matrix(8, rng, -5, 5), ""};
    const Permutation p = rng.permutation(8);
    double naive = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            naive -= inst.a(i, j) * inst.b(p[i], p[j]);
    CHECK(trace_objective(inst, p) == doctest::Approx(naive).epsilon(1e-14));
}

TEST_CASE("perm_distance") {
    Rng rng(29);
    const Permutation id = Permutation::identity(6);
    CHECK(perm_distance(id, id) == 0.0);
    CHECK(perm_distance(id, Permutation({1, 0, 2, 3, 4, 5})) == doctest::Approx(2.0));
    CHECK_THROWS_AS(perm_distance(id, Permutation::identity(5)), InputError);

    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(15);
        const Permutation p0 = rng.permutation(n), p1 = rng.permutation(n);
        int disagree = 0;
        for (std::size_t i = 0; i < n; ++i)
            disagree += p0[i] != p1[i];
        const double d2 = perm_distance(p0, p1) * perm_distance(p0, p1);
        const double dense = (p0.to_matrix() - p1.to_matrix()).squaredNorm();
        REQUIRE(d2 == doctest::Approx(2.0 * disagree));
        REQUIRE(d2 == doctest::Approx(dense));
        REQUIRE(d2 <= 2.0 * static_cast<double>(n) + 1e-12);
    }
}
