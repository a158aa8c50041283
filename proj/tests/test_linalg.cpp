#include <doctest.h>

#include <cmath>

#include "efnz/linalg.hpp"
#include "efnz/rng.hpp"

using namespace efnz;

namespace {

// A = G^T G + I is SPD and well conditioned for iid normal G.
Tensor random_spd(std::size_t n, RngStream& rng) {
    Tensor g = randn({n, n}, rng);
    Tensor a = Tensor::zeros({n, n});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += g[k * n + i] * g[k * n + j];
            a[i * n + j] = s + (i == j ? 1.0 : 0.0);
        }
    }
    return a;
}

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("identity and diagonal systems") {
        Tensor eye = Tensor::zeros({3, 3});
        for (std::size_t i = 0; i < 3; ++i) eye[i * 3 + i] = 1.0;
        Tensor b = Tensor::from_values({3}, {4.0, -1.0, 2.5});
        CHECK(solve_spd(eye, b) == b);

        Tensor d = Tensor::from_values({2, 2}, {2.0, 0.0, 0.0, 4.0});
        Tensor rhs = Tensor::from_values({2}, {2.0, 8.0});
        Tensor x = solve_spd(d, rhs);
        CHECK(x[0] == doctest::Approx(1.0));
        CHECK(x[1] == doctest::Approx(2.0));
    }

    TEST_CASE("random 50x50 SPD system solves below tolerance") {
        RngStream rng(555);
        const std::size_t n = 50;
        Tensor a = random_spd(n, rng);
        Tensor b = randn({n}, rng);
        Tensor x = solve_spd(a, b);
        Tensor r = matvec(a, x);
        double resid = max_abs_diff(r, b);
        CHECK(resid <= 1e-8 * max_abs(b));
    }

    TEST_CASE("solve then multiply is the identity on conditioned inputs") {
        RngStream rng(777);
        for (int rep = 0; rep < 5; ++rep) {
            const std::size_t n = 8;
            Tensor a = random_spd(n, rng);
            Tensor x_true = randn({n}, rng);
            Tensor b = matvec(a, x_true);
            Tensor x = solve_spd(a, b);
            CHECK(max_abs_diff(x, x_true) <= 1e-8 * (1.0 + max_abs(x_true)));
        }
    }

    TEST_CASE("non-SPD and asymmetric inputs are rejected") {
        Tensor neg = Tensor::from_values({2, 2}, {1.0, 0.0, 0.0, -1.0});
        Tensor b = Tensor::from_values({2}, {1.0, 1.0});
        CHECK_THROWS_AS(solve_spd(neg, b), NumericError);

        Tensor asym = Tensor::from_values({2, 2}, {1.0, 0.5, -0.5, 1.0});
        CHECK_THROWS_AS(solve_spd(asym, b), NumericError);

        Tensor rect = Tensor::zeros({2, 3});
        CHECK_THROWS_AS(solve_spd(rect, b), ShapeError);
    }
}
