#include <doctest.h>

#include <cmath>

#include "efnz/tensor.hpp"

using namespace efnz;

TEST_SUITE("tensor") {
    TEST_CASE("construction checks shape and values") {
        Tensor t = Tensor::zeros({2, 3});
        CHECK(t.size() == 6);
        CHECK(t.shape() == std::vector<std::size_t>{2, 3});

        CHECK_THROWS_AS(Tensor::zeros({}), ShapeError);
        CHECK_THROWS_AS(Tensor::zeros({2, 0}), ShapeError);
        CHECK_THROWS_AS(Tensor::from_values({2}, {1.0}), ShapeError);
        CHECK_THROWS_AS(Tensor::from_values({2}, {1.0, HUGE_VAL}), NumericError);
        CHECK_THROWS_AS(Tensor::from_values({2}, {1.0, NAN}), NumericError);
    }

    TEST_CASE("elementwise ops are shape-checked") {
        Tensor a = Tensor::filled({2, 2}, 1.0);
        Tensor b = Tensor::filled({4}, 1.0);
        CHECK_THROWS_AS(a += b, ShapeError);
        CHECK_THROWS_AS(a -= b, ShapeError);
        CHECK_THROWS_AS(dot(a, b), ShapeError);
        CHECK_THROWS_AS(hadamard(a, b), ShapeError);
        CHECK_THROWS_AS(max_abs_diff(a, b), ShapeError);

        Tensor c = a + Tensor::filled({2, 2}, 2.0);
        CHECK(c[0] == 3.0);
        c *= 2.0;
        CHECK(c[3] == 6.0);
    }

    TEST_CASE("reductions") {
        Tensor t = Tensor::from_values({4}, {1.0, 2.0, 3.0, 4.0});
        CHECK(sum(t) == 10.0);
        CHECK(mean(t) == 2.5);
        CHECK(variance(t) == doctest::Approx(1.25));
        CHECK(max_abs(t) == 4.0);
        CHECK(norm2(t) == doctest::Approx(std::sqrt(30.0)));
        Tensor u = Tensor::from_values({4}, {1.0, 2.0, 3.0, 5.0});
        CHECK(max_abs_diff(t, u) == 1.0);
        CHECK(rms_diff(t, u) == doctest::Approx(0.5));
    }
}
