#include <doctest.h>

#include <cmath>

#include "efnz/schedule.hpp"

using namespace efnz;

TEST_SUITE("schedule") {
    TEST_CASE("single step product") {
        Schedule s = make_linear_schedule(1, 1e-4, 1e-4, 1.0);
        CHECK(s.alpha_bar[1] == 1.0 - 1e-4);
        CHECK(s.alpha_bar[0] == 1.0);
    }

    TEST_CASE("golden cumulative product over 1000 steps") {
        Schedule s = make_linear_schedule(1000, 1e-4, 0.02, 1.0);
        // Frozen from an independent 60-digit computation of the product.
        const double golden = 4.0358297653756835e-05;
        CHECK(std::fabs(s.alpha_bar[1000] - golden) <= 1e-12 * golden);
    }

    TEST_CASE("alpha_bar recomputes as a running product to 1e-14") {
        Schedule s = make_linear_schedule(500, 1e-4, 0.02, 0.7);
        double prod = 1.0;
        for (int t = 1; t <= s.T; ++t) {
            prod *= s.alpha[t];
            CHECK(std::fabs(s.alpha_bar[t] - prod) <= 1e-14 * prod);
            CHECK(s.alpha_bar[t] < s.alpha_bar[t - 1]);  // strictly decreasing
            CHECK(s.alpha_bar[t] > 0.0);
        }
    }

    TEST_CASE("eta zero forces sigma zero everywhere") {
        for (bool zf : {false, true}) {
            Schedule s = make_linear_schedule(64, 1e-4, 0.02, 0.0, zf);
            for (int t = 1; t <= s.T; ++t) CHECK(sigma_of(s, t) == 0.0);
        }
    }

    TEST_CASE("zero_final_noise makes the last step noiseless") {
        Schedule s = make_linear_schedule(64, 1e-4, 0.02, 1.0, /*zero_final_noise=*/true);
        CHECK(s.alpha_bar_edge == 1.0);
        CHECK(sigma_of(s, 1) == 0.0);
        Schedule open = make_linear_schedule(64, 1e-4, 0.02, 1.0);
        CHECK(open.alpha_bar_edge == doctest::Approx(std::sqrt(open.alpha_bar[1])));
        CHECK(sigma_of(open, 1) > 0.0);
    }

    TEST_CASE("sigma matches the posterior standard deviation at eta 1") {
        Schedule s = make_linear_schedule(200, 1e-4, 0.02, 1.0);
        for (int t = 2; t <= s.T; ++t) {
            double expect =
                std::sqrt(s.beta[t] * (1.0 - s.alpha_bar[t - 1]) / (1.0 - s.alpha_bar[t]));
            CHECK(sigma_of(s, t) == doctest::Approx(expect).epsilon(1e-12));
        }
    }

    TEST_CASE("direction coefficient stays real for every eta") {
        for (double eta : {0.0, 0.3, 0.7, 1.0}) {
            Schedule s = make_linear_schedule(128, 1e-4, 0.02, eta);
            for (int t = 1; t <= s.T; ++t) {
                double v = 1.0 - s.alpha_bar_prev(t) - s.sigma[t] * s.sigma[t];
                CHECK(v >= -1e-15);
            }
            Schedule r = respace(s, 32);
            for (int t = 1; t <= r.T; ++t) {
                double v = 1.0 - r.alpha_bar_prev(t) - r.sigma[t] * r.sigma[t];
                CHECK(v >= -1e-15);
            }
        }
    }

    TEST_CASE("respacing keeps retained alpha_bar bitwise and is identity at K=T") {
        Schedule base = make_linear_schedule(1000, 1e-4, 0.02, 1.0);
        Schedule r = respace(base, 100);
        CHECK(r.T == 100);
        for (int i = 1; i <= 100; ++i) {
            CHECK(r.alpha_bar[i] == base.alpha_bar[10 * i]);  // bitwise copy
            CHECK(r.base_timesteps[static_cast<std::size_t>(i) - 1] == 10 * i);
        }

        Schedule same = respace(base, 1000);
        for (int t = 0; t <= 1000; ++t) CHECK(same.alpha_bar[t] == base.alpha_bar[t]);

        Schedule one = respace(base, 1);
        CHECK(one.T == 1);
        CHECK(one.alpha_bar[1] == base.alpha_bar[1000]);
    }

    TEST_CASE("respaced product identity still holds") {
        Schedule base = make_linear_schedule(1000, 1e-4, 0.02, 1.0);
        Schedule r = respace(base, 37);
        double prod = 1.0;
        for (int t = 1; t <= r.T; ++t) {
            prod *= r.alpha[t];
            CHECK(std::fabs(r.alpha_bar[t] - prod) <= 1e-13 * prod);
        }
    }

    TEST_CASE("parameter validation") {
        CHECK_THROWS_AS(make_linear_schedule(0, 1e-4, 0.02, 1.0), ConfigError);
        CHECK_THROWS_AS(make_linear_schedule(10, 0.0, 0.02, 1.0), ConfigError);
        CHECK_THROWS_AS(make_linear_schedule(10, 0.03, 0.02, 1.0), ConfigError);
        CHECK_THROWS_AS(make_linear_schedule(10, 1e-4, 1.0, 1.0), ConfigError);
        CHECK_THROWS_AS(make_linear_schedule(10, 1e-4, 0.02, 1.5), ConfigError);
        Schedule s = make_linear_schedule(10, 1e-4, 0.02, 1.0);
        CHECK_THROWS_AS(sigma_of(s, 0), ConfigError);
        CHECK_THROWS_AS(sigma_of(s, 11), ConfigError);
        CHECK_THROWS_AS(respace(s, 11), ConfigError);
        CHECK_THROWS_AS(respace(s, 0), ConfigError);
    }

    TEST_CASE("fingerprint distinguishes dynamics-relevant changes") {
        Schedule a = make_linear_schedule(100, 1e-4, 0.02, 1.0);
        Schedule b = make_linear_schedule(100, 1e-4, 0.02, 1.0);
        CHECK(a.fingerprint() == b.fingerprint());
        CHECK(a.fingerprint() != make_linear_schedule(100, 1e-4, 0.02, 0.5).fingerprint());
        CHECK(a.fingerprint() !=
              make_linear_schedule(100, 1e-4, 0.02, 1.0, true).fingerprint());
        CHECK(a.fingerprint() != respace(make_linear_schedule(1000, 1e-4, 0.02, 1.0), 100)
                                     .fingerprint());
    }
}
