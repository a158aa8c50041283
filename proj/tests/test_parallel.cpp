#include <doctest.h>

#include <memory>
#include <vector>

#include "efnz/inversion.hpp"
#include "efnz/parallel.hpp"
#include "efnz/sampler.hpp"

using namespace efnz;

TEST_SUITE("parallel") {
    TEST_CASE("serial reference and openmp fan-out agree bitwise") {
        Schedule s = respace(make_linear_schedule(1000, 1e-4, 0.02, 1.0), 30);
        Tensor k = StationaryFieldModel::squared_exponential_kernel({8, 8}, 2.0, 1.0, 1e-4);
        auto model = std::make_shared<StationaryFieldModel>(
            std::vector<std::size_t>{8, 8}, std::move(k), 0.0);

        auto run = [&](int threads) {
            RngStream root(4242);
            std::vector<Tensor> out(12);
            parallel_for_indexed(out.size(), threads, [&](std::size_t i) {
                RngStream xr = root.child("x/" + std::to_string(i));
                Tensor x0 = sample_x0(*model, xr);
                RngStream ir = root.child("i/" + std::to_string(i));
                LatentCode code = edit_friendly_invert(x0, *model, s, ir);
                out[i] = generate_from_latent(*model, s, code);
            });
            return out;
        };

        std::vector<Tensor> serial = run(1);
        std::vector<Tensor> parallel = run(0);  // all available threads
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
    }

    TEST_CASE("exceptions propagate out of the pool") {
        CHECK_THROWS_AS(
            parallel_for_indexed(8, 0,
                                 [](std::size_t i) {
                                     if (i == 3) throw ConfigError("boom");
                                 }),
            ConfigError);
    }
}
