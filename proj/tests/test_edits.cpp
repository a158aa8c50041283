#include <doctest.h>

#include <cmath>
#include <memory>

#include "efnz/edits.hpp"
#include "efnz/inversion.hpp"
#include "efnz/stats.hpp"

using namespace efnz;

namespace {

Schedule respaced(int steps, double eta = 1.0) {
    return respace(make_linear_schedule(1000, 1e-4, 0.02, eta), steps);
}

ModelPtr field_model(std::size_t n = 16, double length_scale = 3.0) {
    std::vector<std::size_t> shape{n, n};
    Tensor k = StationaryFieldModel::squared_exponential_kernel(shape, length_scale, 1.0,
                                                                1e-4);
    return std::make_shared<StationaryFieldModel>(shape, std::move(k), 0.0);
}

ModelPtr conditional_model() {
    // member covariances differ so the swap is not a pure translation
    ModelPtr a = std::make_shared<FullGaussianModel>(
        Tensor::from_values({2}, {-6.0, 0.0}),
        Tensor::from_values({2, 2}, {0.8, 0.3, 0.3, 0.8}));
    ModelPtr b = std::make_shared<FullGaussianModel>(
        Tensor::from_values({2}, {6.0, 0.0}),
        Tensor::from_values({2, 2}, {1.3, -0.5, -0.5, 0.7}));
    ModelPtr uncond = std::make_shared<GmmModel>(std::vector<double>{0.5, 0.5},
                                                 std::vector<ModelPtr>{a, b});
    return std::make_shared<ConditionalModel>(
        std::map<std::string, ModelPtr>{{"a", a}, {"b", b}}, uncond);
}

}  // namespace

TEST_SUITE("edits") {
    TEST_CASE("shift basics") {
        Tensor t = Tensor::from_values({2, 4}, {0, 1, 2, 3, 4, 5, 6, 7});
        ShiftSpec spec{1, 1, 2};
        Tensor out = shift_tensor(t, spec);
        // content moves right by one; the vacated column copies index 2
        CHECK(out[0] == 2.0);
        CHECK(out[1] == 0.0);
        CHECK(out[2] == 1.0);
        CHECK(out[3] == 2.0);
        CHECK(out[4] == 6.0);

        ShiftSpec zero{0, 1, 2};
        CHECK(shift_tensor(t, zero) == t);
        CHECK_THROWS_AS(shift_tensor(t, ShiftSpec{4, 1, 0}), ConfigError);
        CHECK_THROWS_AS(shift_tensor(t, ShiftSpec{1, 5, 0}), ConfigError);
    }

    TEST_CASE("latent shift composes on the overlapping valid region") {
        Schedule s = respaced(20);
        ModelPtr m = field_model();
        RngStream rng(71);
        Trajectory traj = ddpm_sample(*m, s, rng);
        LatentCode code = to_latent_code(traj);
        LatentCode once = shift_latent(shift_latent(code, ShiftSpec{2, 1, 5}),
                                       ShiftSpec{3, 1, 5});
        LatentCode direct = shift_latent(code, ShiftSpec{5, 1, 5});
        // rows agree wherever neither fill region is involved
        const std::size_t n = 16;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 5 + 3; c < n; ++c) {
                CHECK(once.x_T[r * n + c] == direct.x_T[r * n + c]);
            }
        }
        CHECK(once.schedule_fingerprint == code.schedule_fingerprint);
        CHECK(once.shape() == code.shape());
    }

    TEST_CASE("filled boundary keeps the map's noise scale") {
        Schedule s = respaced(30);
        ModelPtr m = field_model();
        RngStream rng(72);
        Tensor x0 = sample_x0(*m, rng);
        LatentCode code = edit_friendly_invert(x0, *m, s, rng);
        ShiftSpec spec{4, 1, 5};
        LatentCode shifted = shift_latent(code, spec);
        // pool the filled region over all z maps vs the global std
        double fs = 0.0, gs = 0.0;
        std::size_t fn = 0, gn = 0;
        const std::size_t n = 16;
        for (int t = 1; t <= s.T; ++t) {
            const Tensor& z = shifted.z[static_cast<std::size_t>(t)];
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    double v = z[r * n + c];
                    if (c < spec.d) {
                        fs += v * v;
                        ++fn;
                    }
                    gs += v * v;
                    ++gn;
                }
            }
        }
        double fill_std = std::sqrt(fs / static_cast<double>(fn));
        double global_std = std::sqrt(gs / static_cast<double>(gn));
        CHECK(std::fabs(fill_std - global_std) <= 0.1 * global_std);
    }

    TEST_CASE("per-axis-symmetric fields tie under latent flips") {
        // A per-axis-symmetric stationary field is exactly flip-equivariant,
        // so generating from flipped latents returns the flipped original
        // for native and edit-friendly codes alike.
        Schedule s = respaced(40);
        ModelPtr m = field_model(16, 3.0);
        RngStream rng(81);
        Trajectory traj = ddpm_sample(*m, s, rng);
        const Tensor& x0 = traj.x0();
        LatentCode native = to_latent_code(traj);
        LatentCode ef = edit_friendly_invert(x0, *m, s, rng);
        FlipSpec spec{1};
        Tensor reference = flip_tensor(x0, spec);
        CHECK(rms_diff(generate_from_latent(*m, s, flip_latent(ef, spec)), reference) <=
              1e-8);
        CHECK(rms_diff(generate_from_latent(*m, s, flip_latent(native, spec)), reference) <=
              1e-8);
    }

    TEST_CASE("oriented texture separates edit-friendly from native flips") {
        Schedule s = respaced(100);
        std::vector<std::size_t> shape{32, 32};
        Tensor k = StationaryFieldModel::anisotropic_diagonal_kernel(shape, 6.0, 1.5, 1.0,
                                                                     1e-4);
        auto m = std::make_shared<StationaryFieldModel>(shape, std::move(k), 0.0);
        RngStream root(82);
        for (int i = 0; i < 3; ++i) {
            RngStream sr = root.child("image/" + std::to_string(i));
            Trajectory traj = ddpm_sample(*m, s, sr);
            const Tensor& x0 = traj.x0();
            LatentCode native = to_latent_code(traj);
            RngStream ir = root.child("invert/" + std::to_string(i));
            LatentCode ef = edit_friendly_invert(x0, *m, s, ir);
            FlipSpec spec{1};
            Tensor reference = flip_tensor(x0, spec);
            double ef_rms =
                rms_diff(generate_from_latent(*m, s, flip_latent(ef, spec)), reference);
            double native_rms =
                rms_diff(generate_from_latent(*m, s, flip_latent(native, spec)), reference);
            CHECK(ef_rms < native_rms);
        }
    }

    TEST_CASE("shifted edit-friendly latents track the shifted image better") {
        Schedule s = respaced(100);
        std::vector<std::size_t> shape{32, 32};
        Tensor k = StationaryFieldModel::anisotropic_diagonal_kernel(shape, 6.0, 1.5, 1.0,
                                                                     1e-4);
        auto m = std::make_shared<StationaryFieldModel>(shape, std::move(k), 0.0);
        RngStream root(83);
        for (std::size_t d : {2, 4}) {
            double ef_mse = 0.0, native_mse = 0.0;
            for (int i = 0; i < 4; ++i) {
                RngStream sr = root.child("image/" + std::to_string(i));
                Trajectory traj = ddpm_sample(*m, s, sr);
                const Tensor& x0 = traj.x0();
                LatentCode native = to_latent_code(traj);
                RngStream ir = root.child("invert/" + std::to_string(i));
                LatentCode ef = edit_friendly_invert(x0, *m, s, ir);
                ShiftSpec spec{d, 1, 12};
                Tensor reference = shift_tensor(x0, spec);
                ef_mse += shift_mse(generate_from_latent(*m, s, shift_latent(ef, spec)),
                                    reference, d, 1);
                native_mse += shift_mse(
                    generate_from_latent(*m, s, shift_latent(native, spec)), reference, d, 1);
            }
            CHECK(ef_mse < native_mse);
        }
    }

    TEST_CASE("flip is an involution and fixes constants") {
        Schedule s = respaced(10);
        ModelPtr m = field_model();
        RngStream rng(73);
        LatentCode code = to_latent_code(ddpm_sample(*m, s, rng));
        LatentCode twice = flip_latent(flip_latent(code, FlipSpec{1}), FlipSpec{1});
        CHECK(twice.x_T == code.x_T);
        for (int t = 1; t <= s.T; ++t) {
            CHECK(twice.z[static_cast<std::size_t>(t)] ==
                  code.z[static_cast<std::size_t>(t)]);
        }
        Tensor c = Tensor::filled({4, 4}, 2.5);
        CHECK(flip_tensor(c, FlipSpec{0}) == c);
        CHECK_THROWS_AS(flip_latent(code, FlipSpec{7}), ConfigError);
    }

    TEST_CASE("color edit reduces to plain replay at zero strength") {
        Schedule s = respaced(50);
        ModelPtr m = field_model();
        RngStream rng(74);
        Tensor x0 = sample_x0(*m, rng);
        LatentCode code = edit_friendly_invert(x0, *m, s, rng);
        ColorEditSpec spec{Tensor::filled({16, 16}, 1.0), x0, 0.0, 10, 35};
        Tensor edited = color_edit_generate(code, *m, s, spec);
        Tensor plain = generate_from_latent(*m, s, code);
        CHECK(edited == plain);
    }

    TEST_CASE("color edit pulls the output toward the target") {
        Schedule s = respaced(100);
        ModelPtr m = field_model();
        RngStream rng(75);
        Tensor x0 = sample_x0(*m, rng);
        LatentCode code = edit_friendly_invert(x0, *m, s, rng);
        Tensor target = x0;
        for (std::size_t i = 0; i < target.size(); ++i) target[i] += 0.6;
        Tensor ones = Tensor::filled({16, 16}, 1.0);
        Tensor plain = generate_from_latent(*m, s, code);

        ColorEditSpec spec{ones, target, 0.05, 20, 70};
        Tensor edited = color_edit_generate(code, *m, s, spec);
        CHECK(std::fabs(mean(edited) - mean(target)) <
              std::fabs(mean(plain) - mean(target)));

        // strength response is monotone
        double prev = 0.0;
        for (double sv : {0.0, 0.01, 0.05, 0.1}) {
            ColorEditSpec sp{ones, target, sv, 20, 70};
            double r = rms_diff(color_edit_generate(code, *m, s, sp), plain);
            CHECK(r >= prev);
            if (sv > 0.0) CHECK(r > prev);
            prev = r;
        }
    }

    TEST_CASE("masked color edit stays local") {
        // the mask margin has to dwarf the field correlation length for the
        // outside-mask spillover to stay small
        Schedule s = respaced(100);
        ModelPtr m = field_model(32, 2.0);
        RngStream rng(76);
        Tensor x0 = sample_x0(*m, rng);
        LatentCode code = edit_friendly_invert(x0, *m, s, rng);
        Tensor mask = Tensor::zeros({32, 32});
        for (std::size_t r = 12; r < 20; ++r) {
            for (std::size_t c = 12; c < 20; ++c) mask[r * 32 + c] = 1.0;
        }
        Tensor target = x0;
        for (std::size_t i = 0; i < target.size(); ++i) target[i] += 0.8;
        Tensor plain = generate_from_latent(*m, s, code);
        ColorEditSpec spec{mask, target, 0.05, 20, 70};
        Tensor edited = color_edit_generate(code, *m, s, spec);

        double inside = 0.0, outside = 0.0;
        std::size_t ni = 0, no = 0;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            double d = edited[i] - plain[i];
            if (mask[i] == 1.0) {
                inside += d * d;
                ++ni;
            } else {
                outside += d * d;
                ++no;
            }
        }
        inside = std::sqrt(inside / static_cast<double>(ni));
        outside = std::sqrt(outside / static_cast<double>(no));
        CHECK(outside < 0.10 * inside);
    }

    TEST_CASE("color edit validation") {
        Schedule s = respaced(20);
        ModelPtr m = field_model();
        RngStream rng(77);
        LatentCode code = to_latent_code(ddpm_sample(*m, s, rng));
        Tensor ones = Tensor::filled({16, 16}, 1.0);
        CHECK_THROWS_AS(
            color_edit_generate(code, *m, s, ColorEditSpec{ones, ones, 0.1, 5, 25}),
            ConfigError);
        Tensor half = Tensor::filled({16, 16}, 0.5);
        CHECK_THROWS_AS(
            color_edit_generate(code, *m, s, ColorEditSpec{half, ones, 0.1, 5, 15}),
            ConfigError);
        Tensor small = Tensor::filled({4, 4}, 1.0);
        CHECK_THROWS_AS(
            color_edit_generate(code, *m, s, ColorEditSpec{small, small, 0.1, 5, 15}),
            ConfigError);
    }

    TEST_CASE("condition swap reconstructs the source and honors T_skip") {
        Schedule s = respaced(60);
        ModelPtr m = conditional_model();
        RngStream rng(78);
        Tensor x0 = sample_x0(*m, rng, std::string("a"));
        LatentCode code = edit_friendly_invert(x0, *m, s, rng, std::string("a"));

        Tensor same = cond_swap_generate(code, *m, CondSwapSpec{"a", {}, 0}, s);
        CHECK(max_abs_diff(same, x0) <= 1e-8);

        Tensor full_skip = cond_swap_generate(code, *m, CondSwapSpec{"b", {}, 60}, s);
        CHECK(full_skip == x0);

        Tensor swapped = cond_swap_generate(code, *m, CondSwapSpec{"b", {}, 0}, s);
        Tensor mu_b = resolve_condition(*m, std::string("b")).mean_x0();
        CHECK(rms_diff(swapped, mu_b) < rms_diff(x0, mu_b));
    }

    TEST_CASE("swapped outputs are deterministic given the latent and distinct per target") {
        Schedule s = respaced(40);
        ModelPtr m = conditional_model();
        RngStream rng(84);
        Tensor x0 = sample_x0(*m, rng, std::string("a"));
        LatentCode code = edit_friendly_invert(x0, *m, s, rng, std::string("a"));
        Tensor to_a_1 = cond_swap_generate(code, *m, CondSwapSpec{"a", {}, 0}, s);
        Tensor to_a_2 = cond_swap_generate(code, *m, CondSwapSpec{"a", {}, 0}, s);
        Tensor to_b = cond_swap_generate(code, *m, CondSwapSpec{"b", {}, 0}, s);
        CHECK(to_a_1 == to_a_2);
        CHECK(max_abs_diff(to_a_1, to_b) > 0.1);
    }

    TEST_CASE("condition swap preserves structure across 50 inputs") {
        Schedule s = respaced(60);
        ModelPtr m = conditional_model();
        RngStream root(79);
        Tensor mu_a = resolve_condition(*m, std::string("a")).mean_x0();
        Tensor mu_b = resolve_condition(*m, std::string("b")).mean_x0();
        std::vector<double> in_dev, out_dev;
        for (std::size_t i = 0; i < 50; ++i) {
            RngStream xr = root.child("x/" + std::to_string(i));
            Tensor x0 = sample_x0(*m, xr, std::string("a"));
            RngStream ir = root.child("i/" + std::to_string(i));
            LatentCode code = edit_friendly_invert(x0, *m, s, ir, std::string("a"));
            Tensor out = cond_swap_generate(code, *m, CondSwapSpec{"b", {}, 0}, s);
            for (std::size_t k = 0; k < 2; ++k) {
                in_dev.push_back(x0[k] - mu_a[k]);
                out_dev.push_back(out[k] - mu_b[k]);
            }
        }
        CHECK(pearson(out_dev, in_dev) > 0.5);
    }

    TEST_CASE("increasing T_skip pulls the output toward the input") {
        Schedule s = respaced(100);
        ModelPtr m = conditional_model();
        RngStream root(80);
        // averaged over a few inputs to avoid single-path wiggles
        const std::size_t inputs = 6;
        std::vector<int> skips = {0, 25, 50, 75, 100};
        std::vector<double> rms(skips.size(), 0.0);
        for (std::size_t i = 0; i < inputs; ++i) {
            RngStream xr = root.child("x/" + std::to_string(i));
            Tensor x0 = sample_x0(*m, xr, std::string("a"));
            RngStream ir = root.child("i/" + std::to_string(i));
            LatentCode code = edit_friendly_invert(x0, *m, s, ir, std::string("a"));
            for (std::size_t k = 0; k < skips.size(); ++k) {
                Tensor out = cond_swap_generate(code, *m, CondSwapSpec{"b", {}, skips[k]}, s);
                rms[k] += rms_diff(out, x0);
            }
        }
        for (std::size_t k = 1; k < skips.size(); ++k) CHECK(rms[k] <= rms[k - 1]);
        CHECK(rms.back() == 0.0);
    }
}
