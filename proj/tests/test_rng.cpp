#include <doctest.h>

#include <cmath>

#include "efnz/rng.hpp"

using namespace efnz;

TEST_SUITE("rng") {
    TEST_CASE("fixed seed reproduces the same values on every run") {
        RngStream a(1234), b(1234);
        Tensor ta = randn({2}, a);
        Tensor tb = randn({2}, b);
        CHECK(ta == tb);

        // Frozen from a reference run; flags any change to the generator or
        // the normal-variate method.
        RngStream c(42);
        CHECK(c.next_u64() == 15021278609987233951ULL);
        CHECK(c.next_u64() == 5881210131331364753ULL);
    }

    TEST_CASE("distinct seeds diverge within the first 1000 draws") {
        RngStream a(1), b(2);
        bool any_diff = false;
        for (int i = 0; i < 1000; ++i) {
            if (a.next_u64() != b.next_u64()) {
                any_diff = true;
                break;
            }
        }
        CHECK(any_diff);
    }

    TEST_CASE("zero extent rejected") {
        RngStream rng(7);
        CHECK_THROWS_AS(randn({0}, rng), ShapeError);
    }

    TEST_CASE("moments of 1e6 draws match the standard normal") {
        RngStream rng(20240801);
        const std::size_t n = 1'000'000;
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = rng.next_normal();
            s += v;
            s2 += v * v;
        }
        double m = s / static_cast<double>(n);
        double var = s2 / static_cast<double>(n) - m * m;
        CHECK(std::fabs(m) < 0.005);       // ~3 sigma of the CLT bound
        CHECK(std::fabs(var - 1.0) < 0.01);
    }

    TEST_CASE("child streams are reproducible and uncorrelated") {
        RngStream root(99);
        RngStream a1 = root.child("a");
        root.next_u64();  // advancing the parent must not change children
        RngStream a2 = root.child("a");
        for (int i = 0; i < 16; ++i) CHECK(a1.next_u64() == a2.next_u64());

        RngStream ca = root.child("a");
        RngStream cb = root.child("b");
        const std::size_t n = 100'000;
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double va = ca.next_normal();
            double vb = cb.next_normal();
            sa += va;
            sb += vb;
            saa += va * va;
            sbb += vb * vb;
            sab += va * vb;
        }
        double nn = static_cast<double>(n);
        double corr = (sab / nn - sa / nn * sb / nn) /
                      std::sqrt((saa / nn - sa / nn * sa / nn) *
                                (sbb / nn - sb / nn * sb / nn));
        CHECK(std::fabs(corr) < 0.01);
    }
}
