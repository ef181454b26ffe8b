#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "hmf/domain.hpp"
#include "hmf/special.hpp"

using namespace hmf::domain;
using hmf::DomainError;

namespace {
constexpr double kPi = hmf::specfun::kPi;

bool in_fundamental(const HalfPlanePoint& z, double slack = 1e-13) {
    return std::abs(z.x) <= 0.5 + slack && z.x * z.x + z.y * z.y >= 1.0 - 1e-13;
}
}  // namespace

TEST_CASE("reduction of classical points") {
    auto r = reduce_to_fundamental({0.0, 1.0});
    CHECK(r.gamma.is_identity());
    CHECK(r.point.x == doctest::Approx(0.0));
    CHECK(r.point.y == doctest::Approx(1.0));

    r = reduce_to_fundamental({1.0, 1.0});
    CHECK(r.point.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.point.y == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.gamma.a == 1);
    CHECK(r.gamma.b == -1);

    r = reduce_to_fundamental({0.1, 0.1});
    CHECK(in_fundamental(r.point));
    // matrix action reproduces the reduced point
    auto img = r.gamma.apply({0.1, 0.1});
    CHECK(std::abs(img.x - r.point.x) < 1e-12);
    CHECK(std::abs(img.y - r.point.y) < 1e-12);

    CHECK_THROWS_AS(reduce_to_fundamental({0.3, -1.0}), DomainError);
}

TEST_CASE("reduction is idempotent and respects boundary ties") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ux(-8.0, 8.0);
    std::uniform_real_distribution<double> uy(-4.0, 1.5);
    for (int i = 0; i < 2000; ++i) {
        HalfPlanePoint z{ux(rng), std::pow(10.0, uy(rng))};
        auto r = reduce_to_fundamental(z);
        CHECK(in_fundamental(r.point));
        auto r2 = reduce_to_fundamental(r.point);
        const bool on_boundary = std::abs(std::abs(r.point.x) - 0.5) < 1e-12 ||
                                 std::abs(r.point.x * r.point.x + r.point.y * r.point.y - 1.0) < 1e-12;
        if (!on_boundary) {
            CHECK(r2.gamma.is_identity());
            CHECK(r2.point.x == doctest::Approx(r.point.x).epsilon(1e-13));
            CHECK(r2.point.y == doctest::Approx(r.point.y).epsilon(1e-13));
        } else {
            // boundary identification: either representative is acceptable
            CHECK(std::abs(r2.point.y - r.point.y) / r.point.y < 1e-10);
            CHECK(std::abs(std::abs(r2.point.x) - std::abs(r.point.x)) < 1e-10);
        }
    }
}

TEST_CASE("brute-force word search agrees with reduction") {
    // all words in S, T of bounded length reach the same canonical domain
    HalfPlanePoint z{0.1, 0.1};
    auto r = reduce_to_fundamental(z);
    // exhaustive check: the reduced point has maximal imaginary part in orbit
    // samples generated by short words
    std::vector<Sl2Matrix> words{Sl2Matrix{}};
    const Sl2Matrix gens[3] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}};
    for (int depth = 0; depth < 8; ++depth) {
        std::vector<Sl2Matrix> next;
        for (auto& m : words)
            for (auto& g : gens) next.push_back(g.times(m));
        words.insert(words.end(), next.begin(), next.end());
        if (words.size() > 20000) break;
    }
    double ymax = 0.0;
    for (auto& m : words) ymax = std::max(ymax, m.apply(z).y);
    CHECK(r.point.y >= ymax - 1e-12);
}

TEST_CASE("Mobius action preserves the hyperbolic measure") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> entry(-20, 20);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.1, 5.0);
    int tested = 0;
    while (tested < 200) {
        long long a = entry(rng), b = entry(rng), c = entry(rng);
        // solve ad - bc = 1 for d when possible
        if (a == 0) continue;
        long long num = 1 + b * c;
        if (num % a != 0) continue;
        Sl2Matrix m{a, b, c, num / a};
        HalfPlanePoint z{ux(rng), uy(rng)};
        // Jacobian of the planar map is 1/|cz+d|^4; y(gz) = y/|cz+d|^2
        const double cc = static_cast<double>(m.c), cd = static_cast<double>(m.d);
        const double den = (cc * z.x + cd) * (cc * z.x + cd) + cc * cc * z.y * z.y;
        auto w = m.apply(z);
        const double lhs = (1.0 / (w.y * w.y)) * (1.0 / (den * den));
        const double rhs = 1.0 / (z.y * z.y);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(w.y == doctest::Approx(z.y / den).epsilon(1e-12));
        ++tested;
    }
}

TEST_CASE("grid total mass matches the truncated volume") {
    for (double Y : {10.0, 40.0, 200.0}) {
        auto g = build_grid(Y, 1e-9, 20.0);
        double sw = 0.0;
        for (double w : g.weights) {
            CHECK(w > 0.0);
            sw += w;
        }
        CHECK(std::abs(sw - (kPi / 3.0 - 1.0 / Y)) <= g.estimated_error);
        CHECK(g.estimated_error <= 1e-9);
    }
    // volume tends to pi/3
    auto g = build_grid(5000.0, 1e-8, 15.0);
    double sw = 0.0;
    for (double w : g.weights) sw += w;
    CHECK(sw == doctest::Approx(kPi / 3.0).epsilon(1e-3));
}

TEST_CASE("grid integrates y^s against closed forms") {
    const double Y = 12.0;
    auto g = build_grid(Y, 1e-10, 25.0);
    double i1 = 0.0, i2 = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        i1 += g.weights[i] / g.nodes[i].y;
        i2 += g.weights[i] / (g.nodes[i].y * g.nodes[i].y);
    }
    const double ex1 = (std::log(3.0) - 1.0 / (Y * Y)) / 2.0;
    const double ex2 = (2.0 / std::sqrt(3.0) - 1.0 / (Y * Y * Y)) / 3.0;
    CHECK(std::abs(i1 - ex1) <= 10 * g.estimated_error);
    CHECK(std::abs(i2 - ex2) <= 10 * g.estimated_error);
    // nodes stay inside the truncated fundamental domain
    for (auto& z : g.nodes) {
        CHECK(in_fundamental(z));
        CHECK(z.y <= Y);
    }
    CHECK_THROWS_AS(build_grid(1.0, 1e-8), DomainError);
    CHECK_THROWS_AS(build_grid(10.0, 1e-16), hmf::CapacityError);
}

TEST_CASE("grid serialization round-trip") {
    auto g = build_grid(8.0, 1e-8, 18.0);
    const char* path = "grid_roundtrip.tmp";
    write_grid(path, g);
    auto h = read_grid(path);
    REQUIRE(h.nodes.size() == g.nodes.size());
    CHECK(h.y_cutoff == g.y_cutoff);
    CHECK(h.estimated_error == g.estimated_error);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        CHECK(h.nodes[i].x == g.nodes[i].x);
        CHECK(h.nodes[i].y == g.nodes[i].y);
        CHECK(h.weights[i] == g.weights[i]);
    }
    std::remove(path);
}

TEST_CASE("bump observable") {
    HalfPlanePoint c{0.2, 1.35};
    auto psi = make_bump(c, 0.3);
    CHECK(psi(c) == doctest::Approx(1.0));
    // vanishes beyond the support radius
    CHECK(psi({0.2, 1.35 * std::exp(0.31)}) == 0.0);
    CHECK(psi({0.4, 3.0}) == 0.0);
    // positive mass
    auto g = build_grid(6.0, 1e-8, 10.0);
    double mass = g.integrate([&](const HalfPlanePoint& z) { return psi(z); });
    CHECK(mass > 0.0);
    // smooth profile: value at half radius
    HalfPlanePoint mid{0.2, 1.35 * std::exp(0.15)};
    CHECK(psi(mid) > 0.0);
    CHECK(psi(mid) < 1.0);
    // balls that wrap around the quotient are rejected; i is elliptic, so no
    // radius injects there
    CHECK_THROWS_AS(make_bump({0.0, 1.0}, 0.2), DomainError);
    CHECK_THROWS_AS(make_bump({0.05, 1.3}, 0.35), DomainError);
    CHECK_THROWS_AS(make_bump({0.0, -1.0}, 0.2), DomainError);
}

TEST_CASE("bump respects the quotient identification") {
    // the two vertical boundary lines are glued by the translation
    auto psi = make_bump({0.49, 1.4}, 0.3);
    HalfPlanePoint left{-0.51 + 1.0, 1.4};   // same point
    HalfPlanePoint wrapped{-0.51, 1.4};      // x = -0.51 ~ 0.49
    CHECK(psi(wrapped) == doctest::Approx(psi(left)).epsilon(1e-12));
    CHECK(psi(wrapped) > 0.9);
}
