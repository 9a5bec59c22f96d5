#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "cdp/core/random.hpp"

using cdp::RandomStream;

TEST_SUITE("random") {

TEST_CASE("same (seed, cursor) gives the same value, on any instance") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.nextU64() == b.nextU64());

    RandomStream c(42, 57);
    RandomStream d(42);
    d.setCursor(57);
    CHECK(c.nextU64() == d.nextU64());
    CHECK(c.cursor() == 58);
}

TEST_CASE("nextUnit lies in [0,1) and replays after cursor reset") {
    RandomStream s(7);
    std::vector<double> first;
    for (int i = 0; i < 1000; ++i) {
        double u = s.nextUnit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        first.push_back(u);
    }
    s.setCursor(0);
    for (int i = 0; i < 1000; ++i) CHECK(s.nextUnit() == first[i]);
}

TEST_CASE("empirical mean over 1e6 draws is centered") {
    RandomStream s(20240901);
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += s.nextUnit();
    const double mean = sum / n;
    CHECK(mean > 0.498);
    CHECK(mean < 0.502);
}

TEST_CASE("child streams are uncorrelated with the parent continuation") {
    RandomStream parent(99);
    parent.nextU64();  // move the parent off its origin
    RandomStream childStream = parent.child(3);

    const int n = 10'000;
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = parent.nextUnit();
        ys[i] = childStream.nextUnit();
    }
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double cov = 0, vx = 0, vy = 0;
    for (int i = 0; i < n; ++i) {
        cov += (xs[i] - mx) * (ys[i] - my);
        vx += (xs[i] - mx) * (xs[i] - mx);
        vy += (ys[i] - my) * (ys[i] - my);
    }
    const double corr = cov / std::sqrt(vx * vy);
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("children with distinct keys differ; same key matches") {
    RandomStream parent(5);
    RandomStream a = parent.child(1);
    RandomStream b = parent.child(2);
    RandomStream c = parent.child(1);
    CHECK(a.nextU64() != b.nextU64());
    CHECK(RandomStream(parent.child(1)).nextU64() == c.nextU64());
    // child derivation does not advance the parent
    RandomStream p2(5);
    CHECK(parent.nextU64() == p2.nextU64());
}

TEST_CASE("nextBelow covers the range uniformly enough") {
    RandomStream s(11);
    std::vector<int> counts(5, 0);
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        auto v = s.nextBelow(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts) {
        CHECK(c > n / 5 - 1500);
        CHECK(c < n / 5 + 1500);
    }
}

}  // TEST_SUITE
