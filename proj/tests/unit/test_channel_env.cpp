#include "jamsim/channel_env.hpp"
#include "jamsim/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace jamsim;

TEST_CASE("draw_occupancy with sure events") {
    Rng rng(1);
    const ChannelModel zero({0, 0, 0, 0});
    const ChannelModel mixed({1, 0, 1});
    for (int i = 0; i < 1000; ++i) {
        for (auto b : draw_occupancy(zero, rng)) CHECK(b == 0);
        const auto occ = draw_occupancy(mixed, rng);
        CHECK(occ[0] == 1);
        CHECK(occ[1] == 0);
        CHECK(occ[2] == 1);
    }
}

TEST_CASE("draw_occupancy busy fraction matches p") {
    Rng rng(42);
    const ChannelModel m({0.5});
    const int draws = 100000;
    int busy = 0;
    for (int i = 0; i < draws; ++i) busy += draw_occupancy(m, rng)[0];
    CHECK(std::abs(busy / double(draws) - 0.5) <= 3.0 * std::sqrt(0.25 / draws));
}

TEST_CASE("availability floor") {
    CHECK_THROWS_AS(ChannelModel({1, 1}), ConfigError);
    CHECK(ChannelModel({0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}).availability_floor() == doctest::Approx(0.45));
    CHECK(ChannelModel({0, 0, 0}).availability_floor() == 1.0);
    CHECK(ChannelModel({0.5, 0.5}).availability_floor() == 0.5);
    CHECK_THROWS_AS(ChannelModel({1, 1}), ConfigError);
    CHECK_THROWS_AS(ChannelModel({1.2, 0.1}), ConfigError);
    CHECK_THROWS_AS(ChannelModel({}), ConfigError);
}

TEST_CASE("gap between sorted channels") {
    const ChannelModel m({0.5, 0.1, 0.3});
    CHECK(m.gap(1) == doctest::Approx(0.2));
    CHECK(m.gap(2) == doctest::Approx(0.2));
    CHECK_THROWS_AS(m.gap(3), ConfigError);
}

TEST_CASE("resolve_slot basic outcomes") {
    const BusyMask idle{0, 0, 0};
    const std::vector<ChannelIndex> none;

    SUBCASE("sole transmitter succeeds") {
        const std::vector<ChannelIndex> su{1};
        const auto out = resolve_slot(idle, su, none, true);
        CHECK(out.su[0].success);
        CHECK_FALSE(out.su[0].collision);
    }
    SUBCASE("two SUs collide without jammer flag") {
        const std::vector<ChannelIndex> su{2, 2};
        const auto out = resolve_slot(idle, su, none, true);
        for (const auto& o : out.su) {
            CHECK(o.collision);
            CHECK_FALSE(o.jammer_involved);
        }
    }
    SUBCASE("jammer flag only when distinguishable") {
        const std::vector<ChannelIndex> su{0};
        const std::vector<ChannelIndex> jam{0};
        const auto dist = resolve_slot(idle, su, jam, true);
        CHECK(dist.su[0].collision);
        CHECK(dist.su[0].jammer_involved);
        const auto plain = resolve_slot(idle, su, jam, false);
        CHECK(plain.su[0].collision);
        CHECK_FALSE(plain.su[0].jammer_involved);
    }
    SUBCASE("busy channel blocks both sides") {
        const BusyMask busy{1, 0, 0};
        const std::vector<ChannelIndex> su{0, 1};
        const std::vector<ChannelIndex> jam{0};
        const auto out = resolve_slot(busy, su, jam, true);
        CHECK(out.su[0].busy);
        CHECK_FALSE(out.su[0].transmitted);
        CHECK_FALSE(out.su[0].collision);
        CHECK(out.su[1].success);
    }
    SUBCASE("out of range index") {
        const std::vector<ChannelIndex> bad{3};
        CHECK_THROWS_AS(resolve_slot(idle, bad, none, false), ConfigError);
        const std::vector<ChannelIndex> ok{0};
        CHECK_THROWS_AS(resolve_slot(idle, ok, bad, false), ConfigError);
    }
}

TEST_CASE("resolve_slot invariants over random slots") {
    Rng rng(7);
    const int k = 5;
    const ChannelModel m({0.1, 0.3, 0.5, 0.7, 0.2});
    for (int trial = 0; trial < 20000; ++trial) {
        const auto mask = draw_occupancy(m, rng);
        std::vector<ChannelIndex> su(4), jam(2);
        for (auto& c : su) c = uniform_index(rng, k);
        for (auto& c : jam) c = uniform_index(rng, k);
        const bool dist = trial % 2 == 0;
        const auto a = resolve_slot(mask, su, jam, dist);
        const auto b = resolve_slot(mask, su, jam, dist);
        for (std::size_t i = 0; i < su.size(); ++i) {
            const auto& o = a.su[i];
            CHECK(o.channel == su[i]);
            if (o.success) CHECK((o.transmitted && !o.busy && !o.collision));
            if (o.busy) CHECK_FALSE(o.transmitted);
            if (o.jammer_involved) CHECK(o.collision);
            CHECK_FALSE((o.busy && o.success));
            CHECK_FALSE((o.collision && o.success));
            if (!dist) CHECK_FALSE(o.jammer_involved);
            CHECK(o.success == b.su[i].success);
            CHECK(o.collision == b.su[i].collision);
        }
    }
}
