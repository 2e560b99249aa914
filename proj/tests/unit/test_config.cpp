#include <doctest.h>

#include "resdyn/config.hpp"

using namespace resdyn;

TEST_CASE("key-value config parses, overrides and reports line numbers") {
    const auto cfg = KeyValueConfig::from_string(
        "# comment\n"
        "plant.mass = 1.4\n"
        "run.seed = 7\n"
        "traj.kind = circle  # inline comment\n"
        "flags.rt = true\n"
        "list.vals = 1, 2.5, -3\n",
        "test.cfg");
    CHECK(cfg.get_double("plant.mass") == 1.4);
    CHECK(cfg.get_int("run.seed") == 7);
    CHECK(cfg.get_string("traj.kind") == "circle");
    CHECK(cfg.get_bool("flags.rt", false));
    CHECK(cfg.get_doubles("list.vals", {}) == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(cfg.get_double("missing.key", 9.0) == 9.0);

    auto copy = cfg;
    copy.set("plant.mass", "2.0");
    CHECK(copy.get_double("plant.mass") == 2.0);
}

TEST_CASE("config errors carry the offending line") {
    CHECK_THROWS_WITH_AS(KeyValueConfig::from_string("novalue\n", "bad.cfg"),
                         doctest::Contains("bad.cfg:1"), ConfigError);
    const auto cfg = KeyValueConfig::from_string("plant.mass = abc\n", "bad.cfg");
    CHECK_THROWS_WITH_AS(cfg.get_double("plant.mass"), doctest::Contains("bad.cfg:1"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("nope"), ConfigError);
}
