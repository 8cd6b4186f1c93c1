#include <doctest.h>

#include "hybridmem/config.hpp"
#include "hybridmem/errors.hpp"
#include "hybridmem/metrics.hpp"

using namespace hybridmem;

TEST_SUITE("config") {

TEST_CASE("empty config resolves to the documented defaults") {
    SimConfig c = parse_config_text("");
    CHECK(c.policy == PolicyKind::TwoLru);
    CHECK(c.device.dram.t_read_ns == 50.0);
    CHECK(c.device.dram.t_write_ns == 50.0);
    CHECK(c.device.dram.e_read_nj == 3.2);
    CHECK(c.device.dram.e_write_nj == 3.2);
    CHECK(c.device.dram.static_w_per_gb == 1.0);
    CHECK(c.device.nvm.t_read_ns == 100.0);
    CHECK(c.device.nvm.t_write_ns == 350.0);
    CHECK(c.device.nvm.e_read_nj == 6.4);
    CHECK(c.device.nvm.e_write_nj == 32.0);
    CHECK(c.device.nvm.static_w_per_gb == 0.1);
    CHECK(c.device.t_disk_ns == 5e6);
    CHECK(c.layout.page_size == 4096);
    CHECK(c.layout.mem_fraction == 0.75);
    CHECK(c.layout.dram_fraction == 0.10);
    CHECK(c.layout.page_factor == 64);
    CHECK_FALSE(c.layout.dram_pages);
    CHECK_FALSE(c.layout.nvm_pages);
    CHECK(c.params.readperc == 0.2);
    CHECK(c.params.writeperc == 0.4);
    CHECK(c.params.read_threshold == 4);
    CHECK(c.params.write_threshold == 8);
    CHECK_FALSE(c.requests_per_second);
    CHECK(c.warmup_frac == 0.0);
}

TEST_CASE("keys, comments and thresholds parse") {
    SimConfig c = parse_config_text(
        "# hybrid run\n"
        "policy = clock_dwf\n"
        "nvm.t_write_ns = 500   # slower part\n"
        "read_threshold = inf\n"
        "write_threshold = 2\n"
        "dram_pages = 16\n"
        "requests_per_second = 1e6\n");
    CHECK(c.policy == PolicyKind::ClockDwf);
    CHECK(c.device.nvm.t_write_ns == 500.0);
    CHECK(c.params.read_threshold == kNeverMigrate);
    CHECK(c.params.write_threshold == 2);
    CHECK(c.layout.dram_pages == 16u);
    CHECK(c.requests_per_second == 1e6);
}

TEST_CASE("invalid settings name the offending key") {
    auto key_of = [](const char* text) -> std::string {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return "<accepted>";
    };
    CHECK(key_of("dram_fraction = 0\n") == "dram_fraction");
    CHECK(key_of("dram_fraction = 1\n") == "dram_fraction");
    CHECK(key_of("mem_fraction = 1.5\n") == "mem_fraction");
    CHECK(key_of("page_factor = 0\n") == "page_factor");
    CHECK(key_of("dram.t_read_ns = 0\n") == "dram.t_read_ns");
    CHECK(key_of("nvm.e_write_nj = -1\n") == "nvm.e_write_nj");
    CHECK(key_of("disk.t_access_ns = 10\n") == "disk.t_access_ns");
    CHECK(key_of("readperc = 0.5\nwriteperc = 0.4\n") == "writeperc");
    CHECK(key_of("read_threshold = 0\n") == "read_threshold");
    CHECK(key_of("warmup_frac = 1\n") == "warmup_frac");
    CHECK(key_of("policy = fifo\n") == "policy");
    CHECK(key_of("dram_pagez = 3\n") == "dram_pagez");
    CHECK(key_of("page_size = four\n") == "page_size");
    CHECK(key_of("mem_fraction = 1\n") == "<accepted>");
    CHECK_THROWS_AS(parse_config_text("policy two_lru\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("page_factor = 2\npage_factor = 3\n"), ConfigError);
}

TEST_CASE("page_factor 256 scales migration costs by exactly four") {
    SimConfig base = parse_config_text("");
    SimConfig big = parse_config_text("page_factor = 256\n");
    EventCounters c;
    c.n_total = 10;
    c.n_hit_dram_read = 3;
    c.n_hit_nvm_write = 2;
    c.n_miss = 5;
    c.n_fault_to_dram = 4;
    c.n_fault_to_nvm = 1;
    c.n_mig_nvm_to_dram = 2;
    c.n_mig_dram_to_nvm = 3;
    auto a64 = compute_amat(c, base.device, base.layout.page_factor);
    auto a256 = compute_amat(c, big.device, big.layout.page_factor);
    CHECK(a256.mig_to_dram == doctest::Approx(4 * a64.mig_to_dram).epsilon(1e-12));
    CHECK(a256.mig_to_nvm == doctest::Approx(4 * a64.mig_to_nvm).epsilon(1e-12));
    CHECK(a256.hit_dram == a64.hit_dram);
    CHECK(a256.miss == a64.miss);
    auto e64 = compute_appr_dynamic(c, base.device, base.layout.page_factor);
    auto e256 = compute_appr_dynamic(c, big.device, big.layout.page_factor);
    CHECK(e256.mig_to_dram == doctest::Approx(4 * e64.mig_to_dram).epsilon(1e-12));
    CHECK(e256.mig_to_nvm == doctest::Approx(4 * e64.mig_to_nvm).epsilon(1e-12));
    CHECK(e256.fault_to_dram == doctest::Approx(4 * e64.fault_to_dram).epsilon(1e-12));
    CHECK(e256.hit_nvm == e64.hit_nvm);
}

TEST_CASE("derive_capacities follows the sizing rules") {
    LayoutConfig d;
    CHECK(derive_capacities(1000, d) == Capacities{75, 675});
    CHECK(derive_capacities(1, d) == Capacities{1, 1});
    CHECK(derive_capacities(3, d) == Capacities{1, 2});

    LayoutConfig over;
    over.dram_pages = 100;
    CHECK(derive_capacities(1000, over) == Capacities{100, 650});
    over.nvm_pages = 10;
    CHECK(derive_capacities(1000, over) == Capacities{100, 10});

    LayoutConfig too_big;
    too_big.dram_pages = 750;
    CHECK_THROWS_AS(derive_capacities(1000, too_big), ConfigError);
    CHECK_THROWS_AS(derive_capacities(0, d), ConfigError);
}

TEST_CASE("derived tiers always add up to the derived total") {
    for (double mf : {0.1, 0.33, 0.75, 1.0}) {
        for (double df : {0.01, 0.1, 0.37, 0.5, 0.9}) {
            LayoutConfig l;
            l.mem_fraction = mf;
            l.dram_fraction = df;
            for (std::uint64_t n = 1; n < 3000; n += 7) {
                std::uint64_t total = std::max<std::uint64_t>(2, ceil_fraction(mf, n));
                Capacities caps;
                try {
                    caps = derive_capacities(n, l);
                } catch (const ConfigError&) {
                    // only possible when dram would swallow the whole total
                    CHECK(std::max<std::uint64_t>(1, ceil_fraction(df, total)) >= total);
                    continue;
                }
                CHECK(caps.total() == total);
                CHECK(caps.dram_pages >= 1);
                CHECK(caps.nvm_pages >= 1);
            }
        }
    }
}

TEST_CASE("ceil_fraction snaps products that are integers up to rounding") {
    CHECK(ceil_fraction(0.1, 750) == 75);
    CHECK(ceil_fraction(0.2, 10) == 2);
    CHECK(ceil_fraction(0.4, 10) == 4);
    CHECK(ceil_fraction(0.2, 11) == 3);
    CHECK(ceil_fraction(0.75, 1) == 1);
    CHECK(ceil_fraction(0.5, 0) == 0);
}

TEST_CASE("serialized config reloads identically") {
    SimConfig c;
    c.policy = PolicyKind::ClockDwf;
    c.device.nvm.t_write_ns = 333.3333333333333;
    c.device.dram.e_read_nj = 0.1 + 0.2;
    c.layout.page_factor = 128;
    c.layout.nvm_pages = 99;
    c.params.read_threshold = kNeverMigrate;
    c.params.readperc = 1.0 / 3.0;
    c.requests_per_second = 12345.678;
    c.warmup_frac = 0.25;
    SimConfig back = parse_config_text(to_config_text(c));
    CHECK(back == c);
    CHECK(parse_config_text(to_config_text(SimConfig{})) == SimConfig{});
}

TEST_CASE("policy names round trip") {
    for (auto k : {PolicyKind::DramLru, PolicyKind::NvmLru, PolicyKind::ClockDwf, PolicyKind::TwoLru})
        CHECK(parse_policy_name(policy_name(k)) == k);
    CHECK_THROWS_AS(parse_policy_name("lru"), ConfigError);
}

}
