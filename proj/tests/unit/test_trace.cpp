#include <doctest.h>

#include <sstream>

#include "hybridmem/errors.hpp"
#include "hybridmem/synthetic.hpp"
#include "hybridmem/trace.hpp"

using namespace hybridmem;

TEST_SUITE("trace") {

TEST_CASE("parse_trace_line decodes ops and addresses") {
    auto a = parse_trace_line("R 0x1000", 4096);
    REQUIRE(a);
    CHECK(a->op == Op::Read);
    CHECK(a->address == 4096);
    CHECK(a->page == 1);

    auto w = parse_trace_line("W 0", 4096);
    REQUIRE(w);
    CHECK(w->op == Op::Write);
    CHECK(w->address == 0);
    CHECK(w->page == 0);

    auto spaced = parse_trace_line("  W\t12345  ", 4096);
    REQUIRE(spaced);
    CHECK(spaced->op == Op::Write);
    CHECK(spaced->page == 3);

    CHECK(parse_trace_line("R 0XfFfF", 4096)->address == 0xffff);
    CHECK(parse_trace_line("R 0xffffffffffffffff", 4096)->address == UINT64_MAX);
}

TEST_CASE("comments and blank lines are skipped") {
    CHECK_FALSE(parse_trace_line("", 4096));
    CHECK_FALSE(parse_trace_line("   ", 4096));
    CHECK_FALSE(parse_trace_line("# a comment", 4096));
    CHECK_FALSE(parse_trace_line("  # indented", 4096));
}

TEST_CASE("malformed lines raise parse errors with their line number") {
    try {
        parse_trace_line("X 0x10", 4096, 7);
        FAIL("expected a parse error");
    } catch (const TraceParseError& e) {
        CHECK(e.line() == 7);
        CHECK(std::string(e.what()).find("unknown op") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_trace_line("R", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("R 0xzz", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("R 12abc", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("R 0x1 0x2", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("R 0x10000000000000000", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("R 18446744073709551616", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("RW 0", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("r 0", 4096), TraceParseError);
    CHECK_THROWS_AS(parse_trace_line("R 0x10 # note", 4096), TraceParseError);
}

TEST_CASE("page_of bounds the address and is monotone") {
    for (std::uint64_t a : std::initializer_list<std::uint64_t>{0, 1, 4095, 4096, 123456789, UINT64_MAX}) {
        auto p = page_of(a, 4096);
        CHECK(p * 4096 <= a);
        CHECK(a - p * 4096 < 4096);
    }
    std::uint64_t prev = 0;
    for (std::uint64_t a = 0; a < 100000; a += 97) {
        CHECK(page_of(a, 4096) >= prev);
        prev = page_of(a, 4096);
    }
}

TEST_CASE("stream_trace yields accesses in order with counts") {
    std::istringstream three("R 0x0\nW 0x2000\nR 0x1000\n");
    auto acc = read_trace(three, 4096);
    REQUIRE(acc.size() == 3);
    CHECK(acc[0].page == 0);
    CHECK(acc[1].page == 2);
    CHECK(acc[1].op == Op::Write);
    CHECK(acc[2].page == 1);

    std::istringstream repeat("R 0x0\nR 0x1000\nR 0x0\n");
    auto s = stream_trace(repeat, 4096, [](const MemoryAccess&) {});
    CHECK(s.accesses == 3);
    CHECK(s.distinct_pages == 2);

    std::istringstream empty("");
    auto e = stream_trace(empty, 4096, [](const MemoryAccess&) { FAIL("no access expected"); });
    CHECK(e.accesses == 0);
    CHECK(e.distinct_pages == 0);
}

TEST_CASE("stream_trace reports the failing line") {
    std::istringstream in("R 0x0\n# comment\n\nQ 5\n");
    try {
        read_trace(in, 4096);
        FAIL("expected a parse error");
    } catch (const TraceParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("generate_synthetic respects degenerate ratios") {
    SyntheticSpec spec;
    spec.n_accesses = 100;
    spec.n_pages = 10;
    spec.read_ratio = 1.0;
    auto reads = generate_synthetic(spec);
    REQUIRE(reads.size() == 100);
    for (const auto& a : reads)
        CHECK(a.op == Op::Read);

    spec.read_ratio = 0.0;
    for (const auto& a : generate_synthetic(spec))
        CHECK(a.op == Op::Write);
}

TEST_CASE("hot_fraction 1 spreads accesses over every page") {
    SyntheticSpec spec;
    spec.n_accesses = 20000;
    spec.n_pages = 16;
    spec.seed = 3;
    std::vector<int> seen(16, 0);
    for (const auto& a : generate_synthetic(spec)) {
        REQUIRE(a.page < 16);
        ++seen[a.page];
    }
    for (int c : seen)
        CHECK(c > 20000 / 16 / 2);
}

TEST_CASE("hot set receives its share of accesses") {
    SyntheticSpec spec;
    spec.n_accesses = 100000;
    spec.n_pages = 1000;
    spec.hot_fraction = 0.1;
    spec.hot_access_fraction = 0.9;
    spec.seed = 11;
    CHECK(spec.hot_pages() == 100);
    std::uint64_t hot = 0;
    for (const auto& a : generate_synthetic(spec)) {
        REQUIRE(a.page < 1000);
        hot += a.page < 100;
    }
    CHECK(static_cast<double>(hot) / 100000.0 == doctest::Approx(0.9).epsilon(0.01));
}

TEST_CASE("read fraction of a million accesses lands near read_ratio") {
    SyntheticSpec spec;
    spec.n_accesses = 1000000;
    spec.n_pages = 5000;
    spec.read_ratio = 0.7;
    spec.seed = 42;
    std::uint64_t reads = 0;
    SyntheticTrace gen(spec);
    while (!gen.done())
        reads += gen.next().op == Op::Read;
    const double frac = static_cast<double>(reads) / 1e6;
    CHECK(frac >= 0.695);
    CHECK(frac <= 0.705);
}

TEST_CASE("synthetic generation is deterministic per seed") {
    SyntheticSpec spec;
    spec.n_accesses = 5000;
    spec.n_pages = 300;
    spec.hot_fraction = 0.2;
    spec.hot_access_fraction = 0.8;
    spec.read_ratio = 0.6;
    spec.seed = 9;
    CHECK(generate_synthetic(spec) == generate_synthetic(spec));
    auto other = spec;
    other.seed = 10;
    CHECK(generate_synthetic(spec) != generate_synthetic(other));
}

TEST_CASE("serializing and re-parsing a trace is lossless") {
    SyntheticSpec spec;
    spec.n_accesses = 3000;
    spec.n_pages = 200;
    spec.read_ratio = 0.4;
    spec.seed = 5;
    auto trace = generate_synthetic(spec);
    std::ostringstream out;
    write_trace(out, trace);
    std::istringstream in(out.str());
    CHECK(read_trace(in, spec.page_size) == trace);
}

TEST_CASE("synthetic spec validation and text round trip") {
    SyntheticSpec bad;
    bad.n_pages = 10;
    CHECK_THROWS_AS(generate_synthetic(bad), ConfigError);
    bad.n_accesses = 10;
    bad.n_pages = 0;
    CHECK_THROWS_AS(generate_synthetic(bad), ConfigError);
    bad.n_pages = 10;
    bad.read_ratio = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    SyntheticSpec spec{1000, 64, 0.25, 0.75, 0.3, 77, 4096};
    std::istringstream in(to_spec_text(spec));
    CHECK(parse_synthetic_spec(in) == spec);

    std::istringstream unknown("n_accesses = 1\nn_pages = 1\nbogus = 2\n");
    CHECK_THROWS_AS(parse_synthetic_spec(unknown), ConfigError);
}

}
