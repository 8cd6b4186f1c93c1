#include "hybridmem/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <string_view>

#include "hybridmem/config.hpp"
#include "hybridmem/errors.hpp"
#include "kv_file.hpp"

namespace hybridmem {

std::uint64_t SyntheticSpec::hot_pages() const {
    return std::max<std::uint64_t>(1, ceil_fraction(hot_fraction, n_pages));
}

void SyntheticSpec::validate() const {
    if (n_accesses == 0)
        throw ConfigError("n_accesses", "must be positive");
    if (n_pages == 0)
        throw ConfigError("n_pages", "must be positive");
    if (!(hot_fraction > 0 && hot_fraction <= 1))
        throw ConfigError("hot_fraction", "must be in (0, 1]");
    if (!(hot_access_fraction > 0 && hot_access_fraction <= 1))
        throw ConfigError("hot_access_fraction", "must be in (0, 1]");
    if (!(read_ratio >= 0 && read_ratio <= 1))
        throw ConfigError("read_ratio", "must be in [0, 1]");
    if (page_size == 0)
        throw ConfigError("page_size", "must be positive");
}

SyntheticSpec parse_synthetic_spec(std::istream& in) {
    SyntheticSpec spec;
    for (const auto& kv : detail::read_key_values(in)) {
        const auto& k = kv.key;
        if (k == "n_accesses")
            spec.n_accesses = detail::parse_count(k, kv.value);
        else if (k == "n_pages")
            spec.n_pages = detail::parse_count(k, kv.value);
        else if (k == "hot_fraction")
            spec.hot_fraction = detail::parse_double(k, kv.value);
        else if (k == "hot_access_fraction")
            spec.hot_access_fraction = detail::parse_double(k, kv.value);
        else if (k == "read_ratio")
            spec.read_ratio = detail::parse_double(k, kv.value);
        else if (k == "seed")
            spec.seed = detail::parse_count(k, kv.value);
        else if (k == "page_size")
            spec.page_size = detail::parse_count(k, kv.value);
        else
            throw ConfigError(k, "unknown key");
    }
    spec.validate();
    return spec;
}

SyntheticSpec load_synthetic_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open trace spec '" + path + "'");
    return parse_synthetic_spec(in);
}

std::string to_spec_text(const SyntheticSpec& spec) {
    using detail::format_double;
    return "n_accesses = " + std::to_string(spec.n_accesses) + "\n" +
           "n_pages = " + std::to_string(spec.n_pages) + "\n" +
           "hot_fraction = " + format_double(spec.hot_fraction) + "\n" +
           "hot_access_fraction = " + format_double(spec.hot_access_fraction) + "\n" +
           "read_ratio = " + format_double(spec.read_ratio) + "\n" +
           "seed = " + std::to_string(spec.seed) + "\n" +
           "page_size = " + std::to_string(spec.page_size) + "\n";
}

SyntheticTrace::SyntheticTrace(const SyntheticSpec& spec) : spec_(spec), rng_(spec.seed) {
    spec_.validate();
    hot_pages_ = std::min(spec_.hot_pages(), spec_.n_pages);
}

// Raw engine output is mapped by hand rather than through std distributions,
// whose algorithms differ between standard libraries.
double SyntheticTrace::unit() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::uint64_t SyntheticTrace::below(std::uint64_t bound) {
    // Lemire's multiply-shift; the bias is below 2^-64 * bound.
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng_()) * bound) >> 64);
}

MemoryAccess SyntheticTrace::next() {
    const std::uint64_t cold_pages = spec_.n_pages - hot_pages_;
    PageId page;
    if (cold_pages == 0 || unit() < spec_.hot_access_fraction)
        page = below(hot_pages_);
    else
        page = hot_pages_ + below(cold_pages);

    std::uint64_t offset = spec_.page_size >= 8 ? 8 * below(spec_.page_size / 8) : 0;
    Op op = unit() < spec_.read_ratio ? Op::Read : Op::Write;
    ++emitted_;
    return MemoryAccess::make(op, page * spec_.page_size + offset, spec_.page_size);
}

std::vector<MemoryAccess> generate_synthetic(const SyntheticSpec& spec) {
    SyntheticTrace gen(spec);
    std::vector<MemoryAccess> out;
    out.reserve(spec.n_accesses);
    while (!gen.done())
        out.push_back(gen.next());
    return out;
}

}  // namespace hybridmem
