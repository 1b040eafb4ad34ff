#include "siegel/table_cache.hpp"

#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "siegel/common.hpp"
#include "siegel/sieve.hpp"

namespace siegel {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'P', 'T', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 8))
        throw InvalidArgument("prime power cache: truncated file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

void save_table(const std::filesystem::path& path, const PrimePowerTable& table) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw InvalidArgument("prime power cache: cannot open " + path.string() + " for writing");
    os.write(kMagic.data(), kMagic.size());
    put_u64(os, table.limit());
    put_u64(os, table.size());
    const auto entries = table.entries();
    const auto cumulative = table.cumulative();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        put_u64(os, entries[i].value);
        put_u64(os, std::bit_cast<std::uint64_t>(cumulative[i]));
    }
    if (!os) throw InvalidArgument("prime power cache: write failed for " + path.string());
}

PrimePowerTable load_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("prime power cache: cannot open " + path.string());
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic)
        throw InvalidArgument("prime power cache: bad magic in " + path.string());
    const std::uint64_t limit = get_u64(is);
    const std::uint64_t count = get_u64(is);
    if (limit < 2 || limit > (std::uint64_t{1} << 32) || count > limit)
        throw InvalidArgument("prime power cache: implausible header");

    // Recover (p, alpha) from each value; anything that is not a prime power is rejected.
    const auto spf = sieve::smallest_prime_factors(static_cast<std::uint32_t>(limit));
    std::vector<PrimePower> entries;
    std::vector<double> cumulative;
    entries.reserve(count);
    cumulative.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t value = get_u64(is);
        const double cum = std::bit_cast<double>(get_u64(is));
        if (value < 2 || value > limit) throw InvalidArgument("prime power cache: value out of range");
        const std::uint64_t p = spf[value];
        std::uint64_t rest = value;
        int alpha = 0;
        while (rest % p == 0) {
            rest /= p;
            ++alpha;
        }
        if (rest != 1)
            throw InvalidArgument("prime power cache: " + std::to_string(value) + " is not a prime power");
        entries.push_back({p, alpha, value});
        cumulative.push_back(cum);
    }
    // Strictly increasing prime powers (checked below) plus the right count
    // means none is missing.
    std::uint64_t expected = 0;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t rest = n;
        while (rest % spf[n] == 0) rest /= spf[n];
        if (rest == 1) ++expected;
    }
    if (count != expected)
        throw InvalidArgument("prime power cache: " + std::to_string(count) + " entries, expected " +
                              std::to_string(expected));
    return PrimePowerTable::from_entries(limit, std::move(entries), std::move(cumulative));
}

std::optional<std::filesystem::path> default_cache_path(std::uint64_t limit) {
    const char* dir = std::getenv("SIEGEL_MARGIN_CACHE");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir) / ("ppt_" + std::to_string(limit) + ".bin");
}

PrimePowerTable load_or_build(std::uint64_t limit, const std::optional<std::filesystem::path>& path) {
    if (path && std::filesystem::exists(*path)) {
        PrimePowerTable t = load_table(*path);
        if (t.limit() >= limit) return t;
    }
    PrimePowerTable t = PrimePowerTable::build(limit);
    if (path) {
        std::error_code ec;
        if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path(), ec);
        save_table(*path, t);
    }
    return t;
}

}  // namespace siegel
