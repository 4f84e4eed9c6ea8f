#include <array>
#include <istream>
#include <ostream>

#include "beattysum/errors.hpp"
#include "beattysum/multfun.hpp"

namespace bsum::multfun {

namespace {

constexpr std::array<char, 4> kMagic{'B', 'S', 'T', 'B'};

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::istream& in, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        int c = in.get();
        if (c == std::char_traits<char>::eof()) throw ParseError("truncated sieve table");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
}

SieveMethod default_method(FunctionKind kind) {
    switch (kind) {
        case FunctionKind::unit: return SieveMethod::constant;
        case FunctionKind::two_squares: return SieveMethod::mark_sum_of_squares;
        case FunctionKind::k_free: return SieveMethod::power_crossout;
        case FunctionKind::moebius_abs: return SieveMethod::moebius_sieve;
        default: return SieveMethod::divisor_sieve;
    }
}

}  // namespace

void SieveTable::save(std::ostream& out) const {
    out.write(kMagic.data(), kMagic.size());
    put_le(out, static_cast<std::uint16_t>(fn_.kind), 2);
    put_le(out, fn_.k, 2);
    put_le(out, n_, 8);
    if (!bytes_.empty())
        out.write(reinterpret_cast<const char*>(bytes_.data()),
                  static_cast<std::streamsize>(bytes_.size()));
    for (std::uint64_t w : words_) put_le(out, w, 8);
    if (!out) throw Error("failed to write sieve table");
}

SieveTable SieveTable::load(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw ParseError("not a sieve table (bad magic)");
    const auto kind_raw = static_cast<std::uint16_t>(get_le(in, 2));
    const auto k = static_cast<unsigned>(get_le(in, 2));
    const std::uint64_t n = get_le(in, 8);
    if (kind_raw < 1 || kind_raw > 7) throw ParseError("unknown function kind in table header");
    ArithmeticFunction fn{static_cast<FunctionKind>(kind_raw), k};
    if (fn.kind == FunctionKind::k_free && k < 2) throw ParseError("k-free table with k < 2");
    if (n > kMaxIndicatorN) throw CapacityExceeded("table header N exceeds capacity");
    if (fn.indicator()) {
        std::vector<std::uint8_t> bytes(n);
        in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(n));
        if (!in) throw ParseError("truncated sieve table");
        return SieveTable(fn, default_method(fn.kind), std::move(bytes));
    }
    std::vector<std::uint64_t> words(n);
    for (auto& w : words) w = get_le(in, 8);
    return SieveTable(fn, default_method(fn.kind), std::move(words));
}

}  // namespace bsum::multfun
