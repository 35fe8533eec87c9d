#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace osa {

// Exact rational arithmetic backs every closed-form expression and every
// solver objective in this library; doubles appear only at the output
// boundary and inside Monte-Carlo estimates.
using Rat = mpq_class;

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Parses a decimal or scientific literal ("0.25", "1e-3", "-4.5") into an
// exact rational. Throws std::invalid_argument on malformed input.
Rat rat_from_decimal(std::string_view text);

// Converts a double through its shortest round-trip decimal representation,
// so 0.1 becomes 1/10 rather than the dyadic value of the nearest double.
// Config literals keep the denominators they were written with, which is
// what makes slot/quantum divisibility checks exact.
Rat rat_from_decimal(double value);

double to_double(const Rat& q);

// mpq_class(num, den) does not reduce to lowest terms; this does.
inline Rat make_rat(i64 num, i64 den) {
    Rat q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

// floor(q) for a non-negative rational that fits in i64.
i64 floor_to_i64(const Rat& q);

// ceil(q) for a non-negative rational that fits in i64.
i64 ceil_to_i64(const Rat& q);

// Shortest decimal form that round-trips the double value; used for CSV.
std::string format_double(double v);

inline std::string format_rat(const Rat& q) { return format_double(to_double(q)); }

}  // namespace osa
