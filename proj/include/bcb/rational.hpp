// Exact rational arithmetic used by the symbolic layer (GMP mpq under the hood).
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace bcb {

using Rat = mpq_class;

// Canonicalized rational from an integer fraction. mpq_class does not reduce
// num/den constructors on its own.
inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Accepts "3", "-7/2", "0.25", "1e-3" style decimals. Returns nullopt on
// malformed input instead of throwing so parsers can report position.
std::optional<Rat> parse_rational(std::string_view text);

// "p/q" when q != 1, plain integer otherwise.
std::string rat_to_string(const Rat& q);

}  // namespace bcb
