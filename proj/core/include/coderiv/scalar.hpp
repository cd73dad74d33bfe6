#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace coderiv {

/// Exact rational scalar. gmpxx keeps results of arithmetic in canonical
/// (reduced, positive denominator) form.
using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

/// Parses "3", "-7/4", "0.125", "1e-3", "2.5E+2" into an exact rational.
/// Throws Error(SchemaError) on malformed text or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// "num/den", or "num" when the denominator is 1.
std::string format_scalar(const Scalar& s);

/// Shortest round-trip decimal for a double.
std::string format_double(double v);

/// Exact conversion of a finite double (every binary64 is a dyadic rational).
Scalar from_double(double v);

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i);
Vec from_ints(std::initializer_list<long> values);
std::vector<double> to_doubles(std::span<const Scalar> v);
Vec from_doubles(std::span<const double> v);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
bool is_zero(std::span<const Scalar> v);
Vec add(std::span<const Scalar> a, std::span<const Scalar> b);
Vec sub(std::span<const Scalar> a, std::span<const Scalar> b);
Vec scale(const Scalar& s, std::span<const Scalar> v);
Vec neg(std::span<const Scalar> v);
Vec concat(std::span<const Scalar> a, std::span<const Scalar> b);

/// Positive rescaling to a primitive integer vector (gcd of entries 1).
/// The zero vector is returned unchanged.
Vec primitive(std::span<const Scalar> v);

/// Like primitive(), but additionally flips sign so the first nonzero entry
/// is positive. Used for directions whose sign carries no meaning.
Vec primitive_unsigned(std::span<const Scalar> v);

std::string format_vec(std::span<const Scalar> v);

}  // namespace coderiv
