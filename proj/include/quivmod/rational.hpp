#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace quivmod {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using i64 = std::int64_t;

// Dimension vectors and other small integer tuples.
using I64Vec = std::vector<i64>;

// Library-wide error codes. The CLI maps MalformedInput to exit 1,
// BudgetExceeded to exit 3, and every other code to exit 2.
enum class Errc {
  NonPositiveLeading,
  ZeroInput,
  DimensionMismatch,
  ShapeMismatch,
  SurfaceMismatch,
  WrongSurface,
  NotALineBundle,
  NonPositiveRank,
  NegativeRank,
  NoTwistFound,
  OutOfRegion,
  UnsupportedMode,
  BudgetExceeded,
  NotOrthogonal,
  NotASheaf,
  ZeroVector,
  FieldTooSmall,
  MalformedInput,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what_arg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what_arg), code_(c) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sgn(const Int& n) { return n.sign(); }
inline int sgn(const Rat& r) { return r.sign(); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// Exact conversion; throws Errc::Internal if the value does not fit.
i64 to_i64(const Int& n);
inline i64 to_i64(const Rat& r) {
  if (!is_integer(r)) fail(Errc::Internal, "expected an integer, got " + r.str());
  return to_i64(num(r));
}

// Parses "p/q" or "p" with optional sign and surrounding whitespace.
Rat rat_parse(const std::string& s);
Int int_parse(const std::string& s);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
std::string rat_str(const Rat& r);
inline std::string int_str(const Int& n) { return n.str(); }

// Floor of a/b; b must be nonzero.
Int floor_div(const Int& a, const Int& b);

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

}  // namespace quivmod
