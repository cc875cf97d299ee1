#include "quivmod/rational.hpp"

#include <cctype>
#include <limits>

namespace quivmod {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPositiveLeading: return "NonPositiveLeading";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::SurfaceMismatch: return "SurfaceMismatch";
    case Errc::WrongSurface: return "WrongSurface";
    case Errc::NotALineBundle: return "NotALineBundle";
    case Errc::NonPositiveRank: return "NonPositiveRank";
    case Errc::NegativeRank: return "NegativeRank";
    case Errc::NoTwistFound: return "NoTwistFound";
    case Errc::OutOfRegion: return "OutOfRegion";
    case Errc::UnsupportedMode: return "UnsupportedMode";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::NotASheaf: return "NotASheaf";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

i64 to_i64(const Int& n) {
  static const Int lo = std::numeric_limits<i64>::min();
  static const Int hi = std::numeric_limits<i64>::max();
  if (n < lo || n > hi) fail(Errc::Internal, "integer out of 64-bit range: " + n.str());
  return n.convert_to<i64>();
}

namespace {

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Int int_parse(const std::string& s) {
  std::string t = trimmed(s);
  if (!is_integer_literal(t)) fail(Errc::MalformedInput, "not an integer literal: '" + s + "'");
  return Int(t);
}

Rat rat_parse(const std::string& s) {
  std::string t = trimmed(s);
  size_t slash = t.find('/');
  if (slash == std::string::npos) return Rat(int_parse(t));
  Int p = int_parse(t.substr(0, slash));
  Int q = int_parse(t.substr(slash + 1));
  if (q == 0) fail(Errc::MalformedInput, "zero denominator in '" + s + "'");
  return Rat(p, q);
}

std::string rat_str(const Rat& r) {
  Int d = den(r);
  if (d == 1) return num(r).str();
  return num(r).str() + "/" + d.str();
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) fail(Errc::ZeroInput, "floor_div by zero");
  Int q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace quivmod
