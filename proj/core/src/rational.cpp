#include "bkm/rational.hpp"

#include <cctype>
#include <limits>

#include "bkm/errors.hpp"

namespace bkm {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RejectNotBkm: return "RejectNotBkm";
    case ErrorKind::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorKind::NonIntegralDifference: return "NonIntegralDifference";
    case ErrorKind::CutoffTooLargeForBudget: return "CutoffTooLargeForBudget";
    case ErrorKind::NotFreeCase: return "NotFreeCase";
    case ErrorKind::CaseNotCovered: return "CaseNotCovered";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::HypothesisFails: return "HypothesisFails";
    case ErrorKind::PremiseFails: return "PremiseFails";
    case ErrorKind::UnboundedWithoutBox: return "UnboundedWithoutBox";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip(text);
  auto slash = s.find('/');
  std::string num = strip(s.substr(0, slash));
  std::string den = slash == std::string::npos ? "1" : strip(s.substr(slash + 1));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw BkmError(ErrorKind::InvalidInput, "not a rational: '" + std::string(text) + "'");
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw BkmError(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw BkmError(ErrorKind::InvalidInput, "expected integer, got " + to_string(q));
  const Integer& n = q.get_num();
  if (!n.fits_slong_p()) throw BkmError(ErrorKind::InvalidInput, "integer out of range: " + to_string(q));
  return n.get_si();
}

Integer lcm_of_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace bkm
