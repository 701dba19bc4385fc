#include "dtmwb/ext_value.hpp"

#include <cctype>
#include <ostream>

namespace dtmwb {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_integer(std::string_view s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("not an exact rational: '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

ExtValue::ExtValue(Rational v) : value_(std::move(v)) { value_.canonicalize(); }

ExtValue::ExtValue(long num, long den) : value_(num, den) {
  if (den == 0) throw ParseError("zero denominator");
  value_.canonicalize();
}

ExtValue ExtValue::parse(std::string_view text) {
  std::string s = trim(text);
  if (s == "inf" || s == "+inf") return inf();
  if (s == "-inf") return neg_inf();
  return ExtValue(parse_rational(s));
}

int ExtValue::sign() const {
  switch (kind_) {
    case Kind::pos_inf: return 1;
    case Kind::neg_inf: return -1;
    case Kind::finite: break;
  }
  return sgn(value_);
}

const Rational& ExtValue::value() const {
  if (!is_finite()) throw InfiniteValue("value() on infinite ExtValue");
  return value_;
}

ExtValue ExtValue::operator-() const {
  switch (kind_) {
    case Kind::pos_inf: return neg_inf();
    case Kind::neg_inf: return inf();
    case Kind::finite: break;
  }
  return ExtValue(Rational(-value_));
}

ExtValue ExtValue::abs() const { return sign() < 0 ? -*this : *this; }

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
  using K = ExtValue::Kind;
  if (a.kind_ == K::finite && b.kind_ == K::finite) return ExtValue(Rational(a.value_ + b.value_));
  if ((a.kind_ == K::pos_inf && b.kind_ == K::neg_inf) ||
      (a.kind_ == K::neg_inf && b.kind_ == K::pos_inf)) {
    throw UndefinedSum("inf + (-inf) is undefined");
  }
  return a.kind_ == K::finite ? b : a;
}

ExtValue operator-(const ExtValue& a, const ExtValue& b) {
  if (!a.is_finite() && a.kind_ == b.kind_) {
    throw UndefinedSubtraction(a.str() + " - " + b.str() + " is undefined");
  }
  return a + (-b);
}

ExtValue operator*(const Rational& s, const ExtValue& a) {
  if (sgn(s) == 0) return ExtValue(0);
  if (a.is_finite()) return ExtValue(Rational(s * a.value_));
  return sgn(s) > 0 ? a : -a;
}

bool operator==(const ExtValue& a, const ExtValue& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
  auto rank = [](const ExtValue& v) {
    switch (v.kind_) {
      case ExtValue::Kind::neg_inf: return 0;
      case ExtValue::Kind::finite: return 1;
      case ExtValue::Kind::pos_inf: return 2;
    }
    return 1;
  };
  int ra = rank(a);
  int rb = rank(b);
  if (ra != rb || ra != 1) return ra <=> rb;
  int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

std::string ExtValue::str() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    case Kind::finite: break;
  }
  return to_string(value_);
}

ExtValue min(const ExtValue& a, const ExtValue& b) { return b < a ? b : a; }
ExtValue max(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExtValue& v) { return os << v.str(); }

}  // namespace dtmwb
