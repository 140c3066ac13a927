#include "llw/scalar.hpp"

#include <cctype>
#include <sstream>

namespace llw {

Scalar::Scalar(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

Scalar::Scalar(long num, long den) : value_(num, den) { value_.canonicalize(); }

Scalar Scalar::infinity() {
  Scalar s;
  s.infinite_ = true;
  return s;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
  if (infinite_) return "inf";
  return value_.get_str();
}

std::optional<Scalar> Scalar::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "inf" || text == "\xE2\x88\x9E") return infinity();
  const auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den))) return std::nullopt;
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    d = mpz_class(std::string(den), 10);
    if (d == 0) return std::nullopt;
  }
  Rational q(n, d);
  return Scalar(std::move(q));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar add(const Scalar& a, const Scalar& b) {
  if (a.is_infinite() || b.is_infinite()) return Scalar::infinity();
  return Scalar(Rational(a.value() + b.value()));
}

Scalar multiply(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.is_infinite() || b.is_infinite()) return Scalar::infinity();
  return Scalar(Rational(a.value() * b.value()));
}

std::string to_string(const ScalarFamily& family) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) os << ", ";
    os << '(' << family[i].first << " x" << family[i].second.to_string() << ')';
  }
  os << ']';
  return os.str();
}

}  // namespace llw
