#include "dtc/cost.hpp"

#include <cctype>

namespace dtc {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Cost Cost::fraction(unsigned long num, unsigned long den) {
  if (den == 0) throw std::invalid_argument("cost denominator is zero");
  mpq_class q(num, den);
  q.canonicalize();
  return Cost(q);
}

Cost Cost::parse(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("bad cost literal: '" + text + "'"); };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    mpq_class q;
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw bad();
    q = mpq_class(n) / mpq_class(d);
    q.canonicalize();
    return Cost(q);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    if (!whole.empty() && !all_digits(whole)) throw bad();
    if (!frac.empty() && !all_digits(frac)) throw bad();
    mpz_class scaled((whole + frac).empty() ? "0" : whole + frac, 10);
    mpz_class den(1);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpq_class q = mpq_class(scaled) / mpq_class(den);
    q.canonicalize();
    return Cost(q);
  }
  if (!all_digits(text)) throw bad();
  return Cost(mpq_class(mpz_class(text, 10)));
}

const mpq_class& Cost::value() const {
  if (inf_) throw std::logic_error("value() on infinite cost");
  return v_;
}

Cost Cost::operator+(const Cost& o) const {
  if (inf_ || o.inf_) return infinite();
  return Cost(mpq_class(v_ + o.v_));
}

Cost Cost::operator-(const Cost& o) const {
  if (inf_) return infinite();
  if (o.inf_) throw std::logic_error("subtracting infinite cost");
  mpq_class r = v_ - o.v_;
  if (r < 0) throw std::logic_error("cost subtraction went negative");
  return Cost(std::move(r));
}

Cost Cost::operator*(const Cost& o) const {
  if (inf_ || o.inf_) {
    if (is_zero() || o.is_zero()) throw std::logic_error("0 * infinite cost");
    return infinite();
  }
  return Cost(mpq_class(v_ * o.v_));
}

Cost Cost::operator/(const Cost& o) const {
  if (o.inf_ || !(o.v_ > 0)) throw std::logic_error("division by non-positive cost");
  if (inf_) return infinite();
  return Cost(mpq_class(v_ / o.v_));
}

Cost Cost::div_by(unsigned long n) const {
  if (n == 0) throw std::logic_error("division by zero");
  if (inf_) return infinite();
  return Cost(mpq_class(v_ / mpq_class(n)));
}

bool Cost::operator==(const Cost& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return v_ == o.v_;
}

bool Cost::operator<(const Cost& o) const {
  if (inf_) return false;
  if (o.inf_) return true;
  return v_ < o.v_;
}

std::string Cost::str() const {
  if (inf_) return "inf";
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Cost harmonic(unsigned long g) {
  Cost h;
  for (unsigned long i = 1; i <= g; ++i) h += Cost::fraction(1, i);
  return h;
}

}  // namespace dtc
