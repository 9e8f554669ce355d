#include "jacstab/graded_series.hpp"

#include <algorithm>
#include <sstream>

#include "jacstab/error.hpp"

namespace jacstab {

namespace {

void trim(GradedAtomPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void collect_partitions(int remaining, int largest, std::vector<int>& mult, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(mult);
    return;
  }
  for (int s = std::min(remaining, largest); s >= 1; --s) {
    ++mult[static_cast<std::size_t>(s - 1)];
    collect_partitions(remaining - s, s, mult, out);
    --mult[static_cast<std::size_t>(s - 1)];
  }
}

}  // namespace

GradedAtomPoly GradedAtomPoly::constant(const Rational& c) {
  GradedAtomPoly p;
  p.add_term({}, c);
  return p;
}

GradedAtomPoly GradedAtomPoly::atom(int s) {
  if (s < 1) throw Error(ErrorCode::InvalidIndex, "atoms are C_1, C_2, ...");
  Exponents e(static_cast<std::size_t>(s), 0);
  e.back() = 1;
  GradedAtomPoly p;
  p.add_term(std::move(e), Rational(1));
  return p;
}

Rational GradedAtomPoly::coefficient(const Exponents& e) const {
  Exponents key = e;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

int GradedAtomPoly::degree(const Exponents& e) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<int>(i + 1) * e[i];
  return d;
}

GradedAtomPoly GradedAtomPoly::homogeneous_part(int d) const {
  GradedAtomPoly p;
  for (const auto& [e, c] : terms_) {
    if (degree(e) == d) p.terms_.emplace(e, c);
  }
  return p;
}

GradedAtomPoly GradedAtomPoly::truncated(int d) const {
  GradedAtomPoly p;
  for (const auto& [e, c] : terms_) {
    if (degree(e) <= d) p.terms_.emplace(e, c);
  }
  return p;
}

void GradedAtomPoly::add_term(Exponents e, const Rational& c) {
  if (c == 0) return;
  trim(e);
  auto& slot = terms_[e];
  slot += c;
  if (slot == 0) terms_.erase(e);
}

GradedAtomPoly& GradedAtomPoly::operator+=(const GradedAtomPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

GradedAtomPoly& GradedAtomPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

GradedAtomPoly operator*(const GradedAtomPoly& a, const GradedAtomPoly& b) {
  GradedAtomPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      GradedAtomPoly::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  }
  return out;
}

std::string GradedAtomPoly::text() const {
  if (terms_.empty()) return "0";
  // descending lexicographic exponent order puts C_1^g first and C_g last
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const Rational mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e.empty()) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << " ";
    bool first_atom = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_atom) os << " ";
      first_atom = false;
      os << "C_" << i + 1;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::vector<std::vector<int>> partitions(int g) {
  std::vector<std::vector<int>> out;
  if (g < 1) return out;
  std::vector<int> mult(static_cast<std::size_t>(g), 0);
  collect_partitions(g, g, mult, out);
  return out;
}

GradedAtomPoly exp_truncate(int g) {
  if (g < 1 || g > 20) throw Error(ErrorCode::InputRange, "exp_truncate needs 1 <= g <= 20");
  GradedAtomPoly out;
  for (const auto& mult : partitions(g)) {
    Rational coeff(1);
    for (std::size_t i = 0; i < mult.size(); ++i) {
      const int s = static_cast<int>(i + 1);
      const std::int64_t base = (s % 2 == 0 ? 1 : -1) * factorial(s - 1);
      for (int j = 0; j < mult[i]; ++j) coeff *= base;
      coeff /= factorial(mult[i]);
    }
    GradedAtomPoly::Exponents e = mult;
    GradedAtomPoly term = GradedAtomPoly::constant(coeff);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int j = 0; j < e[i]; ++j) term = term * GradedAtomPoly::atom(static_cast<int>(i + 1));
    }
    out += term;
  }
  return out;
}

}  // namespace jacstab
