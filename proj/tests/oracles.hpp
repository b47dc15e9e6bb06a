#pragma once

// Independent reference computations. Everything here works on exact
// integers and rationals and shares no code path with the library beyond
// the number types themselves.

#include <functional>
#include <vector>

#include "cantordim/numeric.hpp"

namespace oracle {

using cantordim::BigInt;
using cantordim::Rank;
using cantordim::Rational;
using cantordim::Real;

inline BigInt factorial(std::uint64_t m) {
  BigInt f = 1;
  for (std::uint64_t i = 2; i <= m; ++i) f *= i;
  return f;
}

/// ln of a positive big integer straight through MPFR.
inline Real ln(const BigInt& n) { return boost::multiprecision::log(Real(n)); }

inline BigInt product(const std::function<BigInt(Rank)>& term, Rank k) {
  BigInt p = 1;
  for (Rank i = 1; i <= k; ++i) p *= term(i);
  return p;
}

using Digits = std::vector<BigInt>;
using Probability = std::function<Rational(Rank, const BigInt&)>;

/// Calls `visit` on every digit string of rank k in lexicographic order.
inline void for_each_string(const std::function<BigInt(Rank)>& term, Rank k,
                            const std::function<void(const Digits&)>& visit) {
  Digits d(k, 0);
  while (true) {
    visit(d);
    Rank i = k;
    while (i > 0) {
      --i;
      d[i] += 1;
      if (d[i] < term(i + 1)) break;
      d[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

inline Rational cylinder_mass(const Probability& p, const Digits& d) {
  Rational m = 1;
  for (Rank i = 0; i < d.size(); ++i) m *= p(i + 1, d[i]);
  return m;
}

/// Sum of the masses of all rank-k cylinders lying left of `target`.
inline Rational cdf_by_enumeration(const std::function<BigInt(Rank)>& term, const Probability& p,
                                   const Digits& target) {
  Rational total = 0;
  for_each_string(term, target.size(), [&](const Digits& d) {
    if (d < target) total += cylinder_mass(p, d);
  });
  return total;
}

/// Left endpoint of the cylinder of `d`, summed term by term.
inline Rational left_endpoint(const std::function<BigInt(Rank)>& term, const Digits& d) {
  Rational x = 0;
  BigInt den = 1;
  for (Rank i = 0; i < d.size(); ++i) {
    den *= term(i + 1);
    x += Rational(d[i], den);
  }
  return x;
}

}  // namespace oracle
