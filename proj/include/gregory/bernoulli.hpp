#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "gregory/rational.hpp"

namespace gregory {

enum class Bk2Method { Recurrence, FallingFactorial };

// Exact coefficients b_0..b_N of the power series x/ln(1+x) = sum_n b_n x^n
// (Bernoulli numbers of the second kind, also known as Gregory coefficients
// or Cauchy numbers).
struct Bk2Table {
  std::vector<Rational> values;
  Bk2Method method = Bk2Method::Recurrence;

  int max_index() const { return static_cast<int>(values.size()) - 1; }
};

// Series inversion of ln(1+x)/x = sum_m (-1)^m x^m/(m+1):
//   b_0 = 1,  b_n = -sum_{k=0}^{n-1} (-1)^{n-k} b_k / (n-k+1).
// Exact for every N; cost O(N^2) rational operations.
inline Bk2Table bk2_recurrence(int n_max) {
  if (n_max < 0) throw std::invalid_argument("bk2_recurrence: n_max must be >= 0");
  Bk2Table table;
  table.method = Bk2Method::Recurrence;
  table.values.reserve(static_cast<std::size_t>(n_max) + 1);
  table.values.emplace_back(1);
  for (int n = 1; n <= n_max; ++n) {
    Rational acc(0);
    for (int k = 0; k < n; ++k) {
      const Rational term = table.values[static_cast<std::size_t>(k)] / (n - k + 1);
      if ((n - k) % 2 == 1)
        acc -= term;
      else
        acc += term;
    }
    table.values.push_back(-acc);
  }
  return table;
}

// Independent route through the classical integral
//   b_n = (1/n!) Int_0^1 s(s-1)...(s-n+1) ds,
// expanded exactly with signed Stirling numbers of the first kind
//   s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k),
// so that b_n = (1/n!) sum_{k=1}^{n} s(n,k)/(k+1). Shares no code with
// bk2_recurrence.
inline Bk2Table bk2_falling_factorial(int n_max) {
  if (n_max < 0) throw std::invalid_argument("bk2_falling_factorial: n_max must be >= 0");
  Bk2Table table;
  table.method = Bk2Method::FallingFactorial;
  table.values.reserve(static_cast<std::size_t>(n_max) + 1);
  table.values.emplace_back(1);  // empty product integrates to 1

  std::vector<BigInt> row{1};  // s(0,0) = 1
  BigInt factorial = 1;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
    next[0] = 0;
    for (int k = 1; k <= n; ++k) {
      const BigInt upper = (k < n) ? row[static_cast<std::size_t>(k)] : BigInt(0);
      next[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k - 1)] - (n - 1) * upper;
    }
    row = std::move(next);
    factorial *= n;

    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += make_rational(row[static_cast<std::size_t>(k)], BigInt(k + 1));
    table.values.push_back(acc / Rational(factorial));
  }
  return table;
}

// a_n = (-1)^n b_{n+1}: drops b_0 and strips the alternating sign, producing
// the nonnegative sequence (1/2, 1/12, 1/24, 19/720, ...).
inline std::vector<Rational> alternating_sequence(const Bk2Table& table) {
  if (table.values.size() < 2)
    throw std::invalid_argument("alternating_sequence: table needs at least b_0 and b_1");
  std::vector<Rational> out;
  out.reserve(table.values.size() - 1);
  for (std::size_t n = 0; n + 1 < table.values.size(); ++n)
    out.push_back(n % 2 == 0 ? table.values[n + 1] : -table.values[n + 1]);
  return out;
}

}  // namespace gregory
