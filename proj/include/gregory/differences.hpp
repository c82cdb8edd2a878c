#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gregory/rational.hpp"

namespace gregory {

// Triangular table of forward differences: rows[k][n] = Delta^k base_n,
// with rows[0] = base and rows[k][n] = rows[k-1][n+1] - rows[k-1][n].
struct DifferenceTable {
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> rows;

  int max_order() const { return static_cast<int>(rows.size()) - 1; }
};

// Repeated adjacent differences rather than the binomial sum
// Delta^k a_n = sum_m (-1)^m C(k,m) a_{n+k-m}; both agree exactly and the
// adjacent form avoids large intermediate binomials.
inline DifferenceTable difference_table(const std::vector<Rational>& seq, int max_order_k) {
  if (max_order_k < 0) throw std::invalid_argument("difference_table: max_order_k must be >= 0");
  if (static_cast<std::size_t>(max_order_k) + 1 > seq.size())
    throw std::invalid_argument("difference_table: max_order_k + 1 exceeds sequence length");
  DifferenceTable table;
  table.base = seq;
  table.rows.reserve(static_cast<std::size_t>(max_order_k) + 1);
  table.rows.push_back(seq);
  for (int k = 1; k <= max_order_k; ++k) {
    const auto& prev = table.rows.back();
    std::vector<Rational> row;
    row.reserve(prev.size() - 1);
    for (std::size_t n = 0; n + 1 < prev.size(); ++n) row.push_back(prev[n + 1] - prev[n]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

struct CmViolation {
  int order_k = 0;
  int index_n = 0;
  Rational value;  // the raw difference Delta^k a_n, sign included
};

// Outcome of checking (-1)^k Delta^k a_n >= 0 over a finite triangle.
struct CmCertificate {
  int max_index_n = 0;
  int max_order_k = 0;
  bool holds = false;
  std::optional<CmViolation> first_violation;
};

// Scan order is fixed (increasing k, then increasing n) so a failing
// certificate always reports the same witness.
inline CmCertificate certify_cm(const DifferenceTable& table) {
  CmCertificate cert;
  cert.max_index_n = static_cast<int>(table.base.size()) - 1;
  cert.max_order_k = table.max_order();
  for (int k = 0; k < static_cast<int>(table.rows.size()); ++k) {
    const auto& row = table.rows[static_cast<std::size_t>(k)];
    for (int n = 0; n < static_cast<int>(row.size()); ++n) {
      const Rational& v = row[static_cast<std::size_t>(n)];
      const bool nonneg = (k % 2 == 0) ? (v >= 0) : (v <= 0);
      if (!nonneg) {
        cert.holds = false;
        cert.first_violation = CmViolation{k, n, v};
        return cert;
      }
    }
  }
  cert.holds = true;
  return cert;
}

}  // namespace gregory
