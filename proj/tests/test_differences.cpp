#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <gregory/bernoulli.hpp>
#include <gregory/differences.hpp>

using namespace gregory;

namespace {

// Independent oracle: the binomial-sum form
//   Delta^k a_n = sum_{m=0}^{k} (-1)^m C(k,m) a_{n+k-m}.
Rational binomial_delta(const std::vector<Rational>& seq, int k, int n) {
  BigInt binom = 1;
  Rational acc(0);
  for (int m = 0; m <= k; ++m) {
    const Rational term = Rational(binom) * seq[static_cast<std::size_t>(n + k - m)];
    if (m % 2 == 0)
      acc += term;
    else
      acc -= term;
    binom = binom * (k - m) / (m + 1);
  }
  return acc;
}

std::vector<Rational> random_sequence(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::vector<Rational> seq;
  seq.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) seq.push_back(make_rational(num(rng), den(rng)));
  return seq;
}

}  // namespace

TEST_CASE("first and second differences of the Gregory tail", "[differences]") {
  const auto a = alternating_sequence(bk2_recurrence(5));
  const DifferenceTable table = difference_table(a, 2);
  REQUIRE(table.rows[0] == a);
  REQUIRE(table.rows[1][0] == make_rational(-5, 12));  // 1/12 - 1/2
  REQUIRE(table.rows[2][0] == make_rational(3, 8));    // 1/24 - 2/12 + 1/2
}

TEST_CASE("differences of a constant vanish", "[differences]") {
  const std::vector<Rational> seq(3, make_rational(7, 3));
  const DifferenceTable table = difference_table(seq, 1);
  for (const Rational& v : table.rows[1]) REQUIRE(v == 0);
}

TEST_CASE("adjacent differences equal the binomial sum", "[differences]") {
  std::mt19937 rng(20240811);
  for (int rep = 0; rep < 20; ++rep) {
    const auto seq = random_sequence(rng, 8);
    const DifferenceTable table = difference_table(seq, 5);
    for (int k = 0; k <= 5; ++k)
      for (int n = 0; n + k < 8; ++n)
        REQUIRE(table.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] ==
                binomial_delta(seq, k, n));
  }
}

TEST_CASE("difference tables are linear", "[differences]") {
  std::mt19937 rng(7);
  const auto s = random_sequence(rng, 7);
  const auto t = random_sequence(rng, 7);
  const Rational alpha = make_rational(3, 5);
  const Rational beta = make_rational(-7, 2);
  std::vector<Rational> mix;
  for (std::size_t i = 0; i < s.size(); ++i) mix.push_back(alpha * s[i] + beta * t[i]);

  const DifferenceTable ds = difference_table(s, 4);
  const DifferenceTable dt = difference_table(t, 4);
  const DifferenceTable dm = difference_table(mix, 4);
  for (std::size_t k = 0; k < dm.rows.size(); ++k)
    for (std::size_t n = 0; n < dm.rows[k].size(); ++n)
      REQUIRE(dm.rows[k][n] == alpha * ds.rows[k][n] + beta * dt.rows[k][n]);
}

TEST_CASE("order bound is validated", "[differences]") {
  const std::vector<Rational> seq{Rational(0), Rational(1)};
  REQUIRE_THROWS_AS(difference_table(seq, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(difference_table(seq, -1), std::invalid_argument);
  REQUIRE_NOTHROW(difference_table(seq, 1));
}

TEST_CASE("Gregory tail is completely monotone on a 20x10 table", "[differences][cm]") {
  const auto a = alternating_sequence(bk2_recurrence(21));
  const CmCertificate cert = certify_cm(difference_table(a, 10));
  REQUIRE(cert.holds);
  REQUIRE_FALSE(cert.first_violation.has_value());
  REQUIRE(cert.max_index_n == 20);
  REQUIRE(cert.max_order_k == 10);
}

TEST_CASE("an increasing sequence is rejected with a witness", "[differences][cm]") {
  const std::vector<Rational> seq{Rational(0), Rational(1)};
  const CmCertificate cert = certify_cm(difference_table(seq, 1));
  REQUIRE_FALSE(cert.holds);
  REQUIRE(cert.first_violation.has_value());
  REQUIRE(cert.first_violation->order_k == 1);
  REQUIRE(cert.first_violation->index_n == 0);
  REQUIRE(cert.first_violation->value == Rational(1));
}

TEST_CASE("geometric sequences are completely monotone", "[differences][cm]") {
  std::vector<Rational> seq;
  Rational v(1);
  for (int i = 0; i < 12; ++i) {
    seq.push_back(v);
    v /= 3;
  }
  REQUIRE(certify_cm(difference_table(seq, 8)).holds);
}

TEST_CASE("violation scan order is k-major", "[differences][cm]") {
  // Negative entry at k=0 must be found before any k=1 violation.
  const std::vector<Rational> seq{Rational(1), Rational(-1), Rational(5)};
  const CmCertificate cert = certify_cm(difference_table(seq, 2));
  REQUIRE_FALSE(cert.holds);
  REQUIRE(cert.first_violation->order_k == 0);
  REQUIRE(cert.first_violation->index_n == 1);
}
