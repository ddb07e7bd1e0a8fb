#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "pprloc/degseq.hpp"

using namespace pprloc;

TEST(RankSkewed, HandEvaluated) {
  EXPECT_EQ(generate_rank_skewed(10, 9, 2, 0.5).degrees, (std::vector<Degree>{9, 6, 5, 4, 4, 3, 3, 3, 3, 2}));
  EXPECT_EQ(generate_rank_skewed(5, 4, 4, 1.0).degrees, (std::vector<Degree>{4, 4, 4, 4, 4}));
}

TEST(RankSkewed, InvalidParameters) {
  EXPECT_THROW(generate_rank_skewed(10, 10, 2, 0.5), std::invalid_argument);
  EXPECT_THROW(generate_rank_skewed(10, 5, 6, 0.5), std::invalid_argument);
  EXPECT_THROW(generate_rank_skewed(10, 5, 0, 0.5), std::invalid_argument);
  EXPECT_THROW(generate_rank_skewed(10, 5, 2, 0.0), std::invalid_argument);
  EXPECT_THROW(generate_rank_skewed(1, 1, 1, 1.0), std::invalid_argument);
}

TEST(RankSkewed, FormulaAndCertificate) {
  const auto s = generate_rank_skewed(5000, 71, 2, 0.75);
  ASSERT_TRUE(s.is_valid());
  for (std::size_t k = 1; k <= s.size(); ++k) {
    const auto expect = std::max<Degree>(static_cast<Degree>(std::floor(71.0 * std::pow(double(k), -0.75) + 1e-9)), 2);
    EXPECT_EQ(s.degrees[k - 1], expect) << "rank " << k;
  }
  EXPECT_TRUE(satisfies_rank_skew(s, {71, 2, 0.75}));
  EXPECT_EQ(certify_max_degree(s, 2, 0.75), 71);
}

TEST(RankSkewed, CertificateGrowsAfterBump) {
  auto s = make_sequence({5, 5, 3, 2, 2});
  const Degree d = certify_max_degree(s, 2, 1.0);
  EXPECT_TRUE(satisfies_rank_skew(s, {d, 2, 1.0}));
  EXPECT_FALSE(satisfies_rank_skew(s, {d - 1, 2, 1.0}));
  EXPECT_EQ(d, 10);  // rank 2 needs d >= 5 * 2
}

TEST(Graphical, Examples) {
  EXPECT_TRUE(is_graphical_erdos_gallai(make_sequence({2, 2, 2})));
  EXPECT_FALSE(is_graphical_erdos_gallai(make_sequence({3, 3, 2})));
  EXPECT_TRUE(is_graphical_erdos_gallai(make_sequence({3, 1, 1, 1})));
  EXPECT_FALSE(is_graphical_erdos_gallai(make_sequence({2, 2, 1})));
  EXPECT_TRUE(is_graphical_havel_hakimi(make_sequence({2, 2, 2})));
  EXPECT_FALSE(is_graphical_havel_hakimi(make_sequence({3, 3, 2})));
  EXPECT_TRUE(is_graphical_havel_hakimi(make_sequence({3, 1, 1, 1})));
  EXPECT_TRUE(is_graphical_erdos_gallai(make_sequence({9, 6, 5, 4, 4, 3, 3, 3, 3, 2})));
}

TEST(Graphical, CheckersAgreeOnLargeSequences) {
  for (double p : {0.5, 0.75, 0.95}) {
    auto s = repair_parity(generate_rank_skewed(20000, 142, 2, p));
    EXPECT_TRUE(is_graphical_erdos_gallai(s));
    EXPECT_TRUE(is_graphical_havel_hakimi(s));
  }
  auto bad = make_sequence({6, 6, 6, 6, 2, 2, 2});
  EXPECT_EQ(is_graphical_erdos_gallai(bad), is_graphical_havel_hakimi(bad));
}

TEST(Parity, Repair) {
  const auto even = make_sequence({9, 6, 5, 4, 4, 3, 3, 3, 3, 2});
  EXPECT_EQ(repair_parity(even), even);
  EXPECT_EQ(repair_parity(make_sequence({3, 2, 2})).degrees, (std::vector<Degree>{3, 3, 2}));
  EXPECT_EQ(repair_parity(make_sequence({2, 2, 1})).degrees, (std::vector<Degree>{2, 2, 2}));
  const auto s = generate_rank_skewed(8, 5, 1, 1.0);
  ASSERT_EQ(s.degrees, (std::vector<Degree>{5, 2, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(repair_parity(s).degrees, (std::vector<Degree>{5, 2, 2, 1, 1, 1, 1, 1}));
}

TEST(Fit, NoiselessPowerLaw) {
  std::vector<double> v(100000);
  for (std::size_t k = 1; k <= v.size(); ++k) v[k - 1] = 1000.0 * std::pow(double(k), -0.75);
  Rng rng(1);
  const auto f = fit_rank_skew(v, rng);
  EXPECT_NEAR(f.p, 0.75, 0.01);
  EXPECT_NEAR(std::exp(f.log_d), 1000.0, 1.0);
  EXPECT_DOUBLE_EQ(f.inlier_fraction, 1.0);
  EXPECT_LE(f.samples_used, 500u);
  EXPECT_GT(f.samples_used, 300u);
}

TEST(Fit, FlooredSequence) {
  const auto s = generate_rank_skewed(100000, 316, 2, 0.5);
  Rng rng(7);
  EXPECT_NEAR(fit_rank_skew(s, rng).p, 0.5, 0.08);
}

TEST(Fit, FlatTailDominatedSequenceRejected) {
  // most geometric samples sit on the delta plateau, so the best line is flat
  const auto s = generate_rank_skewed(50000, 224, 2, 0.75);
  Rng rng(11);
  EXPECT_THROW(fit_rank_skew(s, rng), std::runtime_error);
}

TEST(Fit, DegenerateRejected) {
  Rng rng(1);
  EXPECT_THROW(fit_rank_skew(make_sequence({5, 5, 5, 5}), rng), std::invalid_argument);
}

TEST(Fit, Deterministic) {
  const auto s = generate_rank_skewed(100000, 316, 2, 0.5);
  Rng a(11), b(11);
  EXPECT_EQ(fit_rank_skew(s, a).p, fit_rank_skew(s, b).p);
}

TEST(Fit, GeometricRanks) {
  auto r = geometric_ranks(100000, 500);
  EXPECT_EQ(r.front(), 1u);
  EXPECT_EQ(r.back(), 100000u);
  EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
  EXPECT_EQ(std::adjacent_find(r.begin(), r.end()), r.end());
}

TEST(Analytics, PublishedRows) {
  EXPECT_NEAR(skew_analytics_from_exponent(0.84, 0.98).log_n_cp, 0.86, 0.03);
  EXPECT_NEAR(skew_analytics_from_exponent(0.77, 0.82).log_n_cp, 0.94, 0.03);
  EXPECT_NEAR(skew_analytics_from_exponent(0.98, 0.47).log_n_cp, 2.09, 0.03);
  EXPECT_TRUE(skew_analytics_from_exponent(0.84, 0.98).sublinear);
  EXPECT_FALSE(skew_analytics_from_exponent(0.98, 0.47).sublinear);
  const auto a = skew_analytics(1e6, 1e3, 0.75);
  EXPECT_NEAR(a.log_n_d, 0.5, 1e-12);
  EXPECT_NEAR(a.log_n_cp, 2.0 / 3.0, 1e-12);
  const auto b = table1_analytics(1e6, 1e3, 0.75);
  EXPECT_DOUBLE_EQ(b.log_n_cp, a.log_n_cp);
  EXPECT_THROW(table1_analytics(1.0, 10.0, 0.5), std::invalid_argument);
}

TEST(SequenceIo, RoundTrip) {
  const auto s = generate_rank_skewed(100, 10, 2, 0.5);
  std::stringstream io;
  write_sequence(s, io);
  EXPECT_EQ(read_sequence(io), s);
  std::stringstream bad("3\nx\n");
  EXPECT_THROW(read_sequence(bad), std::runtime_error);
}
