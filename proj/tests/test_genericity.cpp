#include <gtest/gtest.h>

#include "lvfol/genericity.hpp"
#include "support/random.hpp"
#include "support/table_oracle.hpp"

using lvfol::EigenTriple;
using lvfol::FieldElem;
using lvfol::Rational;
using lvfol::testing::Rng;

namespace {

const FieldElem I = FieldElem::i();
const FieldElem S = FieldElem::sqrt2();

const EigenTriple kP123(I * 4, -I - S, 1);
const EigenTriple kP12(I * -4, -I - S, 1);
const EigenTriple kPm(I * -4, I + S, -1);

}  // namespace

TEST(Genericity, Residues) {
  EXPECT_EQ(lvfol::sigma_zeta(kP123, 3).sigma, I * 3 - S);
  EXPECT_EQ(lvfol::sigma_zeta(kP123, 1).zeta, FieldElem(16) / (I + S));
  EXPECT_EQ(lvfol::sigma_zeta(kPm, 2).zeta, -I / 4 + FieldElem(1) / S);
  EXPECT_THROW((void)lvfol::sigma_zeta(kP123, 4), lvfol::DomainError);
}

TEST(Genericity, TripleValidation) {
  EXPECT_THROW(EigenTriple(1, 0, 2), lvfol::MathError);
  EXPECT_THROW(EigenTriple(1, 1, 2), lvfol::MathError);
}

TEST(Genericity, ReportP123) {
  const auto rep = lvfol::condition_report(kP123, "p123");
  ASSERT_EQ(rep.rows.size(), 14u);
  EXPECT_EQ(rep.rows[0].value, FieldElem(1) + I * 3 - S);
  EXPECT_EQ(rep.rows[9].value, FieldElem(1) / (FieldElem(4) * (FieldElem(1) - I * S)));
  EXPECT_TRUE(rep.pass);
  for (const auto& r : rep.rows) EXPECT_TRUE(r.pass) << r.index;
}

TEST(Genericity, ReportP12Row12) {
  const auto rep = lvfol::condition_report(kP12, "p12");
  // sigma2 + sigma3 for (-4i, -i - sqrt2, 1).
  const FieldElem expected = (kP12(1) + kP12(3)) / kP12(2) + (kP12(1) + kP12(2)) / kP12(3);
  EXPECT_EQ(rep.rows[11].value, expected);
  EXPECT_EQ(rep.rows[11].text(), "4/3 - 14/3*i - 4/3*sqrt2 + 4/3*i*sqrt2");
  EXPECT_TRUE(rep.rows[11].pass);
  // The tabulated 5i + sqrt2 + (1 + 4i)/(i + sqrt2) is sigma2 + sigma3 at p1, not p12.
  const FieldElem tabulated = I * 5 + S + (FieldElem(1) + I * 4) / (I + S);
  EXPECT_NE(rep.rows[11].value, tabulated);
  const EigenTriple p1(I * -4, -I - S, -1);
  EXPECT_EQ(lvfol::condition_report(p1, "p1").rows[11].value, tabulated);
}

TEST(Genericity, RealRatioFails) {
  const auto rep = lvfol::condition_report(EigenTriple(1, 2, 3), "real");
  EXPECT_EQ(rep.rows[1].value, FieldElem(Rational(1, 2)));
  EXPECT_FALSE(rep.rows[1].pass);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.rows[1].not_positive_real.has_value());
  EXPECT_FALSE(*rep.rows[1].not_positive_real);
}

TEST(Genericity, NaturalResidueFails) {
  // (1, 2, -1): sigma1 = (2 - 1)/1 = 1 lies in I_1.
  const auto rep = lvfol::condition_report(EigenTriple(1, 2, -1), "nat");
  EXPECT_EQ(rep.rows[6].value, FieldElem(1));
  EXPECT_FALSE(rep.rows[6].pass);
}

TEST(Genericity, Table1) {
  const auto reps = lvfol::table1();
  ASSERT_EQ(reps.size(), 4u);
  const std::array<std::string, 4> labels{"p123", "p12", "p1", "pm"};
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(reps[c].label, labels[c]);
    for (int k = 1; k <= 3; ++k)
      EXPECT_EQ(reps[c].eigenvalues(k).to_string(), lvfol::testing::kTableEigenvalues[c][static_cast<std::size_t>(k - 1)]);
    for (std::size_t r = 0; r < 14; ++r)
      EXPECT_EQ(reps[c].rows[r].text(), lvfol::testing::kComputedTable[c][r]) << labels[c] << " row " << r + 1;
    EXPECT_TRUE(reps[c].pass);
  }
  // pm row 7
  EXPECT_EQ(reps[3].rows[6].value, I / 4 * (FieldElem(-1) + I + S));
}

TEST(Genericity, JsonShape) {
  const auto j = lvfol::report_to_json(lvfol::condition_report(kP123, "p123"));
  EXPECT_EQ(j["singularity"], "p123");
  EXPECT_EQ(j["eigenvalues"].size(), 3u);
  EXPECT_EQ(j["conditions"].size(), 14u);
  EXPECT_TRUE(j["conditions"][1].contains("not_positive_real"));
  EXPECT_FALSE(j["conditions"][4].contains("not_positive_real"));
  EXPECT_TRUE(j["pass"].get<bool>());
}

// zeta1 zeta2 zeta3 = 1; rows invariant under scaling; permutations permute the rows.
TEST(GenericityProperties, ZetaProduct) {
  Rng rng(51);
  int n = 0;
  while (n < 100) {
    const std::array<FieldElem, 3> l{lvfol::testing::random_nonzero_elem(rng), lvfol::testing::random_nonzero_elem(rng),
                                     lvfol::testing::random_nonzero_elem(rng)};
    if (l[0] == l[1] || l[0] == l[2] || l[1] == l[2]) continue;
    const EigenTriple lam(l);
    ASSERT_EQ(lvfol::sigma_zeta(lam, 1).zeta * lvfol::sigma_zeta(lam, 2).zeta * lvfol::sigma_zeta(lam, 3).zeta,
              FieldElem(1));
    ++n;
  }
}

TEST(GenericityProperties, ScalingInvariance) {
  Rng rng(52);
  int n = 0;
  while (n < 100) {
    const std::array<FieldElem, 3> l{lvfol::testing::random_nonzero_elem(rng), lvfol::testing::random_nonzero_elem(rng),
                                     lvfol::testing::random_nonzero_elem(rng)};
    if (l[0] == l[1] || l[0] == l[2] || l[1] == l[2]) continue;
    const EigenTriple lam(l);
    const FieldElem c = lvfol::testing::random_nonzero_elem(rng);
    const auto a = lvfol::condition_report(lam, "a");
    const auto b = lvfol::condition_report(lam.scaled(c), "b");
    ASSERT_EQ(b.rows[0].value, a.rows[0].value * c);
    for (std::size_t r = 1; r < 14; ++r) {
      ASSERT_EQ(a.rows[r].value, b.rows[r].value) << r;
      ASSERT_EQ(a.rows[r].pass, b.rows[r].pass);
    }
    ++n;
  }
}

TEST(GenericityProperties, PermutationInvariance) {
  Rng rng(53);
  int n = 0;
  while (n < 100) {
    const std::array<FieldElem, 3> l{lvfol::testing::random_nonzero_elem(rng), lvfol::testing::random_nonzero_elem(rng),
                                     lvfol::testing::random_nonzero_elem(rng)};
    if (l[0] == l[1] || l[0] == l[2] || l[1] == l[2]) continue;
    const EigenTriple lam(l);
    const EigenTriple swapped = lam.permuted({1, 0, 2});
    for (int i = 1; i <= 3; ++i) {
      const int j = i == 1 ? 2 : (i == 2 ? 1 : 3);
      ASSERT_EQ(lvfol::sigma_zeta(lam, i).sigma, lvfol::sigma_zeta(swapped, j).sigma);
      ASSERT_EQ(lvfol::sigma_zeta(lam, i).zeta, lvfol::sigma_zeta(swapped, j).zeta);
    }
    const auto a = lvfol::condition_report(lam, "a");
    const auto b = lvfol::condition_report(swapped, "b");
    ASSERT_EQ(a.pass, b.pass);
    ASSERT_EQ(a.rows[0].value, b.rows[0].value);
    ASSERT_EQ(a.rows[10].value, b.rows[10].value);
    ++n;
  }
}
