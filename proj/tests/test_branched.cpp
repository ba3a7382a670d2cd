#include <gtest/gtest.h>

#include "lvfol/branched.hpp"
#include "support/random.hpp"

using lvfol::BranchedMap;
using lvfol::Exponents;
using lvfol::FieldElem;
using lvfol::LVSpec;
using lvfol::MPoly;
using lvfol::PForm;
using lvfol::PVField;
using lvfol::Rational;
using lvfol::Regime;
using lvfol::VariableSet;
using lvfol::WeightCase;
using lvfol::testing::Rng;

namespace {

MPoly P(std::string_view s, int n = 5) { return lvfol::parse_poly(s, VariableSet::homogeneous(n)); }

LVSpec reference_spec() { return lvfol::homogenize_decoupled(lvfol::reference_decoupled_field()); }

}  // namespace

TEST(Weights, Case1) {
  const auto w = lvfol::classify_weights({2, 3, 5, 7}, 2);
  EXPECT_EQ(w.weight_case, WeightCase::case1);
  EXPECT_EQ(w.weight_vector, (std::array<long, 4>{105, 70, 42, 30}));
  EXPECT_EQ(w.k, 37);
  EXPECT_EQ(w.l, 107);
  EXPECT_EQ(w.m, 163);
  EXPECT_EQ(w.n, 187);
  EXPECT_EQ(w.regime, Regime::casomenor);
  EXPECT_EQ(w.quasi_degree, 210);
  EXPECT_EQ(w.total_weighted_degree, 210 + 105 + 70 + 42 + 30);
  EXPECT_TRUE(w.pairwise_coprime);
}

TEST(Weights, OtherCases) {
  EXPECT_EQ(lvfol::classify_weights({1, 1, 1, 2}, 2).weight_case, WeightCase::case4);
  EXPECT_EQ(lvfol::classify_weights({1, 1, 2, 3}, 2).weight_case, WeightCase::case3);
  EXPECT_EQ(lvfol::classify_weights({1, 2, 3, 5}, 2).weight_case, WeightCase::case2);
  EXPECT_EQ(lvfol::classify_weights({2, 4, 5, 7}, 2).weight_case, WeightCase::invalid);
  EXPECT_EQ(lvfol::classify_weights({1, 1, 2, 4}, 2).weight_case, WeightCase::invalid);
  EXPECT_EQ(lvfol::classify_weights({3, 2, 5, 7}, 2).weight_case, WeightCase::invalid);
  EXPECT_THROW((void)lvfol::classify_weights({0, 1, 1, 2}, 2), lvfol::MathError);
}

TEST(Weights, NegativeK) {
  const auto w = lvfol::classify_weights({2, 5, 7, 9}, 2);
  EXPECT_EQ(w.weight_case, WeightCase::case1);
  EXPECT_EQ(w.k, 2 * (63 + 45 + 35) - 315);
  EXPECT_EQ(w.k, -29);
  EXPECT_FALSE(w.k_nonnegative);
  // m = 7(45 + 18 + 10) - 90 = 421 keeps the m-condition of the small regime.
  EXPECT_EQ(w.m, 421);
  EXPECT_TRUE(w.m_nonnegative);
  EXPECT_EQ(w.regime, Regime::mixed);
}

TEST(Branched, MapValidation) {
  EXPECT_THROW(BranchedMap({P("x0^2"), P("x1^2"), P("x2^2"), P("x3^2")}, {1, 1, 1, 2}), lvfol::MathError);
  EXPECT_THROW(BranchedMap({P("x0^2 + x1"), P("x1^2"), P("x2^2"), P("x3")}, {1, 1, 1, 2}), lvfol::MathError);
  EXPECT_THROW(BranchedMap({P("x0"), P("x1"), P("x2"), P("x3")}, {1, 1, 1, 1}), lvfol::MathError);  // nu = 1
  const BranchedMap f({P("x0^2"), P("x1^2"), P("x2^2"), P("x3")}, {1, 1, 1, 2});
  EXPECT_EQ(f.nu(), 2);
  EXPECT_EQ(f.prefactor(), P("x3"));
}

TEST(Branched, ReferenceInstance) {
  // Quadrics F0..F2 and a linear F3 with exponents (1, 1, 1, 2).
  const BranchedMap f({P("x0^2 + x1*x4"), P("x1^2 + x2*x3"), P("x2^2 - x0*x4"), P("x3 + x4")}, {1, 1, 1, 2});
  const PForm eta = lvfol::branched_pullback(f, reference_spec());
  const auto lifted = f.lifted();
  EXPECT_EQ(lvfol::pullback_form(lifted, lvfol::build_lv_form(reference_spec())), eta.times(f.prefactor()));
  for (const auto& [idx, p] : eta.coefficients()) EXPECT_EQ(lvfol::homogeneity(p).degree, 7);
  EXPECT_EQ(lvfol::foliation_degree(eta), 6);
  EXPECT_TRUE(lvfol::descent_and_integrability_checks(eta).all());
}

TEST(Branched, HandExpansion) {
  // G with Q = (0, x0, 0, 0): the only nonzero P_kl are P01 = -x0 and P12 = x0, P13 = x0.
  const LVSpec g(2, {MPoly(4), P("x0", 4), MPoly(4), MPoly(4)});
  const BranchedMap f({P("x0^2"), P("x1^2"), P("x2^2"), P("x3")}, {1, 1, 1, 2});
  const PForm eta = lvfol::branched_pullback(f, g);
  // (i, j) = (2, 3): +2 F0 F1 P01(f~) dF2^dF3 = -2 x0^4 x1^2 * (2 x2 dx2 ^ dx3)
  // (i, j) = (0, 3): +2 F1 F2 P12(f~) dF0^dF3 =  2 x0^2 x1^2 x2^2 * (2 x0 dx0 ^ dx3)
  // (i, j) = (0, 2): -1 F1 F3 P13(f~) dF0^dF2 = -x0^2 x1^2 x3 * (4 x0 x2 dx0 ^ dx2)
  PForm expected(5, 2);
  expected.add({2, 3}, P("-4*x0^4*x1^2*x2"));
  expected.add({0, 3}, P("4*x0^3*x1^2*x2^2"));
  expected.add({0, 2}, P("-4*x0^3*x1^2*x2*x3"));
  EXPECT_EQ(eta, expected);
}

TEST(Branched, LocalModelQuasiHomogeneous) {
  for (const Exponents e : {Exponents{2, 3, 5, 7}, Exponents{1, 1, 1, 2}}) {
    for (int d : {2, 3}) {
      Rng rng(static_cast<std::uint64_t>(100 + d));
      const LVSpec g = d == 2 ? reference_spec() : lvfol::testing::random_lv_spec(rng, d, 3);
      const auto w = lvfol::classify_weights(e, d);
      const PForm local = lvfol::local_model(w, g);
      const auto q = lvfol::weighted_form_degree(local, w.weight_vector);
      ASSERT_TRUE(q.constant);
      ASSERT_TRUE(q.total.has_value());
      EXPECT_EQ(*q.total, w.total_weighted_degree);
      EXPECT_TRUE(lvfol::interior_product(PVField::weighted_radial(w.weight_vector), local).is_zero());
    }
  }
  // Constant weights: ordinary homogeneity of degree d + 1 per coefficient (d + 3 with the differentials).
  const PForm unbranched = lvfol::local_model(Exponents{1, 1, 1, 1}, reference_spec());
  const std::array<long, 4> ones{1, 1, 1, 1};
  EXPECT_EQ(*lvfol::weighted_form_degree(unbranched, ones).total, 2 + 3);
  EXPECT_EQ(unbranched, lvfol::build_lv_form(reference_spec()));
}

TEST(Branched, LocalModelRadialContraction) {
  // The weighted Euler field annihilates the local model; the plain radial
  // field does not once the weights differ.
  const LVSpec g = reference_spec();
  const PForm local = lvfol::local_model(Exponents{1, 1, 1, 2}, g);
  EXPECT_FALSE(lvfol::interior_product(PVField::radial(4), local).is_zero());
  EXPECT_TRUE(lvfol::wedge(local, local).is_zero());
}

TEST(Branched, Counts) {
  const auto c = lvfol::degree_and_counts(2, 2, {1, 1, 1, 2});
  EXPECT_EQ(c.theta, 6);
  EXPECT_EQ(c.coefficient_degree, 7);
  EXPECT_EQ(c.indeterminacy_count, 8);
  EXPECT_EQ(c.singularity_count, 15);
  EXPECT_EQ(lvfol::degree_and_counts(210, 2, {2, 3, 5, 7}).indeterminacy_count, 9261000);
  for (long nu = 2; nu <= 6; ++nu)
    for (long d = 2; d <= 4; ++d) EXPECT_EQ(lvfol::degree_and_counts(nu, d, {1, 1, 1, 1}).theta, (d + 3) * nu - 3);
  EXPECT_THROW((void)lvfol::degree_and_counts(3, 2, {1, 1, 1, 2}), lvfol::MathError);
}

TEST(Branched, Kupka) {
  const FieldElem i = FieldElem::i(), s = FieldElem::sqrt2();
  const std::array<FieldElem, 3> lam{i * 4, -i - s, 1};
  EXPECT_EQ(lvfol::kupka_trace(1, 1, 1, lam).value, FieldElem(1) + i * 3 - s);
  const auto t = lvfol::kupka_trace(2, 3, 5, lam);
  EXPECT_EQ(t.value, FieldElem(6) + i * 50 - s * 10);
  EXPECT_TRUE(t.nonzero);
  // 15 l1 + 10 l2 + 6 l3 = 0
  const std::array<FieldElem, 3> zero{1, 2, FieldElem(Rational(-(15 + 20), 6))};
  EXPECT_FALSE(lvfol::kupka_trace(2, 3, 5, zero).nonzero);
}

TEST(Branched, Holonomy) {
  const auto w = lvfol::classify_weights({2, 3, 5, 7}, 2);
  EXPECT_EQ(lvfol::holonomy_obstruction(1, 1, w).value, Rational(7, 30));
  EXPECT_FALSE(lvfol::holonomy_obstruction(1, 1, w).is_integer);
  EXPECT_EQ(lvfol::holonomy_obstruction(0, 0, w).value, Rational(-7, 2));
  EXPECT_THROW((void)lvfol::holonomy_obstruction(0, 0, lvfol::classify_weights({1, 1, 2, 3}, 2)), lvfol::MathError);
}

TEST(Branched, Ramification) {
  const LVSpec g = reference_spec();
  const auto r1 = lvfol::ramification_pullback(1, g);
  EXPECT_EQ(r1.form, lvfol::build_lv_form(g));
  for (long r = 1; r <= 5; ++r) {
    const auto res = lvfol::ramification_pullback(r, g);
    EXPECT_EQ(res.degree, r + 1);
    EXPECT_TRUE(lvfol::invariance_checks(res.spec).all());
    EXPECT_EQ(lvfol::build_lv_form(res.spec), res.form);
    EXPECT_EQ(res.content, lvfol::Monomial::var(0, static_cast<std::uint32_t>(r - 1)) *
                               lvfol::Monomial::var(1, static_cast<std::uint32_t>(r - 1)) *
                               lvfol::Monomial::var(2, static_cast<std::uint32_t>(r - 1)) *
                               lvfol::Monomial::var(3, static_cast<std::uint32_t>(r - 1)));
  }
  // Q'_k = r^2 Q_k(x^r)
  const auto r2 = lvfol::ramification_pullback(2, g);
  const std::vector<MPoly> sq{P("x0^2", 4), P("x1^2", 4), P("x2^2", 4), P("x3^2", 4)};
  for (int k = 1; k <= 3; ++k)
    EXPECT_EQ(r2.spec.q(k) - r2.spec.q(0), lvfol::substitute(g.q(k) - g.q(0), sq).scaled(4));
}

TEST(Branched, MapSpecRoundTrip) {
  const BranchedMap f({P("x0^2 + x1*x4"), P("x1^2 + x2*x3"), P("x2^2 - x0*x4"), P("x3 + i*x4")}, {1, 1, 1, 2});
  const std::string text = lvfol::format_map_spec(f);
  const BranchedMap back = lvfol::parse_map_spec(text);
  EXPECT_EQ(back.components(), f.components());
  EXPECT_EQ(back.exponents(), f.exponents());
  EXPECT_EQ(lvfol::format_map_spec(back), text);
  EXPECT_THROW((void)lvfol::parse_map_spec("alpha=1, beta=1, gamma=1\nF0=x0\n"), lvfol::ParseError);
  EXPECT_THROW((void)lvfol::parse_map_spec("alpha=1, beta=1, gamma=1, delta=2\nF0=x0^2\nF1=x1^2\nF2=x2^2\nF3=x3^2\n"),
               lvfol::MathError);
}

// Master oracle on random instances: closed form times the chain-rule
// prefactor equals the generic pull-back; descent, decomposability, degree.
TEST(BranchedProperties, OracleEquivalence) {
  Rng rng(61);
  for (int s = 0; s < 10; ++s) {
    const int d = s % 2 == 0 ? 2 : 3;
    const BranchedMap f = lvfol::testing::random_map(rng, {1, 1, 1, 2}, 2);
    const LVSpec g = lvfol::testing::random_lv_spec(rng, d, 2);
    const PForm eta = lvfol::branched_pullback(f, g);
    ASSERT_EQ(lvfol::pullback_form(f.lifted(), lvfol::build_lv_form(g)), eta.times(f.prefactor()));
    const auto checks = lvfol::descent_and_integrability_checks(eta);
    ASSERT_TRUE(checks.all());
  }
}

TEST(BranchedProperties, HolonomySweep) {
  int quadruples = 0;
  for (long a = 2; a <= 13; ++a)
    for (long b = a + 1; b <= 13; ++b)
      for (long c = b + 1; c <= 13; ++c)
        for (long e = c + 1; e <= 13; ++e) {
          const auto w = lvfol::classify_weights({a, b, c, e}, 2);
          if (w.weight_case != WeightCase::case1) continue;
          ++quadruples;
          for (long n = 0; n <= 20; ++n)
            for (long m = 0; m <= 20; ++m) ASSERT_FALSE(lvfol::holonomy_obstruction(n, m, w).is_integer);
        }
  EXPECT_GT(quadruples, 0);
}
