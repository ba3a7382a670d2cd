#include <gtest/gtest.h>

#include "lvfol/branched.hpp"
#include "lvfol/foliation.hpp"
#include "lvfol/forms.hpp"
#include "support/random.hpp"

using lvfol::FieldElem;
using lvfol::IndexTuple;
using lvfol::MPoly;
using lvfol::PForm;
using lvfol::PVField;
using lvfol::VariableSet;
using lvfol::testing::Rng;

namespace {

MPoly P(std::string_view s, int n = 4) { return lvfol::parse_poly(s, VariableSet::homogeneous(n)); }

PForm dx(int k, int n = 4) { return PForm::differential_of_coordinate(n, k); }

PForm term(const IndexTuple& idx, std::string_view coeff, int n = 4) {
  PForm w(n, static_cast<int>(idx.size()));
  w.add(idx, P(coeff, n));
  return w;
}

}  // namespace

TEST(Forms, Wedge) {
  EXPECT_EQ(lvfol::wedge(dx(1), dx(0)), -lvfol::wedge(dx(0), dx(1)));
  EXPECT_EQ(lvfol::wedge(term({0}, "x0"), term({1}, "x1")).coefficient({0, 1}), P("x0*x1"));
  EXPECT_EQ(lvfol::wedge(term({1}, "x0"), term({0}, "x1")), term({0, 1}, "-x0*x1"));
  EXPECT_EQ(lvfol::wedge(lvfol::wedge(dx(0), dx(1)), lvfol::wedge(dx(2), dx(3))), PForm::volume(4));
  EXPECT_TRUE(lvfol::wedge(dx(2), dx(2)).is_zero());
}

TEST(Forms, ExteriorDerivative) {
  EXPECT_EQ(lvfol::exterior_derivative(term({2}, "x0*x1")), term({0, 2}, "x1") + term({1, 2}, "x0"));
  EXPECT_EQ(lvfol::exterior_derivative(term({1}, "x0") - term({0}, "x1")), term({0, 1}, "2"));
  EXPECT_EQ(lvfol::exterior_derivative(PForm::function(P("x0^2*x3"))), PForm::differential(P("x0^2*x3")));
}

TEST(Forms, InteriorProduct) {
  const PVField r = PVField::radial(4);
  EXPECT_EQ(lvfol::interior_product(r, lvfol::wedge(dx(0), dx(1))), term({1}, "x0") - term({0}, "x1"));
  EXPECT_EQ(lvfol::interior_product(r, dx(2)), PForm::function(P("x2")));
}

TEST(Forms, Pullback) {
  const std::vector<MPoly> f{P("x0^2", 2), P("x1^3", 2)};
  const PForm w = lvfol::wedge(dx(0, 2), dx(1, 2));
  EXPECT_EQ(lvfol::pullback_form(f, w), term({0, 1}, "6*x0*x1^2", 2));
}

TEST(Forms, FromVectorField) {
  const PVField x({MPoly(4), P("x0*x1"), MPoly(4), MPoly(4)});
  const PForm expected = term({2, 3}, "-x0^2*x1") + term({0, 3}, "x0*x1*x2") + term({0, 2}, "-x0*x1*x3");
  EXPECT_EQ(lvfol::form_from_vector_field(x), expected);
  EXPECT_TRUE(lvfol::form_from_vector_field(PVField::radial(4)).is_zero());
}

TEST(Forms, LvFormCoefficient) {
  const lvfol::LVSpec spec = lvfol::homogenize_decoupled(lvfol::reference_decoupled_field());
  const PForm w = lvfol::form_from_vector_field(spec.vector_field());
  EXPECT_EQ(w.coefficient({2, 3}), P("x0*x1") * (spec.q(0) - spec.q(1)));
}

TEST(Forms, Checks) {
  const auto a = lvfol::descent_and_integrability_checks(lvfol::wedge(dx(0), dx(1)));
  EXPECT_TRUE(a.decomposable);
  EXPECT_FALSE(a.radial);
  const PForm b = lvfol::wedge(dx(0), dx(1)) + lvfol::wedge(dx(2), dx(3));
  EXPECT_EQ(lvfol::wedge(b, b), PForm::volume(4).scaled(2));
  EXPECT_FALSE(lvfol::descent_and_integrability_checks(b).decomposable);

  const lvfol::LVSpec spec = lvfol::homogenize_decoupled(lvfol::reference_decoupled_field());
  EXPECT_TRUE(lvfol::descent_and_integrability_checks(lvfol::build_lv_form(spec)).all());
}

TEST(Forms, LocalModelIsPullback) {
  // f = (x0, x1, x2, x3^2) on the LV form versus the closed-form local model.
  const lvfol::LVSpec spec = lvfol::homogenize_decoupled(lvfol::reference_decoupled_field());
  const std::vector<MPoly> f{P("x0"), P("x1"), P("x2"), P("x3^2")};
  const PForm raw = lvfol::pullback_form(f, lvfol::build_lv_form(spec));
  const PForm local = lvfol::local_model(lvfol::Exponents{1, 1, 1, 2}, spec);
  // The raw pull-back carries the factor x3^(delta-1) = x3 of the chain rule.
  EXPECT_EQ(raw, local.times(P("x3")));
}

TEST(Forms, TextRoundTrip) {
  const lvfol::LVSpec spec = lvfol::homogenize_decoupled(lvfol::reference_decoupled_field());
  const PForm w = lvfol::build_lv_form(spec);
  const std::string text = lvfol::format_form(w);
  EXPECT_EQ(lvfol::parse_form(text), w);
  EXPECT_EQ(lvfol::format_form(lvfol::parse_form(text)), text);
  EXPECT_EQ(lvfol::format_form(PForm(4, 2)), "0\n");
  EXPECT_THROW((void)lvfol::parse_form("dx0^dx1 : x0\ndx2 : x1\n"), lvfol::ParseError);
  EXPECT_THROW((void)lvfol::parse_form("dx1^dx0 : x0\n"), lvfol::ParseError);
}

// d^2 = 0, i_X^2 = 0, naturality of pull-back.
TEST(FormsProperties, DSquaredZero) {
  Rng rng(31);
  for (int s = 0; s < 100; ++s) {
    const int deg = static_cast<int>(rng.uniform(0, 2));
    const PForm w = lvfol::testing::random_form(rng, 4, deg, 3, 3);
    ASSERT_TRUE(lvfol::exterior_derivative(lvfol::exterior_derivative(w)).is_zero());
  }
}

TEST(FormsProperties, ContractionSquaredZero) {
  Rng rng(32);
  for (int s = 0; s < 100; ++s) {
    const int deg = static_cast<int>(rng.uniform(2, 4));
    const PForm w = lvfol::testing::random_form(rng, 4, deg, 2, 3);
    const PVField x = lvfol::testing::random_field(rng, 4, 2, 2);
    ASSERT_TRUE(lvfol::interior_product(x, lvfol::interior_product(x, w)).is_zero());
    const PVField r = PVField::radial(4);
    ASSERT_TRUE(lvfol::interior_product(r, lvfol::interior_product(r, w)).is_zero());
  }
}

TEST(FormsProperties, PullbackNaturality) {
  Rng rng(33);
  for (int s = 0; s < 100; ++s) {
    const PForm w = lvfol::testing::random_form(rng, 4, 1, 2, 3);
    const PForm v = lvfol::testing::random_form(rng, 4, 1, 2, 2);
    std::vector<MPoly> f;
    for (int k = 0; k < 4; ++k) f.push_back(lvfol::testing::random_poly(rng, 3, 2, 2));
    ASSERT_EQ(lvfol::pullback_form(f, lvfol::exterior_derivative(w)),
              lvfol::exterior_derivative(lvfol::pullback_form(f, w)));
    ASSERT_EQ(lvfol::pullback_form(f, lvfol::wedge(w, v)),
              lvfol::wedge(lvfol::pullback_form(f, w), lvfol::pullback_form(f, v)));
  }
}

TEST(FormsProperties, LeibnizForWedge) {
  Rng rng(34);
  for (int s = 0; s < 100; ++s) {
    const PForm w = lvfol::testing::random_form(rng, 4, 1, 2, 2);
    const PForm v = lvfol::testing::random_form(rng, 4, 2, 2, 2);
    ASSERT_EQ(lvfol::exterior_derivative(lvfol::wedge(w, v)),
              lvfol::wedge(lvfol::exterior_derivative(w), v) - lvfol::wedge(w, lvfol::exterior_derivative(v)));
  }
}

TEST(FormsProperties, TextRoundTrip) {
  Rng rng(35);
  for (int s = 0; s < 50; ++s) {
    const PForm w = lvfol::testing::random_form(rng, 5, 2, 3, 4);
    const std::string text = lvfol::format_form(w);
    ASSERT_EQ(lvfol::parse_form(text, 5), w) << text;
  }
}
