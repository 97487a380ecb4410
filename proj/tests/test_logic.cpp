#include <catch_amalgamated.hpp>

#include "formula_gen.hpp"
#include "laxkit/laxkit.hpp"

using namespace laxkit;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

const FunctorSpec kPfin = FunctorSpec::pfin(FunctorSpec::id());
const FunctorSpec kDfin = FunctorSpec::dfin(FunctorSpec::id());

FunctorSpec labelled() {
  const Carrier labels({"0", "0.2", "0.4", "0.7", "0.8"});
  const FuzzyRel metric = FuzzyRel::tabulate(labels, labels, [&](std::size_t i, std::size_t j) {
    return abs_diff(Scalar::parse(labels.id(i)), Scalar::parse(labels.id(j)));
  });
  return FunctorSpec::pair(FunctorSpec::constant(labels, metric), FunctorSpec::pfin(FunctorSpec::id()));
}

LiftingSpec labelled_lifting() {
  return LiftingSpec::pair_sum(q("1/2"), q("1/2"), LiftingSpec::constant(), LiftingSpec::hausdorff());
}

Element node(const FunctorSpec& f, const char* label, std::vector<std::size_t> succ) {
  std::vector<Element> items;
  for (auto s : succ) items.push_back(Element::state(s));
  return Element::pair(Element::label(*f.left().labels().index_of(label)), Element::set(std::move(items)));
}

}  // namespace

TEST_CASE("parsing", "[parse]") {
  const Formula f = parse_formula("(<>( 1/2 ) /\\ 0.3) (+) 1/4");
  const Formula expected = Formula::plus(
      Formula::conj(Formula::modal("<>", {Formula::constant(q("1/2"))}), Formula::constant(q("3/10"))), q("1/4"));
  CHECK(f == expected);
  CHECK(parse_formula("0.2") == Formula::constant(Scalar(1, 5)));
  CHECK(parse_formula("~[](0) \\/ 1") == Formula::disj(Formula::neg(Formula::modal("[]", {Formula::constant(Scalar::zero())})),
                                                         Formula::constant(Scalar::one())));
  CHECK(parse_formula("fst.@0.7") == Formula::modal("fst.@0.7", {}));
  CHECK(parse_formula("a /\\ b \\/ c") == Formula::disj(Formula::conj(Formula::modal("a", {}), Formula::modal("b", {})),
                                                        Formula::modal("c", {})));
  CHECK(parse_formula("E(1/3) (-) 0.1 (+) 1/5") ==
        Formula::plus(Formula::minus(Formula::modal("E", {Formula::constant(q("1/3"))}), q("0.1")), q("1/5")));

  try {
    parse_formula("<>(1/2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
    CHECK(std::string(e.what()).find("offset 6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_formula("3/2"), ParseError);
  CHECK_THROWS_AS(parse_formula("1/2 /\\"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("0.5 0.5"), ParseError);
}

TEST_CASE("print and parse round-trip", "[parse]") {
  Rng rng(51);
  const ModalitySet mods({modal::diamond(), modal::box(), modal::expectation()});
  for (int i = 0; i < 300; ++i) {
    const Formula f = testgen::random_formula(rng, mods, 4);
    const std::string text = print(f);
    const Formula g = parse_formula(text);
    CHECK(g == f);
    CHECK(print(g) == text);
  }
}

TEST_CASE("evaluation", "[eval]") {
  SECTION("constants") {
    const Coalgebra c(kPfin, Carrier({"x"}), {Element::set({})});
    Evaluator eval(c, ModalitySet({modal::diamond(), modal::box()}));
    CHECK(eval.at(Formula::constant(q("1/3")), 0) == q("1/3"));
    CHECK(eval.at(parse_formula("<>(1)"), 0) == Scalar::zero());
    CHECK(eval.at(parse_formula("[](0)"), 0) == Scalar::one());
  }
  SECTION("probabilistic diamond") {
    // Maybe over distributions: a deadlock reads 0, a distribution its expectation.
    const FunctorSpec f = FunctorSpec::maybe(kDfin);
    const Coalgebra c(f, Carrier({"dead", "mix"}),
                      {Element::nothing(), Element::just(Element::dist({{Element::state(0), q("1/4")}, {Element::state(1), q("3/4")}}))});
    const ModalitySet mods = standard_modalities(f, LiftingSpec::maybe(LiftingSpec::kantorovich()));
    Evaluator eval(c, mods);
    const Formula phi = Formula::modal("<E>", {parse_formula("<E>(1) (+) 1/5")});
    // The inner formula is 1/5 at dead and 1 at mix, so the outer one is 1/4 * 1/5 + 3/4 at mix.
    CHECK(eval.at(phi, 0) == Scalar::zero());
    CHECK(eval.at(phi, 1) == q("4/5"));
    CHECK(eval.at(Formula::modal("[E]", {Formula::constant(Scalar::zero())}), 0) == Scalar::one());
  }
  SECTION("arity and unknown modalities") {
    const Coalgebra c(kPfin, Carrier({"x"}), {Element::set({})});
    Evaluator eval(c, ModalitySet({modal::diamond()}));
    CHECK_THROWS_AS(eval(parse_formula("<>")), StructureError);
    CHECK_THROWS_AS(eval(parse_formula("nope(1)")), StructureError);
  }
}

TEST_CASE("negation duality", "[negation]") {
  Rng rng(52);
  const ModalitySet mods({modal::diamond(), modal::box()});
  for (int i = 0; i < 200; ++i) {
    const Coalgebra c = random_coalgebra(rng, kPfin, 1, 5);
    Evaluator eval(c, mods);
    const Formula f = testgen::random_formula(rng, mods, 4);
    const Predicate& v = eval(f);
    const Predicate& n = eval(Formula::neg(f));
    for (std::size_t x = 0; x < c.size(); ++x) CHECK(n[x] == v[x].complement());
  }
  const ModalitySet one_sided({modal::expectation(), Modality{"half", 0, true, true, std::nullopt,
                                                               [](const Element&, std::span<const Predicate>) { return q("1/2"); }}});
  CHECK_THROWS_AS(negate(parse_formula("half"), one_sided), StructureError);
  CHECK(negate(parse_formula("E(1/4)"), one_sided) == parse_formula("E(3/4)"));
}

TEST_CASE("presentations and Moss evaluation", "[moss]") {
  const FunctorSpec f = labelled();
  const Extension ext(f, labelled_lifting());
  const Coalgebra a(f, Carrier({"a1", "a2", "a3"}), {node(f, "0.7", {1, 2}), node(f, "0.2", {}), node(f, "0.8", {})});
  const Coalgebra b(f, Carrier({"b1", "b2", "b3"}), {node(f, "0.4", {1, 2}), node(f, "0.7", {}), node(f, "0", {})});

  SECTION("synthesis on the labelled example") {
    const Union u = disjoint_union(a, b);
    Synthesizer synth(u.system);
    CHECK(synth.formula(u.right[0], 0) == Formula::constant(Scalar::zero()));
    const Formula phi = synth.formula(u.right[0], 2);
    CHECK(phi.rank() == 2);
    CHECK(phi.op() == FormulaOp::Moss);
    CHECK(phi.shape() == node(f, "0.4", {0, 1}));
    Evaluator eval(u.system, ModalitySet{}, &ext);
    CHECK(ominus(eval.at(phi, u.left[0]), eval.at(phi, u.right[0])) == q("0.2"));
    CHECK(eval.at(phi, u.right[0]) == Scalar::zero());

    // A leaf target at rank one: the gap is the weighted label difference plus the Hausdorff term for empty successors.
    const Formula leaf = synth.formula(u.right[2], 1);  // b3, label 0
    CHECK(ominus(eval.at(leaf, u.left[1]), eval.at(leaf, u.right[2])) == q("1/2") * q("0.2"));
    CHECK(eval.at(leaf, u.left[0]) == q("0.85"));
  }

  SECTION("logical distance equals the fixpoint chain") {
    const auto chain = fixpoint_chain(ext, a, b, 4);
    for (std::size_t n = 0; n <= 4; ++n) CHECK(logical_distance(ext, a, b, n).matrix == chain[n]);
    CHECK(logical_distance(ext, a, b, 2).matrix(0, 0) == q("0.2"));
    const LogicalDistance zero = logical_distance(ext, a, b, 0);
    for (const auto& v : zero.matrix.values()) CHECK(v == Scalar::zero());
  }

  SECTION("synthesised formulas round-trip through JSON") {
    const Union u = disjoint_union(a, b);
    Synthesizer synth(u.system);
    const Formula phi = synth.formula(u.right[0], 3);
    const json j = to_json(phi, &f);
    const Formula back = formula_from_json(j, &f);
    CHECK(back == phi);
    CHECK_THROWS_AS(print(phi), StructureError);
  }

  SECTION("other functors") {
    Rng rng(53);
    const std::pair<FunctorSpec, LiftingSpec> cases[] = {
        {kDfin, LiftingSpec::discount(q("1/2"), LiftingSpec::kantorovich())},
        {kPfin, LiftingSpec::hausdorff(LiftingSpec::id(), HausdorffVariant::Left)},
        {FunctorSpec::maybe(kDfin), LiftingSpec::maybe(LiftingSpec::wasserstein())},
    };
    for (const auto& [g, l] : cases) {
      const Extension e(g, l);
      for (int i = 0; i < 5; ++i) {
        const Coalgebra x = random_coalgebra(rng, g, 1, 4, "x"), y = random_coalgebra(rng, g, 1, 4, "y");
        const auto chain = fixpoint_chain(e, x, y, 3);
        for (std::size_t n = 0; n <= 3; ++n) CHECK(logical_distance(e, x, y, n).matrix == chain[n]);
      }
    }
  }
}

TEST_CASE("logic is nonexpansive for the standard modalities", "[logic]") {
  Rng rng(54);
  const FunctorSpec f = labelled();
  const Extension ext(f, labelled_lifting());
  const ModalitySet mods = standard_modalities(f, labelled_lifting());
  for (int i = 0; i < 10; ++i) {
    const Coalgebra c = random_coalgebra(rng, f, 2, 5);
    DistanceOptions opt;
    opt.max_iter = 60;
    const DistanceResult d = behavioural_distance(ext, c, c, opt);
    Evaluator eval(c, mods);
    for (int k = 0; k < 30; ++k) {
      const Formula phi = testgen::random_formula(rng, mods, 4);
      const Predicate& v = eval(phi);
      for (std::size_t x = 0; x < c.size(); ++x)
        for (std::size_t y = 0; y < c.size(); ++y) CHECK(ominus(v[x], v[y]) <= d.matrix(x, y));
    }
  }
}
