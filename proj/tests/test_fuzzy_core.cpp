#include <catch_amalgamated.hpp>

#include "laxkit/laxkit.hpp"
#include "oracles.hpp"

using namespace laxkit;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

FuzzyRel rel(const Carrier& a, const Carrier& b, std::initializer_list<const char*> values) {
  std::vector<Scalar> v;
  for (const char* s : values) v.push_back(q(s));
  return FuzzyRel(a, b, std::move(v));
}

}  // namespace

TEST_CASE("scalars are exact and truncated", "[scalar]") {
  CHECK(q("0.2") == Scalar(1, 5));
  CHECK(q("3/10").str() == "3/10");
  CHECK(oplus(q("0.6"), q("0.7")) == Scalar::one());
  CHECK(ominus(q("0.2"), q("0.7")) == Scalar::zero());
  CHECK(ominus(q("0.7"), q("0.2")) == q("1/2"));
  CHECK(q("1/3").complement() == q("2/3"));
  CHECK(abs_diff(q("0.2"), q("0.7")) == q("1/2"));
  CHECK_THROWS_AS(Scalar(Rational(3, 2)), StructureError);
  CHECK_THROWS_AS(q("-1/4"), StructureError);
  CHECK_THROWS_AS(q("1/0"), ParseError);
  CHECK_THROWS_AS(q("0.2.3"), ParseError);
  CHECK(Scalar::clamp(Rational(5, 4)) == Scalar::one());
  CHECK(Scalar::clamp(Rational(-1, 4)) == Scalar::zero());
}

TEST_CASE("carriers reject duplicate ids", "[carrier]") {
  CHECK_THROWS_AS(Carrier({"a", "b", "a"}), StructureError);
  const Carrier c({"x", "y"});
  CHECK(c.index_of("y") == 1);
  CHECK_FALSE(c.index_of("z"));
  CHECK_THROWS(c.at("z"));
  CHECK(Carrier::indices(3).ids() == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("composition", "[compose]") {
  const Carrier a({"a1", "a2"}), b({"b1", "b2"}), c({"c1", "c2"});
  SECTION("diagonal is a unit") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
      const FuzzyRel r = random_relation(rng, a, b);
      CHECK(compose(r, diagonal(b)) == r);
      CHECK(compose(diagonal(a), r) == r);
    }
  }
  SECTION("truncated sum on singletons") {
    const Carrier x({"x"}), y({"y"}), z({"z"});
    CHECK(compose(rel(x, y, {"0.6"}), rel(y, z, {"0.7"}))(0, 0) == Scalar::one());
  }
  SECTION("two by two by two") {
    const FuzzyRel r = rel(a, b, {"0.2", "0.9", "1", "0.1"});
    const FuzzyRel s = rel(b, c, {"0.3", "1", "0.4", "0"});
    const FuzzyRel rs = compose(r, s);
    CHECK(rs(0, 0) == q("0.5"));
    const auto m = oracle::compose(oracle::to_matrix(r), oracle::to_matrix(s), 2, 2);
    CHECK(oracle::to_matrix(rs) == m);
  }
  SECTION("random instances against brute force") {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
      const Carrier x = random_carrier(rng, 0, 4, "x"), y = random_carrier(rng, 0, 4, "y"),
                    z = random_carrier(rng, 0, 4, "z");
      const FuzzyRel r = random_relation(rng, x, y), s = random_relation(rng, y, z);
      CHECK(oracle::to_matrix(compose(r, s)) == oracle::compose(oracle::to_matrix(r), oracle::to_matrix(s), y.size(), z.size()));
    }
  }
  SECTION("carrier mismatch") {
    CHECK_THROWS_AS(compose(FuzzyRel(a, b), FuzzyRel(c, a)), StructureError);
  }
}

TEST_CASE("converse", "[converse]") {
  const Carrier x({"x"}), y({"y1", "y2"});
  const FuzzyRel r = rel(x, y, {"0.2", "0.9"});
  const FuzzyRel rc = converse(r);
  CHECK(rc.rows() == 2);
  CHECK(rc(0, 0) == q("0.2"));
  CHECK(rc(1, 0) == q("0.9"));
  CHECK(converse(rc) == r);
  CHECK(converse(diagonal(y)) == diagonal(y));
}

TEST_CASE("graphs", "[graph]") {
  const Carrier a({"a"}), b({"b"});
  const std::vector<std::size_t> id3{0, 1, 2};
  CHECK(graph(Carrier::indices(3), Carrier::indices(3), id3) == diagonal(Carrier::indices(3)));
  const std::vector<std::size_t> f{0};
  CHECK(graph(a, b, f, q("1/4"))(0, 0) == q("1/4"));
  const Carrier c({"a1", "a2"}), d({"b1", "b2", "b3"});
  const std::vector<std::size_t> g{2, 0};
  const FuzzyRel gr = graph(c, d, g, q("1/4"));
  CHECK(gr(0, 2) == q("1/4"));
  CHECK(gr(0, 0) == Scalar::one());
  CHECK(gr(1, 0) == q("1/4"));

  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Carrier x = random_carrier(rng, 1, 4, "x"), y = random_carrier(rng, 1, 4, "y");
    const auto h = random_map(rng, x.size(), y.size());
    const FuzzyRel gh = graph(x, y, h);
    // Delta restricted to the image of h lies below gr h^op ; gr h.
    const FuzzyRel lhs = compose(converse(gh), gh);
    for (std::size_t b = 0; b < y.size(); ++b) {
      const bool hit = std::find(h.begin(), h.end(), b) != h.end();
      CHECK(lhs(b, b) == (hit ? Scalar::zero() : Scalar::one()));
    }
    // For a surjection the diagonal lies below it everywhere.
    std::vector<std::size_t> onto(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) onto[k] = k;
    const FuzzyRel go = graph(y, y, onto);
    CHECK(leq(compose(converse(go), go), diagonal(y)));
    CHECK(leq(diagonal(y), compose(converse(go), go)));
  }
}

TEST_CASE("hemimetrics and pseudometrics", "[metric]") {
  const Carrier x({"x", "y"});
  CHECK(is_hemimetric(diagonal(x)));
  CHECK(is_pseudometric(diagonal(x)));
  const FuzzyRel asym = rel(x, x, {"0", "0.3", "0.8", "0"});
  CHECK(is_hemimetric(asym));
  CHECK_FALSE(is_pseudometric(asym));
  const Carrier xyz({"x", "y", "z"});
  const FuzzyRel bad = rel(xyz, xyz, {"0", "0.9", "1", "0", "0", "0.05", "0", "0", "0"});
  CHECK_FALSE(is_hemimetric(bad));
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Carrier c = random_carrier(rng, 1, 5, "c");
    CHECK(is_hemimetric(random_hemimetric(rng, c)));
    CHECK(is_pseudometric(random_hemimetric(rng, c, true)));
  }
}

TEST_CASE("companions", "[companion]") {
  const Carrier a({"a1", "a2"}), b({"b"});
  const Predicate f{q("0.9"), q("0.4")};
  CHECK(companion(FuzzyRel(a, b), f) == Predicate{Scalar::zero()});
  CHECK(companion(diagonal(a), f) == f);
  CHECK(companion(rel(a, b, {"0.2", "0.1"}), f) == Predicate{q("0.7")});

  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Carrier x = random_carrier(rng, 0, 4, "x"), y = random_carrier(rng, 0, 4, "y");
    const FuzzyRel r = random_relation(rng, x, y);
    const Predicate p = random_predicate(rng, x.size());
    const Predicate g = companion(r, p);
    CHECK(is_nonexpansive_pair(r, p, g));
    CHECK_NOTHROW(NonexpansivePair(r, p, g));
    // Least such g: lowering any positive entry breaks nonexpansiveness.
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k].is_zero()) continue;
      Predicate lower = g;
      lower[k] = Scalar::zero();
      CHECK_FALSE(is_nonexpansive_pair(r, p, lower));
      CHECK_THROWS_AS(NonexpansivePair(r, p, lower), StructureError);
    }
  }
}

TEST_CASE("sup distance", "[sup]") {
  const Carrier x({"x", "y"});
  Rng rng(6);
  const FuzzyRel r = random_relation(rng, x, x);
  CHECK(sup_distance(r, r) == Scalar::zero());
  CHECK(sup_distance(diagonal(x, q("1/3")), diagonal(x)) == q("1/3"));
  const Carrier c({"1", "2", "3"});
  for (int i = 0; i < 50; ++i) {
    const FuzzyRel s = random_relation(rng, c, c), t = random_relation(rng, c, c);
    Scalar best;
    for (std::size_t k = 0; k < 9; ++k) best = std::max(best, abs_diff(s.values()[k], t.values()[k]));
    CHECK(sup_distance(s, t) == best);
  }
}

TEST_CASE("reindexing is composition with graphs", "[reindex]") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Carrier a = random_carrier(rng, 1, 4, "a"), b = random_carrier(rng, 1, 4, "b");
    const Carrier x = random_carrier(rng, 1, 3, "x"), y = random_carrier(rng, 1, 3, "y");
    const FuzzyRel r = random_relation(rng, a, b);
    const auto f = random_map(rng, x.size(), a.size());
    const auto g = random_map(rng, y.size(), b.size());
    const FuzzyRel viaGraphs = compose(compose(graph(x, a, f), r), converse(graph(y, b, g)));
    CHECK(reindex(r, x, f, y, g) == viaGraphs);
  }
}
