#include <cmath>

#include "doctest.h"
#include "goldman/repvar.hpp"
#include "goldman/surface.hpp"

using namespace goldman;

namespace {
const double pi = 3.14159265358979323846;

const SurfaceCase all_cases[] = {SurfaceCase::I, SurfaceCase::II,
                                 SurfaceCase::III};

Sym crossing_letter(SurfaceCase c) {
  return c == SurfaceCase::III ? Sym::B : Sym::A;
}
}  // namespace

TEST_CASE("case names round trip") {
  for (SurfaceCase c : all_cases) {
    CHECK(case_from_name(case_name(c)) == c);
  }
  CHECK(!case_from_name("iv").has_value());
  CHECK(!case_from_name("").has_value());
}

TEST_CASE("spec validation bounds k") {
  CHECK_THROWS(validate_spec({SurfaceCase::I, 0}));
  CHECK_THROWS(validate_spec({SurfaceCase::II, 0}, true));
  CHECK_THROWS(validate_spec({SurfaceCase::III, 0}));
  CHECK_NOTHROW(validate_spec({SurfaceCase::III, 0}, true));
  CHECK_NOTHROW(validate_spec({SurfaceCase::I, 1}));
}

TEST_CASE("euler characteristic pinned values") {
  CHECK(euler_characteristic({SurfaceCase::I, 1}) == -1);
  CHECK(euler_characteristic({SurfaceCase::III, 2}) == -4);
  CHECK(euler_characteristic({SurfaceCase::II, 3}) == -3);
}

TEST_CASE("generator count is 2 minus the euler characteristic") {
  for (SurfaceCase c : all_cases)
    for (int k = 1; k <= 6; ++k) {
      SurfaceSpec s{c, k};
      CHECK(generator_count(s) == 2 - euler_characteristic(s));
      CHECK(a_count(s) == (c == SurfaceCase::III ? 2 * k : k));
    }
}

TEST_CASE("letter and word names") {
  Letter a1{Sym::A, 0, false};
  Letter cbar_inv{Sym::Cbar, 0, true};
  CHECK(letter_name(a1) == "a1");
  CHECK(letter_name(cbar_inv) == "c~'");
  CHECK(word_name({a1, cbar_inv, inverse(a1)}) == "a1.c~'.a1'");
}

TEST_CASE("word inverse reverses and flips") {
  Word w{{Sym::B, 0, true}, {Sym::A, 1, false}};
  Word wi = inverse(w);
  REQUIRE(wi.size() == 2);
  CHECK(wi[0] == Letter{Sym::A, 1, true});
  CHECK(wi[1] == Letter{Sym::B, 0, false});
}

TEST_CASE("word evaluation multiplies leftmost first") {
  Rng rng(31);
  Su2d u = haar_sample<double>(rng);
  Su2d v = haar_sample<double>(rng);
  auto value = [&](Sym s, int) { return s == Sym::C ? u : v; };
  Word w{{Sym::C, 0, false}, {Sym::B, 0, false}, {Sym::C, 0, true}};
  CHECK(evaluate_word<double>(w, value).distance(u * v * u.inverse()) < 1e-15);
}

TEST_CASE("base relation residual: identity tuple and pinned nonzero value") {
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 2};
    RepPointd p;
    p.c = p.b = Su2d::identity();
    p.a.assign(a_count(spec), Su2d::identity());
    CHECK(relation_residual(spec, p) == 0.0);
  }

  SurfaceSpec spec{SurfaceCase::I, 1};
  RepPointd p;
  p.c = Su2d(0, 1, 0, 0);
  p.b = Su2d(std::cos(pi / 4), 0, std::sin(pi / 4), 0);
  p.a = {Su2d::identity()};
  CHECK(relation_residual(spec, p) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("relation residual is conjugation invariant") {
  Rng rng(32);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 2};
    RepPointd p;
    p.c = haar_sample<double>(rng);
    p.b = haar_sample<double>(rng);
    for (int j = 0; j < a_count(spec); ++j)
      p.a.push_back(haar_sample<double>(rng));
    double res = relation_residual(spec, p);
    CHECK(res > 0.1);  // random tuples miss the variety
    for (int i = 0; i < 10; ++i) {
      Su2d g = haar_sample<double>(rng);
      CHECK(std::abs(relation_residual(spec, conjugate_tuple(g, p)) - res) <
            1e-12);
    }
  }
}

TEST_CASE("arity mismatches are rejected") {
  SurfaceSpec spec{SurfaceCase::I, 2};
  RepPointd p;
  p.c = p.b = Su2d::identity();
  p.a = {Su2d::identity()};  // needs 2
  CHECK_THROWS_AS(relation_residual(spec, p), ArityMismatch);
}

TEST_CASE("arrow typing pinned facts") {
  Arrow b1 = arrow_of(SurfaceCase::I, Sym::B);
  CHECK(b1.src == Vertex::P);
  CHECK(b1.tgt == Vertex::P);

  Arrow b2 = arrow_of(SurfaceCase::II, Sym::B);
  CHECK(b2.src == Vertex::P);
  CHECK(b2.tgt == Vertex::Pbar);

  Arrow a3 = arrow_of(SurfaceCase::III, Sym::A);
  CHECK(a3.src == Vertex::P);
  CHECK(a3.tgt == Vertex::P);

  for (SurfaceCase c : all_cases) {
    CHECK(arrow_of(c, Sym::C).src == Vertex::P);
    CHECK(arrow_of(c, Sym::C).tgt == Vertex::P);
    CHECK(arrow_of(c, Sym::Cbar).src == Vertex::Pbar);
    CHECK(arrow_of(c, Sym::Cbar).tgt == Vertex::Pbar);
    // inverse letters reverse the arrow
    Arrow fwd = arrow_of(c, Letter{Sym::A, 0, false});
    Arrow rev = arrow_of(c, Letter{Sym::A, 0, true});
    CHECK(fwd.src == rev.tgt);
    CHECK(fwd.tgt == rev.src);
  }
}

TEST_CASE("relator words close at their vertices") {
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 2};
    auto rels = cover_relations(spec);
    Word r1 = rels[0].lhs;
    for (const Letter& l : inverse(rels[0].rhs)) r1.push_back(l);
    Word r2 = rels[1].lhs;
    for (const Letter& l : inverse(rels[1].rhs)) r2.push_back(l);
    CHECK(closed_loop_vertex(r1, c) == Vertex::P);
    CHECK(closed_loop_vertex(r2, c) == Vertex::Pbar);
  }
}

TEST_CASE("closed loops have action-invariant traces, broken paths do not") {
  Rng rng(33);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 1};
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    auto vals = letter_values(q);

    auto deviation = [&](const Word& w) {
      double tr = evaluate_word<double>(w, vals).trace();
      double worst = 0;
      for (int rep = 0; rep < 5; ++rep) {
        Su2d g = haar_sample<double>(rng);
        Su2d h = haar_sample<double>(rng);
        DoubleRepPointd q2 = act_pair(g, h, q, spec);
        double tr2 = evaluate_word<double>(w, letter_values(q2)).trace();
        worst = std::max(worst, std::abs(tr2 - tr));
      }
      return worst;
    };

    const Sym pool[] = {Sym::C, Sym::B, Sym::A, Sym::Cbar, Sym::Bbar,
                        Sym::Abar};
    int closed_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
      int len = 1 + int(rng.uniform01() * 4);
      if (len > 4) len = 4;
      Word w;
      for (int j = 0; j < len; ++j) {
        Sym s = pool[int(rng.uniform01() * 6) % 6];
        w.push_back({s, 0, rng.uniform01() < 0.5});
      }
      if (!closed_loop_vertex(w, c).has_value()) continue;
      CHECK(deviation(w) < 1e-9);
      closed_seen += 1;
    }
    CHECK(closed_seen > 0);

    // a loop at P followed by a loop at Pbar never composes, and a single
    // crossing letter dangles; both must feel the independent handles
    Word cross{{crossing_letter(c), 0, false}};
    Word split{{Sym::C, 0, false}, {Sym::Cbar, 0, false}};
    CHECK(!closed_loop_vertex(cross, c).has_value());
    CHECK(!closed_loop_vertex(split, c).has_value());
    CHECK(deviation(cross) > 1e-6);
    CHECK(deviation(split) > 1e-6);
  }
}
