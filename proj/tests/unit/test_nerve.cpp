#include "doctest.h"

#include "fixcat/catalog.hpp"
#include "fixcat/fixpoint.hpp"
#include "fixcat/generators.hpp"
#include "fixcat/nerve.hpp"
#include "oracles.hpp"

using namespace fixcat;

namespace {

AbGroupInvariants inv(std::initializer_list<long> xs) { return AbGroupInvariants{IntVector(xs.begin(), xs.end())}; }

std::vector<AbGroupInvariants> homology_upto(const CategoryPtr& c, int n) {
  auto cx = chain_complex(nerve(c, n + 1));
  std::vector<AbGroupInvariants> out;
  for (int k = 0; k <= n; ++k) out.push_back(homology(cx, k));
  return out;
}

}  // namespace

TEST_SUITE("nerve") {
  TEST_CASE("loop freeness") {
    auto wa = is_loop_free(*catalog::walking_arrow());
    CHECK(wa.loop_free);
    CHECK(wa.longest_chain == 1);
    CHECK_FALSE(is_loop_free(*catalog::cyclic_group(2)).loop_free);
    auto hx = is_loop_free(*catalog::hexagon());
    CHECK(hx.loop_free);
    CHECK(hx.longest_chain == 1);
    CHECK(is_loop_free(*catalog::chain(4)).longest_chain == 3);
  }

  TEST_CASE("simplex counts") {
    auto wa = nerve(catalog::walking_arrow(), 2);
    CHECK(wa.counts() == std::vector<std::size_t>{2, 1, 0});
    CHECK(wa.exact);
    auto hx = nerve(catalog::hexagon(), 2);
    CHECK(hx.counts() == std::vector<std::size_t>{6, 6, 0});
    CHECK(hx.exact);
    auto z2 = nerve(catalog::cyclic_group(2), 2);
    CHECK(z2.counts() == std::vector<std::size_t>{1, 1, 1});
    CHECK_FALSE(z2.exact);
  }

  TEST_CASE("boundary matrices") {
    auto cx = chain_complex(nerve(catalog::walking_arrow(), 1));
    REQUIRE(cx.boundary.size() == 2);
    CHECK(cx.boundary[1] == IntMatrix::from_rows({{-1}, {1}}));

    auto hx = chain_complex(nerve(catalog::hexagon(), 1));
    const IntMatrix& d = hx.boundary[1];
    for (std::size_t e = 0; e < d.cols(); ++e) {
      Integer plus = 0, minus = 0;
      for (std::size_t v = 0; v < d.rows(); ++v) {
        if (d(v, e) == 1) ++plus;
        if (d(v, e) == -1) ++minus;
      }
      CHECK(plus == 1);
      CHECK(minus == 1);
    }
    for (std::size_t v = 0; v < d.rows(); ++v) {
      int degree = 0;
      for (std::size_t e = 0; e < d.cols(); ++e) degree += d(v, e) != 0;
      CHECK(degree == 2);
    }

    auto dc = chain_complex(nerve(catalog::discrete({"A", "B", "C"}), 2));
    for (const auto& b : dc.boundary) CHECK(b.is_zero());
  }

  TEST_CASE("homology golden values") {
    CHECK(homology_upto(catalog::walking_arrow(), 1) == std::vector{inv({0}), inv({})});
    CHECK(homology_upto(catalog::hexagon(), 1) == std::vector{inv({0}), inv({0})});
    CHECK(homology_upto(catalog::discrete({"A", "B", "C"}), 0) == std::vector{inv({0, 0, 0})});
    CHECK(homology_upto(catalog::subset_lattice("abc"), 2) == std::vector{inv({0}), inv({}), inv({})});
  }

  TEST_CASE("ranks agree with the independent Betti computation") {
    gen::Rng rng(14);
    for (int i = 0; i < 25; ++i) {
      auto c = gen::random_loop_free(rng, 5, 20);
      auto betti = oracle::nerve_betti(*c, 2);
      auto h = homology_upto(c, 2);
      for (int k = 0; k <= 2; ++k) CHECK(h[k].free_rank() == betti[k]);
    }
  }

  TEST_CASE("induced chain maps") {
    auto hx = catalog::hexagon();
    auto nv = nerve(hx, 1);
    auto id = induced_chain_map(Functor::identity(hx), nv);
    for (const auto& m : id) CHECK(m.is_identity());

    auto rot = induced_chain_map(catalog::hexagon_rotation(), nv);
    for (const auto& m : rot) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        CHECK(m(i, i) == 0);
        int ones = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) ones += m(i, j) == 1;
        CHECK(ones == 1);
      }
    }

    auto wa = catalog::walking_arrow();
    auto c0 = induced_chain_map(Functor::constant(wa, wa, 0), nerve(wa, 1));
    CHECK(c0[0] == IntMatrix::from_rows({{1, 1}, {0, 0}}));
    CHECK(c0[1].is_zero());
  }

  TEST_CASE("Lefschetz numbers") {
    auto wa = catalog::walking_arrow();
    CHECK(lefschetz_number(Functor::identity(wa)) == 1);
    auto hx = catalog::hexagon();
    CHECK(lefschetz_number(Functor::identity(hx)) == 0);
    auto rot = lefschetz(catalog::hexagon_rotation());
    CHECK(rot.chain_level == 0);
    CHECK(rot.chain_traces == std::vector<Integer>{0, 0});
    CHECK(rot.equal);
    CHECK_THROWS_AS(lefschetz(Functor::identity(catalog::cyclic_group(2))), Error);
    CHECK_THROWS_AS(lefschetz(Functor::identity(catalog::chain(4)), 2), Error);
  }

  TEST_CASE("chain-level number counts fixed chains") {
    gen::Rng rng(15);
    for (int i = 0; i < 30; ++i) {
      auto c = gen::random_loop_free(rng, 5, 20);
      for (const auto& f : gen::all_endofunctors(c, 8)) {
        auto l = lefschetz(f);
        CHECK(l.equal);
        CHECK(Rational(l.chain_level) == l.homology_level);
        CHECK(l.chain_level == oracle::fixed_chain_count(f));
      }
    }
  }

  TEST_CASE("certificates on the 3-chain") {
    auto c = catalog::chain(3);
    std::size_t count = 0;
    gen::for_each_endofunctor(c, [&](const std::vector<Obj>& om, const std::vector<Mor>& mm) {
      Functor f(c, c, om, mm);
      auto r = strict_certificate(f);
      CHECK(r.has_initial);
      CHECK(r.prediction);
      CHECK(r.actual);
      CHECK(r.consistent);
      ++count;
      return true;
    });
    CHECK(count == 10);
  }

  TEST_CASE("rotation has no strict fixed point and no prediction") {
    auto r = strict_certificate(catalog::hexagon_rotation());
    CHECK(r.lefschetz == 0);
    CHECK_FALSE(r.prediction);
    CHECK_FALSE(r.actual);
    CHECK(r.consistent);

    auto id = strict_certificate(Functor::identity(catalog::walking_arrow()));
    CHECK(id.lefschetz == 1);
    CHECK(id.actual);
  }

  TEST_CASE("certificate along a transformation") {
    auto wa = catalog::walking_arrow();
    NatTransformation eta(Functor::constant(wa, wa, 0), Functor::identity(wa), {wa->morphism("id0"), wa->morphism("a")});
    auto r = strict_certificate(eta.from(), eta);
    CHECK(r.has_other);
    CHECK(r.traces_match);
    CHECK(r.consistent);
    CHECK(r.other_consistent);
  }

  TEST_CASE("d squared vanishes on random nerves") {
    gen::Rng rng(16);
    for (int i = 0; i < 20; ++i) {
      auto c = gen::random_concrete_category(rng, 3, 12);
      auto cx = chain_complex(nerve(c, 3));
      for (std::size_t n = 2; n < cx.boundary.size(); ++n)
        CHECK((cx.boundary[n - 1] * cx.boundary[n]).is_zero());
    }
  }
}
