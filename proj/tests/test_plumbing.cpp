#include <doctest.h>

#include <algorithm>
#include <set>

#include "loopforms/errors.hpp"
#include "loopforms/plumbing.hpp"
#include "loopforms/reduction.hpp"

using namespace loopforms;
using namespace loopforms::forms;
using namespace loopforms::plumbing;

namespace {

SingularSetData loop(long p, std::vector<int> e, std::vector<int> eps) {
  std::vector<SphereData> spheres;
  for (size_t k = 0; k < e.size(); ++k) spheres.push_back({Int(e[k]), eps[k]});
  return SingularSetData(p, std::move(spheres));
}

SingularSetData all_ones_triangle(long p = 3) { return loop(p, {1, 1, 1}, {1, 1, 1}); }
SingularSetData zero_square() { return loop(2, {0, 0, 0, 0}, {1, 1, 1, 1}); }

}  // namespace

TEST_CASE("circular matrices of the model configurations") {
  SymmetricForm tri = circular_matrix(all_ones_triangle());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(tri.at(i, j) == 1);
  CHECK(detail::rank(tri.matrix()) == 1);

  SymmetricForm sq = circular_matrix(zero_square());
  SymmetricForm expected{{Int(0), Int(1), Int(0), Int(1)},
                         {Int(1), Int(0), Int(1), Int(0)},
                         {Int(0), Int(1), Int(0), Int(1)},
                         {Int(1), Int(0), Int(1), Int(0)}};
  CHECK(sq == expected);
  CHECK(detail::rank(sq.matrix()) == 2);

  SymmetricForm twisted = circular_matrix(loop(3, {1, 1, 1}, {1, 1, -1}));
  int negatives = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (twisted.at(i, j) == -1) ++negatives;
  CHECK(negatives == 1);
}

TEST_CASE("data invariants are enforced at construction") {
  CHECK_THROWS_AS(loop(4, {1, 1, 1}, {1, 1, 1}), Error);       // p not prime
  CHECK_THROWS_AS(loop(2, {1, 1}, {1, 1}), Error);             // t < 3
  CHECK_THROWS_AS(loop(2, {1, 1, 1}, {1, 2, 1}), Error);       // bad sign
  CHECK_THROWS_AS(SingularSetData(5, {}, 1, ExceptionFlag::PseudofreeP3B1), Error);
  CHECK_NOTHROW(SingularSetData(3, {}, 1, ExceptionFlag::PseudofreeP3B1));
}

TEST_CASE("cut_redundant on the worked examples") {
  auto single = cut_redundant(all_ones_triangle(), 1, 2);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == SymmetricForm::diagonal({Int(1)}));

  auto adj = cut_redundant(zero_square(), 2, 3);
  REQUIRE(adj.size() == 1);
  CHECK(adj[0] == SymmetricForm({{Int(0), Int(1)}, {Int(1), Int(0)}}));

  auto opposite = cut_redundant(loop(2, {0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}), 0, 3);
  REQUIRE(opposite.size() == 2);
  CHECK(opposite[0].dimension() == 2);
  CHECK(opposite[1].dimension() == 2);

  CHECK_THROWS_AS(cut_redundant(zero_square(), 1, 1), Error);
}

TEST_CASE("cut chains are sign-normalized to +1 couplings") {
  // Sign sits at the pole of sphere 2, inside the surviving arc {1, 2}.
  auto chains = cut_redundant(loop(2, {3, 5, 7, 0}, {1, 1, -1, 1}), 3, 0);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0] == SymmetricForm({{Int(5), Int(1)}, {Int(1), Int(7)}}));
  // Orientation flips preserve the congruence class.
  CHECK(invariants(chains[0]).determinant ==
        invariants(SymmetricForm({{Int(5), Int(-1)}, {Int(-1), Int(7)}})).determinant);
}

TEST_CASE("validate on the worked examples") {
  auto tri = validate(all_ones_triangle());
  CHECK(tri.valid);
  CHECK(tri.circular_rank == 1);
  CHECK(tri.fixed_point_count == 3);
  bool cut_23 = false;
  for (const auto& c : tri.cuts_tested)
    if (c.i == 1 && c.j == 2 && c.unimodular) cut_23 = true;
  CHECK(cut_23);

  auto sq = validate(zero_square());
  CHECK(sq.valid);
  CHECK(sq.circular_rank == 2);

  auto bad = validate(loop(3, {2, 2, 2}, {1, 1, 1}));
  CHECK_FALSE(bad.valid);
  CHECK(bad.circular_rank == 3);
  CHECK(detail::determinant(circular_matrix(loop(3, {2, 2, 2}, {1, 1, 1})).matrix()) == 4);
}

TEST_CASE("validate verdict is invariant under rotation and reflection") {
  auto rotate = [](SingularSetData d, int r) {
    std::vector<SphereData> s;
    for (int k = 0; k < d.sphere_count(); ++k)
      s.push_back(d.sphere((k + r) % d.sphere_count()));
    return SingularSetData(d.p(), std::move(s));
  };
  auto reflect = [](SingularSetData d) {
    const int t = d.sphere_count();
    std::vector<SphereData> s(t);
    for (int k = 0; k < t; ++k) {
      s[k].euler = d.sphere(((0 - k) % t + t) % t).euler;
      s[k].sign = d.sphere(((0 - k + 1) % t + t) % t).sign;
    }
    return SingularSetData(d.p(), std::move(s));
  };
  for (const auto& d : {all_ones_triangle(), zero_square(), loop(3, {2, 2, 2}, {1, 1, 1}),
                        loop(2, {1, 0, -1, 2}, {1, -1, 1, -1})}) {
    bool base = validate(d).valid;
    for (int r = 0; r < d.sphere_count(); ++r) CHECK(validate(rotate(d, r)).valid == base);
    CHECK(validate(reflect(d)).valid == base);
  }
}

TEST_CASE("boundary lens space order") {
  CHECK(boundary_h1_order(SymmetricForm::diagonal({Int(1)})) == 1);
  CHECK(boundary_h1_order(SymmetricForm::diagonal({Int(2)})) == 2);
  CHECK(boundary_h1_order(SymmetricForm({{Int(2), Int(1)}, {Int(1), Int(2)}})) == 3);
  CHECK(boundary_h1_order(SymmetricForm::diagonal({Int(0)})) == 0);  // S^1 x S^2
  CHECK_THROWS_AS(boundary_h1_order(SymmetricForm::diagonal({Int(2), Int(3)})), NotChainShape);
  CHECK_THROWS_AS(boundary_h1_order(SymmetricForm({{Int(1), Int(2)}, {Int(2), Int(1)}})),
                  NotChainShape);
}

TEST_CASE("every unimodular cut of a valid loop is a basis of the same lattice") {
  for (const auto& d : {all_ones_triangle(), zero_square(), loop(2, {1, 1, 0, -1, 1}, {1, 1, 1, 1, 1})}) {
    auto report = validate(d);
    if (!report.valid) continue;
    std::set<std::tuple<int, int, std::string>> classes;
    for (const auto& c : report.cuts_tested) {
      if (!c.unimodular) continue;
      SymmetricForm cut = block_sum(cut_redundant(d, c.i, c.j));
      auto inv = invariants(cut);
      CHECK(inv.rank == d.sphere_count() - 2);
      classes.insert({inv.rank, inv.signature, inv.parity == Parity::Even ? "even" : "odd"});
      CHECK(boundary_h1_order(cut_redundant(d, c.i, c.j)[0]) == 1);  // S^3 boundary
    }
    CHECK(classes.size() == 1);
  }
}

TEST_CASE("enumeration matches a full orbit-by-orbit oracle") {
  // Oracle: enumerate every raw (e, eps) configuration, keep the valid ones,
  // and bucket them by the full orbit of rotations, reflections, individual
  // sphere orientation flips and global reversal.
  auto orbit_key = [](std::vector<int> e, std::vector<int> eps) {
    const int t = static_cast<int>(e.size());
    std::vector<int> best_e, best_eps;
    for (int g = 0; g < 2; ++g)
      for (int dir = 0; dir < 2; ++dir)
        for (int r = 0; r < t; ++r)
          for (int flips = 0; flips < (1 << t); ++flips) {
            std::vector<int> e2(t), eps2(t);
            for (int k = 0; k < t; ++k) {
              int idx = dir == 0 ? (r + k) % t : ((r - k) % t + t) % t;
              int pole = dir == 0 ? (r + k) % t : ((r - k + 1) % t + t) % t;
              e2[k] = (g ? -1 : 1) * e[idx];
              eps2[k] = (g ? -1 : 1) * eps[pole];
            }
            for (int m = 0; m < t; ++m)
              if (flips & (1 << m)) {
                eps2[m] = -eps2[m];
                eps2[(m + 1) % t] = -eps2[(m + 1) % t];
              }
            if (best_e.empty() || std::make_pair(e2, eps2) > std::make_pair(best_e, best_eps)) {
              best_e = e2;
              best_eps = eps2;
            }
          }
    return std::make_pair(best_e, best_eps);
  };

  for (auto [b2, bound] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{3, 1}}) {
    const int t = b2 + 2;
    std::set<std::pair<std::vector<int>, std::vector<int>>> oracle_orbits;
    std::vector<int> e(t, -bound);
    bool more = true;
    while (more) {
      for (int em = 0; em < (1 << t); ++em) {
        std::vector<int> eps(t);
        for (int k = 0; k < t; ++k) eps[k] = (em & (1 << k)) ? -1 : 1;
        std::vector<SphereData> spheres(t);
        for (int k = 0; k < t; ++k) spheres[k] = SphereData{Int(e[k]), eps[k]};
        SingularSetData data(2, std::move(spheres));
        if (validate(data).valid) oracle_orbits.insert(orbit_key(e, eps));
      }
      int k = t - 1;
      while (k >= 0 && e[k] == bound) e[k--] = -bound;
      if (k < 0) more = false;
      else ++e[k];
    }

    auto produced = enumerate_singular_data(b2, bound, 2);
    CHECK(produced.size() == oracle_orbits.size());
    std::set<std::pair<std::vector<int>, std::vector<int>>> produced_orbits;
    for (const auto& d : produced) {
      std::vector<int> e2(t), eps2(t);
      for (int k = 0; k < t; ++k) {
        e2[k] = d.sphere(k).euler.convert_to<int>();
        eps2[k] = d.sphere(k).sign;
      }
      CHECK(validate(d).valid);
      produced_orbits.insert(orbit_key(e2, eps2));
    }
    CHECK(produced_orbits == oracle_orbits);
  }
}

TEST_CASE("enumeration includes the named models") {
  auto tri = enumerate_singular_data(1, 1, 2);
  bool has_triangle = false;
  for (const auto& d : tri)
    if (d.sphere(0).euler == 1 && d.sphere(1).euler == 1 && d.sphere(2).euler == 1)
      has_triangle = true;
  CHECK(has_triangle);

  auto sq = enumerate_singular_data(2, 0, 2);
  REQUIRE(sq.size() == 1);
  for (int k = 0; k < 4; ++k) {
    CHECK(sq[0].sphere(k).euler == 0);
    CHECK(sq[0].sphere(k).sign == 1);
  }
}
