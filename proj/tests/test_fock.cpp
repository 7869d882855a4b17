#include "doctest.h"
#include "suncs/fock.hpp"

using namespace suncs;

namespace {

// Stars and bars: states of d modes with total <= cap.
std::size_t count_up_to(int modes, int cap) { return binomial(cap + modes, modes); }

}  // namespace

TEST_CASE("cartan weights of the defining representation") {
  CHECK(cartan_weights(3, 1) == std::vector<int>{1, -1, 0});
  CHECK(cartan_weights(3, 2) == std::vector<int>{1, 1, -2});
  CHECK(cartan_weights(2, 1) == std::vector<int>{1, -1});
  for (int n = 2; n <= 5; ++n) {
    for (int a = 1; a < n; ++a) {
      const auto h = cartan_weights(n, a);
      int sum = 0;
      for (int x : h) sum += x;
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("layout mode counts and weights") {
  const ModeLayout su3 = ModeLayout::standard(3);
  CHECK(su3.reps() == std::vector<int>{1, 2});
  CHECK(su3.total_modes() == 6);
  CHECK(su3.offset(1) == 3);
  // b_3 carries -h_3 = (0, 2).
  CHECK(su3.weights()[5] == std::vector<int>{0, 2});
  CHECK(su3.conjugate_pair_only());

  const ModeLayout su4(4, {1, 2, 3});
  CHECK(su4.mode_count(1) == 6);
  CHECK_FALSE(su4.conjugate_pair_only());
  // Subset {0,1} of the F=2 block: h_1 + h_2.
  CHECK(su4.weights()[4] == std::vector<int>{0, 2, 2});

  CHECK(ModeLayout::standard(2).reps() == std::vector<int>{1});
  CHECK_THROWS_AS(ModeLayout(3, {3}), Error);
  CHECK_THROWS_AS(ModeLayout(3, {2, 1}), Error);
}

TEST_CASE("basis sizes match stars and bars") {
  CHECK(build_basis(ModeLayout(2, {1}), {{10}})->size() == 66);
  CHECK(build_basis(ModeLayout::standard(3), {{1, 1}})->size() == 16);
  CHECK(build_basis(ModeLayout::heisenberg_weyl(), {{7}})->size() == 8);
  const ModeLayout su4(4, {1, 3});
  CHECK(basis_size(su4, {{3, 2}}) == count_up_to(4, 3) * count_up_to(4, 2));
  CHECK(build_basis(su4, {{3, 2}})->size() == basis_size(su4, {{3, 2}}));
}

TEST_CASE("graded lexicographic ordering") {
  auto basis = build_basis(ModeLayout(2, {1}), {{1}});
  REQUIRE(basis->size() == 3);
  CHECK(basis->state(0).quanta == std::vector<int>{0, 0});
  CHECK(basis->state(1).quanta == std::vector<int>{1, 0});
  CHECK(basis->state(2).quanta == std::vector<int>{0, 1});
}

TEST_CASE("index lookup round trips") {
  auto basis = build_basis(ModeLayout::standard(3), {{2, 2}});
  for (std::size_t i = 0; i < basis->size(); ++i) CHECK(basis->index_of(basis->state(i)) == i);
  CHECK_FALSE(basis->find({{3, 0, 0, 0, 0, 0}}).has_value());
  CHECK_THROWS_AS(basis->index_of({{3, 0, 0, 0, 0, 0}}), Error);
}

TEST_CASE("charges and sectors") {
  auto basis = build_basis(ModeLayout(2, {1}), {{4}});
  const auto sectors = charge_sectors(*basis);
  CHECK(sectors.size() == 9);
  CHECK(sectors.begin()->first.q == std::vector<int>{-4});
  CHECK(charge_sector(*basis, {{0}}).size() == 3);  // (0,0), (1,1), (2,2)
  CHECK(charge_sector(*basis, {{7}}).empty());

  auto su3 = build_basis(ModeLayout::standard(3), {{2, 2}});
  const auto idx = su3->index_of({{1, 0, 0, 0, 0, 0}});
  CHECK(su3->charge(idx).q == std::vector<int>{1, 1});
  std::size_t total = 0;
  for (const auto& [q, members] : charge_sectors(*su3)) total += members.size();
  CHECK(total == su3->size());
}

TEST_CASE("interior and totals") {
  auto basis = build_basis(ModeLayout::standard(3), {{2, 3}});
  const auto idx = basis->index_of({{1, 1, 0, 0, 0, 3}});
  CHECK(basis->rep_total(idx, 0) == 2);
  CHECK(basis->rep_total(idx, 1) == 3);
  CHECK_FALSE(basis->interior(idx, 0));
  CHECK_FALSE(basis->interior(idx, 1));
  CHECK(basis->interior(basis->index_of({{1, 0, 0, 0, 0, 2}}), 0));
}

TEST_CASE("size guard names the cap") {
  try {
    (void)build_basis(ModeLayout(8, {1, 7}), {{40, 40}});
    FAIL("expected SizeOverflowError");
  } catch (const SizeOverflowError& e) {
    CHECK(std::string(e.what()).find("10000000") != std::string::npos);
  }
}
