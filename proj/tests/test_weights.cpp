#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rankproj/error.hpp"
#include "rankproj/weights.hpp"
#include "test_support.hpp"

using namespace rankproj;
using testing::item_name;

namespace {

std::vector<std::string> first_ids(std::size_t k) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < k; ++i) ids.push_back(item_name(i));
  return ids;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("derive_constraints: counts and labels") {
  std::mt19937_64 rng(1);
  auto d = testing::make_dataset(testing::random_rows(rng, 10, 3));

  auto six = derive_constraints({first_ids(6)}, d);
  CHECK(six.size() == 30);
  CHECK(std::count_if(six.begin(), six.end(), [](auto& c) { return c.label == 1; }) == 15);

  auto two = derive_constraints({{"item000", "item001"}}, d, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].first_id == "item000");
  CHECK(two[0].second_id == "item001");
  CHECK(two[0].label == 1);
  CHECK(two[1].first_id == "item001");
  CHECK(two[1].label == -1);
  for (std::size_t j = 0; j < 3; ++j) CHECK(two[1].diff[j] == -two[0].diff[j]);
}

TEST_CASE("derive_constraints: diffs are normalized-row subtractions") {
  const std::vector<std::vector<double>> rows = {
      {10, 1, 5}, {20, 3, 5.5}, {30, 2, 7}, {15, 9, 6}, {12, 4, 8}, {28, 0, 9}};
  auto d = testing::make_dataset(rows);
  // independent min-max computed here
  auto norm = [&](std::size_t i, std::size_t j) {
    double lo = rows[0][j], hi = rows[0][j];
    for (auto& r : rows) {
      lo = std::min(lo, r[j]);
      hi = std::max(hi, r[j]);
    }
    return (rows[i][j] - lo) / (hi - lo);
  };
  std::vector<std::string> marked = {"item003", "item000", "item005", "item001", "item004", "item002"};
  auto cs = derive_constraints({marked}, d);
  REQUIRE(cs.size() == 30);
  for (const auto& c : cs) {
    const std::size_t a = d.index_of(c.first_id), b = d.index_of(c.second_id);
    for (std::size_t j = 0; j < 3; ++j) CHECK(c.diff[j] == doctest::Approx(norm(a, j) - norm(b, j)).epsilon(1e-14));
    const auto pa = std::find(marked.begin(), marked.end(), c.first_id) - marked.begin();
    const auto pb = std::find(marked.begin(), marked.end(), c.second_id) - marked.begin();
    CHECK(c.label == (pa < pb ? 1 : -1));
  }
}

TEST_CASE("derive_constraints: errors") {
  std::mt19937_64 rng(2);
  auto d = testing::make_dataset(testing::random_rows(rng, 10, 3));
  try {
    derive_constraints({first_ids(5)}, d);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
    CHECK(std::string(e.what()).find("insufficient training data") != std::string::npos);
  }
  auto dup = first_ids(6);
  dup[5] = dup[0];
  CHECK_THROWS_AS(derive_constraints({dup}, d), Error);
  auto unknown = first_ids(6);
  unknown[2] = "nope";
  try {
    derive_constraints({unknown}, d);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
}

TEST_CASE("train: 1-D data preferring larger values gives positive weight") {
  auto d = testing::make_dataset({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}, {6.0}});
  std::vector<std::string> order = {"item006", "item005", "item004", "item003", "item002", "item001"};
  auto w = train_ranking_svm(derive_constraints({order}, d));
  REQUIRE(w.w.size() == 1);
  CHECK(w.w[0] > 0.0);
  CHECK(w.meta.converged);
  CHECK(w.meta.constraints == 30);
}

TEST_CASE("train: separable constraints are all satisfied") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = testing::make_dataset(testing::random_rows(rng, 30, 4));
    std::normal_distribution<double> g;
    std::vector<double> hidden(4);
    for (auto& v : hidden) v = g(rng);
    auto ranking = rank_all(hidden, d);
    std::vector<std::string> marked;
    for (std::size_t r = 0; r < 30; r += 5) marked.push_back(ranking[r].id);
    const auto cs = derive_constraints({marked}, d);
    TrainingOptions opts;
    opts.regularization = 1e3;  // close to hard margin
    const auto w = train_ranking_svm(cs, opts);
    for (const auto& c : cs) CHECK(c.label * dot(w.w, c.diff) > 0.0);
  }
}

TEST_CASE("train: solution is a minimum of the primal objective") {
  std::mt19937_64 rng(4);
  auto d = testing::make_dataset(testing::random_rows(rng, 12, 3));
  std::vector<std::string> marked = {"item004", "item001", "item009", "item000", "item007", "item011", "item002"};
  const auto cs = derive_constraints({marked}, d);
  const auto w = train_ranking_svm(cs);
  const double best = svm_objective(w.w, cs, 1.0);
  CHECK(best == doctest::Approx(w.meta.objective));
  // convex objective: no perturbation may improve it beyond solver tolerance
  std::normal_distribution<double> g;
  for (int k = 0; k < 2000; ++k) {
    auto probe = w.w;
    const double scale = std::pow(10.0, -1 - (k % 5));
    for (auto& v : probe) v += scale * g(rng);
    CHECK(svm_objective(probe, cs, 1.0) >= best - 1e-7);
  }
}

TEST_CASE("train: contradictory constraints still give a finite w") {
  std::mt19937_64 rng(5);
  auto d = testing::make_dataset(testing::random_rows(rng, 6, 3));
  auto cs = constraints_from_pairs({{"item000", "item001"}, {"item001", "item000"}, {"item002", "item003"}}, d);
  const auto w = train_ranking_svm(cs);
  for (double v : w.w) CHECK(std::isfinite(v));
}

TEST_CASE("train: degenerate and invalid inputs") {
  auto d = testing::make_dataset({{1.0, 2.0}, {1.0, 2.0}, {3.0, 4.0}});
  auto zero = constraints_from_pairs({{"item000", "item001"}}, d);
  try {
    train_ranking_svm(zero);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("degenerate training set") != std::string::npos);
  }
  auto ok = constraints_from_pairs({{"item002", "item001"}}, d);
  TrainingOptions bad;
  bad.regularization = 0.0;
  CHECK_THROWS_AS(train_ranking_svm(ok, bad), Error);
  CHECK_THROWS_AS(train_ranking_svm(std::span(ok).first(1)), Error);
}

TEST_CASE("train: deterministic and antisymmetric") {
  std::mt19937_64 rng(6);
  auto d = testing::make_dataset(testing::random_rows(rng, 20, 5));
  const auto cs = derive_constraints({first_ids(8)}, d);
  const auto a = train_ranking_svm(cs);
  const auto b = train_ranking_svm(cs);
  CHECK(a.w == b.w);  // bitwise
  // mirrored constraints agree on satisfaction
  for (const auto& c : cs)
    for (const auto& m : cs)
      if (m.first_id == c.second_id && m.second_id == c.first_id)
        CHECK((c.label * dot(a.w, c.diff) > 0) == (m.label * dot(a.w, m.diff) > 0));
}

TEST_CASE("rank_score") {
  std::mt19937_64 rng(8);
  auto d = testing::make_dataset(testing::random_rows(rng, 15, 4));
  std::vector<double> e = {0, 0, 1, 0};
  for (std::size_t i = 0; i < 15; ++i) CHECK(rank_score(e, d.normalized_row(i)) == d.normalized()(i, 2));
  std::vector<double> z(4, 0.0);
  for (std::size_t i = 0; i < 15; ++i) CHECK(rank_score(z, d.normalized_row(i)) == 0.0);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<double> w(4);
  for (auto& v : w) v = u(rng);
  for (std::size_t i = 0; i < 15; ++i) {
    long double ref = 0;
    for (std::size_t j = 0; j < 4; ++j) ref += static_cast<long double>(w[j]) * d.normalized()(i, j);
    CHECK(std::abs(rank_score(w, d.normalized_row(i)) - static_cast<double>(ref)) < 1e-12);
  }
}

TEST_CASE("rank_all ordering and ties") {
  auto d = testing::make_dataset({{0.9, 1}, {0.1, 0}, {0.5, 0.5}});
  // normalized column 0: {1, 0, 0.5}
  auto r = rank_all(std::vector<double>{1.0, 0.0}, d);
  CHECK(r[0].id == "item000");
  CHECK(r[1].id == "item002");
  CHECK(r[2].id == "item001");
  CHECK(r[0].rank == 1);
  CHECK(r[2].rank == 3);

  auto tied = testing::make_dataset({{1.0}, {0.0}, {1.0}});
  auto t = rank_all(std::vector<double>{1.0}, tied);
  CHECK(t[0].id == "item000");
  CHECK(t[1].id == "item002");
  CHECK(t[0].rank == 1);
  CHECK(t[1].rank == 2);
}

TEST_CASE("rank_all matches a sort oracle and is invariant to positive scaling") {
  std::mt19937_64 rng(9);
  auto d = testing::make_dataset(testing::random_rows(rng, 200, 5));
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> w(5);
  for (auto& v : w) v = u(rng);
  auto r = rank_all(w, d);

  std::vector<std::pair<double, std::string>> oracle;
  for (std::size_t i = 0; i < 200; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < 5; ++j) s += w[j] * d.normalized()(i, j);
    oracle.emplace_back(-s, d.items()[i].id);
  }
  std::sort(oracle.begin(), oracle.end());
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK(r[k].id == oracle[k].second);
    CHECK(r[k].rank == static_cast<int>(k + 1));
  }
  for (double lambda : {0.001, 0.5, 3.0, 1000.0}) {
    auto scaled = w;
    for (auto& v : scaled) v *= lambda;
    auto rs = rank_all(scaled, d);
    for (std::size_t k = 0; k < 200; ++k) CHECK(rs[k].id == r[k].id);
  }
}

TEST_CASE("marked_from_drag windows around the drop position") {
  std::vector<std::string> order;
  for (char c = 'A'; c <= 'J'; ++c) order.emplace_back(1, c);
  // move H to position 2: A B H C D E F G I J; window of 6 centred on 2 -> starts at 0
  auto m = marked_from_drag(order, "H", 2);
  CHECK(m.ids == std::vector<std::string>{"A", "B", "H", "C", "D", "E"});
  // drop near the end clamps to the last 6
  auto tail = marked_from_drag(order, "A", 9);
  CHECK(tail.ids == std::vector<std::string>{"F", "G", "H", "I", "J", "A"});
  auto mid = marked_from_drag(order, "B", 6);
  CHECK(mid.ids == std::vector<std::string>{"E", "F", "G", "B", "H", "I"});
  CHECK(mid.ids.size() == kMinMarkedItems);
  CHECK_THROWS_AS(marked_from_drag(order, "Z", 1), Error);
}

TEST_CASE("preference pair file") {
  auto pairs = read_preference_pairs("preferred_id,other_id\nA,B\n C , D \n");
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1].first == "C");
  CHECK(pairs[1].second == "D");
  CHECK_THROWS_AS(read_preference_pairs(""), ParseError);
  CHECK_THROWS_AS(read_preference_pairs("A,B,C\n"), ParseError);
}
