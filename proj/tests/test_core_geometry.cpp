#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "setconv/distance.hpp"
#include "setconv/errors.hpp"
#include "setconv/ext_real.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"

using namespace setconv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Oracle: textbook double loop, no early aborts, no reordering.
ExtReal brute_excess(const PointCloud& c, const PointCloud& d, const NormSpec& norm) {
  if (c.empty()) return 0.0;
  if (d.empty()) return ExtReal::infinity();
  double worst = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    double best = kInf;
    for (size_t j = 0; j < d.size(); ++j) {
      best = std::min(best, norm.distance(c[i], d[j]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

ExtReal brute_dl(const PointCloud& c, const PointCloud& d, double rho, const NormSpec& norm) {
  PointCloud ct(c.dim());
  PointCloud dt(d.dim());
  for (size_t i = 0; i < c.size(); ++i) {
    std::vector<double> origin(c.dim(), 0.0);
    if (norm.distance(c[i], origin) <= rho) ct.push_back(c[i]);
  }
  for (size_t j = 0; j < d.size(); ++j) {
    std::vector<double> origin(d.dim(), 0.0);
    if (norm.distance(d[j], origin) <= rho) dt.push_back(d[j]);
  }
  return ext_max(brute_excess(ct, d, norm), brute_excess(dt, c, norm));
}

PointCloud random_cloud(std::mt19937& rng, int dim, int max_pts) {
  std::uniform_int_distribution<int> n_dist(0, max_pts);
  std::uniform_real_distribution<double> x_dist(-3.0, 3.0);
  int n = n_dist(rng);
  PointCloud c(dim);
  for (int i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (double& v : p) v = x_dist(rng);
    c.push_back(p);
  }
  return c;
}

}  // namespace

TEST_CASE("extended reals follow the minimization conventions") {
  ExtReal pos = ExtReal::infinity();
  ExtReal neg = ExtReal::neg_infinity();
  CHECK((pos + neg).is_pos_inf());
  CHECK((neg + pos).is_pos_inf());
  CHECK((ExtReal(1.0) + pos).is_pos_inf());
  CHECK((ExtReal(1.0) + neg).is_neg_inf());
  CHECK((ExtReal(2.0) + ExtReal(3.0)).value() == 5.0);
  CHECK(ext_min(pos, ExtReal(1.0)) == ExtReal(1.0));
  CHECK(ext_max(neg, ExtReal(1.0)) == ExtReal(1.0));
  CHECK(neg < ExtReal(0.0));
  CHECK(ExtReal(0.0) < pos);
  CHECK((-pos).is_neg_inf());
}

TEST_CASE("norms evaluate and validate dimensions") {
  auto e2 = NormSpec::euclidean();
  auto mx = NormSpec::max_norm();
  std::vector<double> v{3.0, 4.0};
  CHECK(e2(v) == doctest::Approx(5.0));
  CHECK(mx(v) == doctest::Approx(4.0));
  CHECK(e2.dimension() == -1);

  auto prod = NormSpec::product({{2, NormSpec::euclidean()}, {1, NormSpec::euclidean()}});
  CHECK(prod.dimension() == 3);
  std::vector<double> a{0.0, 0.0, 0.0};
  std::vector<double> b{3.0, 4.0, 2.0};
  CHECK(prod.distance(a, b) == doctest::Approx(5.0));  // max(5, 2)
  std::vector<double> c{1.0, 1.0, 7.0};
  CHECK(prod(c) == doctest::Approx(7.0));

  std::vector<double> wrong{1.0, 2.0};
  CHECK_THROWS_AS(prod(wrong), ValidationError);
  CHECK_THROWS_AS(prod.check_dimension(2, "test"), ValidationError);
  CHECK_THROWS_AS(NormSpec::product({}), ValidationError);
  CHECK_THROWS_AS(NormSpec::product({{0, NormSpec::euclidean()}}), ValidationError);
}

TEST_CASE("point clouds reject non-finite coordinates and deduplicate") {
  PointCloud c(2);
  c.push_back({1.0, 2.0});
  c.push_back({1.0, 2.0});
  c.push_back({3.0, 4.0});
  CHECK(c.size() == 3);
  CHECK(c.deduplicated().size() == 2);
  CHECK_THROWS_AS(c.push_back({1.0, std::nan("")}), ValidationError);
  CHECK_THROWS_AS(c.push_back({kInf, 0.0}), ValidationError);
  CHECK_THROWS_AS(c.push_back({1.0}), ValidationError);
  CHECK_THROWS_AS(PointCloud::from_points(2, {{1.0, 2.0, 3.0}}), ValidationError);
  CHECK(c[2][0] == 3.0);

  Ball ball{{0.0, 0.0}, 1.0, NormSpec::max_norm()};
  std::vector<double> inside{1.0, 0.5};
  std::vector<double> outside{1.5, 0.5};
  CHECK(ball.contains(inside));  // boundary is in (closed ball)
  CHECK(!ball.contains(outside));
}

TEST_CASE("point-to-set distance: hand values") {
  auto c = PointCloud::from_points(2, {{0.0, 0.0}, {3.0, 4.0}});
  std::vector<double> x{3.0, 4.0};
  CHECK(point_to_set_distance(x, c, NormSpec::euclidean()).value() == doctest::Approx(0.0));
  std::vector<double> y{6.0, 8.0};
  CHECK(point_to_set_distance(y, c, NormSpec::euclidean()).value() == doctest::Approx(5.0));
  CHECK(point_to_set_distance(y, c, NormSpec::max_norm()).value() == doctest::Approx(4.0));
  CHECK(point_to_set_distance(y, PointCloud(2), NormSpec::euclidean()).is_pos_inf());
}

TEST_CASE("excess and truncated Hausdorff: hand values") {
  auto c = PointCloud::from_points(1, {{0.0}, {1.0}});
  auto d = PointCloud::from_points(1, {{0.5}});
  auto norm = NormSpec::euclidean();
  CHECK(excess(c, d, norm).value() == doctest::Approx(0.5));
  CHECK(excess(d, c, norm).value() == doctest::Approx(0.5));
  CHECK(truncated_hausdorff(c, d, 10.0, norm).value() == doctest::Approx(0.5));

  // Truncation removes the far point of C, shrinking the C-side excess.
  auto far = PointCloud::from_points(1, {{0.0}, {9.0}});
  auto near = PointCloud::from_points(1, {{0.0}});
  CHECK(excess(far, near, norm).value() == doctest::Approx(9.0));
  CHECK(truncated_hausdorff(far, near, 1.0, norm).value() == doctest::Approx(0.0));
}

TEST_CASE("empty-set conventions") {
  auto norm = NormSpec::euclidean();
  PointCloud empty(1);
  auto c = PointCloud::from_points(1, {{0.0}});

  CHECK(excess(empty, c, norm) == ExtReal(0.0));
  CHECK(excess(c, empty, norm).is_pos_inf());
  CHECK(excess(empty, empty, norm) == ExtReal(0.0));

  CHECK(truncated_hausdorff(c, empty, 1.0, norm).is_pos_inf());
  CHECK(truncated_hausdorff(empty, c, 1.0, norm).is_pos_inf());
  CHECK(truncated_hausdorff(empty, empty, 1.0, norm) == ExtReal(0.0));

  auto detail = truncated_hausdorff_detail(empty, empty, 1.0, norm);
  CHECK(detail.c_truncation_empty);
  CHECK(detail.d_truncation_empty);
  CHECK(detail.value == ExtReal(0.0));

  // Nonempty sets out of the window: truncations empty, value still finite 0.
  auto off = PointCloud::from_points(1, {{5.0}});
  auto d2 = truncated_hausdorff_detail(off, off, 1.0, norm);
  CHECK(d2.c_truncation_empty);
  CHECK(d2.d_truncation_empty);
  CHECK(d2.value == ExtReal(0.0));

  // Mixed: C inside the window, D outside but nonempty.
  auto in = PointCloud::from_points(1, {{0.0}});
  auto d3 = truncated_hausdorff_detail(in, off, 1.0, norm);
  CHECK(!d3.c_truncation_empty);
  CHECK(d3.d_truncation_empty);
  CHECK(d3.value.value() == doctest::Approx(5.0));
}

TEST_CASE("truncate keeps the closed ball, supports off-origin centers") {
  auto c = PointCloud::from_points(1, {{-2.0}, {-1.0}, {0.0}, {1.0}, {2.0}});
  auto t = truncate(c, 1.0, NormSpec::euclidean());
  CHECK(t.size() == 3);  // -1, 0, 1 (boundary included)
  std::vector<double> center{2.0};
  auto t2 = truncate(c, 1.0, NormSpec::euclidean(), center);
  CHECK(t2.size() == 2);  // 1, 2
  CHECK_THROWS_AS(truncate(c, -1.0, NormSpec::euclidean()), ValidationError);
}

TEST_CASE("excess and dl match the brute-force oracle bit for bit") {
  std::mt19937 rng(20240517);
  std::vector<NormSpec> norms{NormSpec::euclidean(), NormSpec::max_norm(),
                              NormSpec::product({{1, NormSpec::euclidean()},
                                                 {1, NormSpec::euclidean()}})};
  int nonempty_pairs = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_cloud(rng, 2, 40);
    auto d = random_cloud(rng, 2, 40);
    const auto& norm = norms[trial % norms.size()];
    auto got = excess(c, d, norm);
    auto want = brute_excess(c, d, norm);
    CHECK(got == want);  // exact: same arithmetic, only the scan order differs
    for (double rho : {0.5, 1.5, 3.0}) {
      CHECK(truncated_hausdorff(c, d, rho, norm) == brute_dl(c, d, rho, norm));
    }
    if (!c.empty() && !d.empty()) ++nonempty_pairs;
  }
  CHECK(nonempty_pairs > 30);  // the sweep actually exercised nontrivial pairs
}

TEST_CASE("metric-like properties on random clouds") {
  std::mt19937 rng(911);
  auto norm = NormSpec::euclidean();
  for (int trial = 0; trial < 25; ++trial) {
    auto c = random_cloud(rng, 2, 30);
    auto d = random_cloud(rng, 2, 30);
    if (c.empty() || d.empty()) continue;

    // Symmetry and self-distance.
    CHECK(truncated_hausdorff(c, d, 2.0, norm) == truncated_hausdorff(d, c, 2.0, norm));
    CHECK(truncated_hausdorff(c, c, 2.0, norm) == ExtReal(0.0));

    // Monotone in the truncation radius.
    auto small = truncated_hausdorff(c, d, 1.0, norm);
    auto large = truncated_hausdorff(c, d, 3.5, norm);
    CHECK(small <= large);

    // dist(., C) is 1-Lipschitz.
    std::uniform_real_distribution<double> x_dist(-3.0, 3.0);
    std::vector<double> x{x_dist(rng), x_dist(rng)};
    std::vector<double> y{x_dist(rng), x_dist(rng)};
    double dx = point_to_set_distance(x, c, norm).value();
    double dy = point_to_set_distance(y, c, norm).value();
    CHECK(std::abs(dx - dy) <= norm.distance(x, y) + 1e-12);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  auto c1 = PointCloud::from_points(1, {{0.0}});
  auto c2 = PointCloud::from_points(2, {{0.0, 0.0}});
  CHECK_THROWS_AS(excess(c1, c2, NormSpec::euclidean()), ValidationError);
  CHECK_THROWS_AS(truncated_hausdorff(c1, c2, 1.0, NormSpec::euclidean()), ValidationError);
  std::vector<double> x{0.0};
  CHECK_THROWS_AS(point_to_set_distance(x, c2, NormSpec::euclidean()), ValidationError);
}
