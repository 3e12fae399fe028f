#include "udv/grader.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace udv;

TEST_CASE("weighted distance: rho = sqrt(0.7 de^2 + 0.3 dec^2)") {
  const StabilitySample a{0.02, -0.01};
  const StabilitySample b{-0.01, 0.03};
  const double de = a.zmpe - b.zmpe, dec = a.zmpec - b.zmpec;
  CHECK(weighted_distance(a, b) ==
        doctest::Approx(std::sqrt(0.7 * de * de + 0.3 * dec * dec))
            .epsilon(1e-15));
  CHECK(weighted_distance(a, a) == 0.0);
  CHECK(weighted_distance(a, b) == weighted_distance(b, a));
}

TEST_CASE("builtin models carry the published cluster centers") {
  const ClusterModel x = builtin_model(Axis::kX);
  const double want_x[5][2] = {{0.0079, 0.0195},
                               {0.0315, 0.0293},
                               {0.0611, 0.0411},
                               {0.0937, 0.0506},
                               {0.1149, 0.0586}};
  for (int i = 0; i < 5; ++i) {
    CHECK(x.centers[i].zmpe == want_x[i][0]);
    CHECK(x.centers[i].zmpec == want_x[i][1]);
  }
  const ClusterModel y = builtin_model(Axis::kY);
  const double want_y[5][2] = {{0.0152, 0.00405},
                               {0.0213, 0.01313},
                               {0.0352, 0.0252},
                               {0.0457, 0.0406},
                               {0.0607, 0.0506}};
  for (int i = 0; i < 5; ++i) {
    CHECK(y.centers[i].zmpe == want_y[i][0]);
    CHECK(y.centers[i].zmpec == want_y[i][1]);
  }
  CHECK_NOTHROW(x.validate());
  CHECK_NOTHROW(y.validate());
}

TEST_CASE("model validation rejects unsorted centers") {
  ClusterModel m = builtin_model(Axis::kX);
  std::swap(m.centers[0], m.centers[4]);
  CHECK_THROWS(m.validate());
}

TEST_CASE("classify: center hits, rest state, and sign invariance") {
  const ClusterModel m = builtin_model(Axis::kX);
  CHECK(classify({0.0079, 0.0195}, m) == 1);
  CHECK(classify({0.1149, 0.0586}, m) == 5);
  CHECK(classify({0.0, 0.0}, m) == 1);
  // Classification works on magnitudes, so signs must not matter.
  CHECK(classify({-0.0937, -0.0506}, m) == 4);
  // Far beyond the last center: still the least-stable level.
  CHECK(classify({10.0, 10.0}, m) == 5);
}

TEST_CASE("classify: exact ties resolve to the less stable level") {
  ClusterModel m;
  // Binary-exact coordinates so the two distances are bit-identical.
  m.centers = {{{0.0, 0.0}, {0.25, 0.0}, {0.5, 0.0}, {0.75, 0.0},
                {1.0, 0.0}}};
  // (0.375, 0) is equidistant from the L2 and L3 centers.
  CHECK(classify({0.375, 0.0}, m) == 3);
}

TEST_CASE("k-means recovers five synthetic blobs within 10%") {
  const double truth[5][2] = {{0.010, 0.020},
                              {0.032, 0.030},
                              {0.060, 0.041},
                              {0.092, 0.050},
                              {0.118, 0.059}};
  std::mt19937_64 rng(99);
  std::normal_distribution<double> jitter(0.0, 0.0015);
  std::vector<StabilitySample> data;
  for (int b = 0; b < 5; ++b)
    for (int i = 0; i < 200; ++i)
      data.push_back({truth[b][0] + jitter(rng), truth[b][1] + jitter(rng)});

  std::vector<double> inertia;
  const ClusterModel m = kmeans_train(data, /*seed=*/1, 1000, 1e-12, &inertia);
  CHECK_NOTHROW(m.validate());
  for (int b = 0; b < 5; ++b) {
    CHECK(m.centers[b].zmpe == doctest::Approx(truth[b][0]).epsilon(0.10));
    CHECK(m.centers[b].zmpec == doctest::Approx(truth[b][1]).epsilon(0.10));
  }
  // The within-cluster inertia never increases between assignment passes.
  REQUIRE(inertia.size() >= 2);
  for (std::size_t i = 1; i < inertia.size(); ++i)
    CHECK(inertia[i] <= inertia[i - 1] + 1e-15);
}

TEST_CASE("k-means is deterministic for a fixed seed") {
  const auto data = generate_dataset(Axis::kX, 400, 7);
  const ClusterModel a = kmeans_train(data, 3);
  const ClusterModel b = kmeans_train(data, 3);
  for (int i = 0; i < 5; ++i) {
    CHECK(a.centers[i].zmpe == b.centers[i].zmpe);
    CHECK(a.centers[i].zmpec == b.centers[i].zmpec);
  }
}

TEST_CASE("k-means trains on magnitudes: centers are non-negative") {
  std::vector<StabilitySample> data;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (int i = 0; i < 500; ++i) data.push_back({u(rng), u(rng)});
  const ClusterModel m = kmeans_train(data, 11);
  for (const auto& c : m.centers) {
    CHECK(c.zmpe >= 0.0);
    CHECK(c.zmpec >= 0.0);
  }
}

TEST_CASE("k-means rejects datasets smaller than k") {
  std::vector<StabilitySample> tiny(3, StabilitySample{0.01, 0.01});
  CHECK_THROWS(kmeans_train(tiny, 1));
}

TEST_CASE("generate_dataset is seed-deterministic and well-formed") {
  const auto a = generate_dataset(Axis::kY, 300, 42);
  const auto b = generate_dataset(Axis::kY, 300, 42);
  const auto c = generate_dataset(Axis::kY, 300, 43);
  REQUIRE(a.size() == 300);
  REQUIRE(b.size() == 300);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].zmpe == b[i].zmpe);
    CHECK(a[i].zmpec == b[i].zmpec);
    CHECK(std::isfinite(a[i].zmpe));
    CHECK(std::isfinite(a[i].zmpec));
    if (a[i].zmpe != c[i].zmpe) differs = true;
  }
  CHECK(differs);  // a different seed perturbs the runs
}

TEST_CASE("model file: save/load roundtrip preserves every center") {
  GraderModel m{builtin_model(Axis::kX), builtin_model(Axis::kY)};
  std::stringstream buf;
  save_model(m, buf);
  const GraderModel back = load_model(buf);
  for (int i = 0; i < 5; ++i) {
    CHECK(back.x.centers[i].zmpe == m.x.centers[i].zmpe);
    CHECK(back.x.centers[i].zmpec == m.x.centers[i].zmpec);
    CHECK(back.y.centers[i].zmpe == m.y.centers[i].zmpe);
    CHECK(back.y.centers[i].zmpec == m.y.centers[i].zmpec);
  }
}

TEST_CASE("model file: malformed input throws") {
  std::stringstream truncated("x 1 0.01 0.02\nx 2 0.03 0.04\n");
  CHECK_THROWS_AS(load_model(truncated), std::runtime_error);
  std::stringstream garbage("x 1 banana 0.02\n");
  CHECK_THROWS_AS(load_model(garbage), std::runtime_error);
  std::stringstream bad_axis("q 1 0.01 0.02\n");
  CHECK_THROWS_AS(load_model(bad_axis), std::runtime_error);
}
