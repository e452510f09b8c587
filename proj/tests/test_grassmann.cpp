#include <doctest.h>

#include <Eigen/Core>
#include <cmath>

#include "cvc/errors.hpp"
#include "cvc/grassmann.hpp"
#include "test_util.hpp"

using namespace cvc;

namespace {

// Data lying exactly in a planted d-dimensional subspace of R^l.
Eigen::MatrixXd planted_subspace_data(Eigen::Index l, Eigen::Index d,
                                      Eigen::Index n, std::uint64_t seed) {
  auto g = testutil::gen(seed);
  const Eigen::MatrixXd basis = cvc::rng::standard_normal(l, d, g);
  const Eigen::MatrixXd coeffs = cvc::rng::standard_normal(d, n, g);
  return basis * coeffs;
}

}  // namespace

TEST_CASE("learn_basis recovers a planted subspace") {
  const Eigen::MatrixXd X = planted_subspace_data(8, 3, 40, 900);
  const auto basis = grassmann::learn_basis(X, 3, 901);
  CHECK(basis.final_residual <= 1e-6 * X.norm());
  CHECK(basis.dimension == 3);
}

TEST_CASE("rank-1 data pins the single basis column to the data direction") {
  auto g = testutil::gen(902);
  Eigen::VectorXd direction = cvc::rng::standard_normal(6, 1, g);
  direction.normalize();
  Eigen::MatrixXd X(6, 15);
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  for (int i = 0; i < 15; ++i) X.col(i) = scale(g) * direction;

  const auto basis = grassmann::learn_basis(X, 1, 903);
  const double cosine = std::abs(basis.basis.col(0).dot(direction));
  CHECK(std::acos(std::min(1.0, cosine)) <= 1e-4);
}

TEST_CASE("residual history is nonincreasing") {
  for (std::uint64_t t = 0; t < 6; ++t) {
    const Eigen::MatrixXd X = testutil::random_matrix(7, 25, 910 + t);
    const auto basis = grassmann::learn_basis(X, 3, 920 + t);
    REQUIRE(!basis.residual_history.empty());
    for (std::size_t i = 1; i < basis.residual_history.size(); ++i)
      REQUIRE(basis.residual_history[i] <=
              basis.residual_history[i - 1] + 1e-9);
    REQUIRE(basis.final_residual ==
            doctest::Approx(basis.residual_history.back()));
  }
}

TEST_CASE("basis columns stay unit norm") {
  const Eigen::MatrixXd X = testutil::random_matrix(9, 30, 930);
  const auto basis = grassmann::learn_basis(X, 4, 931);
  for (int j = 0; j < 4; ++j)
    CHECK(basis.basis.col(j).norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("higher dimension never fits worse on fixed seeds") {
  const Eigen::MatrixXd X = testutil::random_matrix(8, 30, 940);
  double previous = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= 5; ++d) {
    const auto basis = grassmann::learn_basis(X, d, 941);
    REQUIRE(basis.final_residual <= previous + 1e-9);
    previous = basis.final_residual;
  }
}

TEST_CASE("learn_basis validates the dimension") {
  const Eigen::MatrixXd X = testutil::random_matrix(5, 10, 950);
  CHECK_THROWS_AS(grassmann::learn_basis(X, 0, 1), ParameterError);
  CHECK_THROWS_AS(grassmann::learn_basis(X, 6, 1), ParameterError);
}

TEST_CASE("ensemble fills the complete grid deterministically") {
  std::vector<Eigen::MatrixXd> sets;
  for (std::uint64_t s = 0; s < 3; ++s)
    sets.push_back(testutil::random_matrix(6, 12, 960 + s));

  const auto a = grassmann::build_ensemble(sets, 2, 77);
  CHECK(a.set_count() == 3);
  CHECK(a.nu == 2);
  for (const auto& per_set : a.bases) {
    CHECK(per_set.size() == 2);
    for (const auto& b : per_set) CHECK(b.basis.cols() == b.dimension);
  }

  const auto b = grassmann::build_ensemble(sets, 2, 77);
  for (int s = 0; s < 3; ++s)
    for (int d = 0; d < 2; ++d) {
      REQUIRE(a.bases[s][d].final_residual == b.bases[s][d].final_residual);
      REQUIRE((a.bases[s][d].basis - b.bases[s][d].basis).cwiseAbs().maxCoeff() ==
              0.0);
    }
}

TEST_CASE("ensemble reports the offending set and dimension") {
  std::vector<Eigen::MatrixXd> sets;
  sets.push_back(testutil::random_matrix(6, 12, 970));
  sets.push_back(testutil::random_matrix(6, 2, 971));  // rank limit 2
  try {
    grassmann::build_ensemble(sets, 4, 78);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    const std::string what = e.what();
    CHECK(what.find("set 1") != std::string::npos);
    CHECK(what.find("dimension 3") != std::string::npos);
  }
}

TEST_CASE("fusion rules on the hand-worked distance grid") {
  std::vector<Eigen::VectorXd> distances;
  Eigen::VectorXd d(2);
  d << 0.1, 0.9;
  distances.push_back(d);
  d << 0.8, 0.2;
  distances.push_back(d);
  d << 0.7, 0.3;
  distances.push_back(d);
  const std::vector<int> labels = {1, 2, 2};

  Eigen::VectorXd totals;
  CHECK(grassmann::fuse_sum(distances, &totals) == 2);
  CHECK(totals(0) == doctest::Approx(1.6));
  CHECK(totals(1) == doctest::Approx(1.4));
  CHECK(grassmann::fuse_mode(labels, distances) == 2);
}

TEST_CASE("fusion agrees when every dimension agrees") {
  std::vector<Eigen::VectorXd> distances;
  Eigen::VectorXd d(3);
  for (int k = 0; k < 4; ++k) {
    d << 0.5, 0.1 + 0.01 * k, 0.8;
    distances.push_back(d);
  }
  const std::vector<int> labels = {2, 2, 2, 2};
  CHECK(grassmann::fuse_sum(distances) == 2);
  CHECK(grassmann::fuse_mode(labels, distances) == 2);
}

TEST_CASE("mode fusion majority beats distance") {
  // Labels (1, 1, 2): mode picks 1 even though 2 has the lowest sum.
  std::vector<Eigen::VectorXd> distances;
  Eigen::VectorXd d(2);
  d << 0.4, 0.5;
  distances.push_back(d);
  d << 0.45, 0.5;
  distances.push_back(d);
  d << 0.9, 0.05;
  distances.push_back(d);
  CHECK(grassmann::fuse_mode({1, 1, 2}, distances) == 1);
  CHECK(grassmann::fuse_sum(distances) == 2);
}

TEST_CASE("ensemble classification recovers the probe's class") {
  // Three gallery sets from planted subspaces; the probe set re-samples the
  // second subspace.
  auto g = testutil::gen(980);
  std::vector<Eigen::MatrixXd> subspaces;
  for (int s = 0; s < 3; ++s)
    subspaces.push_back(cvc::rng::standard_normal(10, 2, g));

  std::vector<Eigen::MatrixXd> sets;
  for (int s = 0; s < 3; ++s)
    sets.push_back(subspaces[static_cast<std::size_t>(s)] *
                   cvc::rng::standard_normal(2, 20, g));
  sets.push_back(subspaces[1] * cvc::rng::standard_normal(2, 20, g));

  const auto ensemble = grassmann::build_ensemble(sets, 3, 81);
  const std::vector<int> set_labels = {1, 2, 3, 0};  // probe label unused

  proximity::ProximityConfig config;
  config.method = proximity::Method::lasso;
  config.w = 0.01;
  for (const auto fusion : {grassmann::Fusion::sum, grassmann::Fusion::mode}) {
    const auto outcome = grassmann::classify_ensemble(
        ensemble, set_labels, 3, fusion, config);
    CHECK(outcome.result.predicted_label == 2);
    CHECK(static_cast<int>(outcome.per_dimension_labels.size()) <= 3);
  }
}
