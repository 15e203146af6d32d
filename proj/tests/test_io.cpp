#include "dmcalc/io.hpp"
#include "dmcalc/random.hpp"
#include "helpers.hpp"

using namespace dmcalc;

TEST_CASE("matrix json round trip") {
  Rng rng(601);
  for (int t = 0; t < 5; ++t) {
    const int n = rng.uniform_int(1, 5);
    Matrix m(n, n);
    for (int i = 0; i < n * n; ++i) m(i / n, i % n) = rng.gaussian();
    CHECK((parse_matrix_json(matrix_to_json(m)) - m).norm() == 0.0);
  }
}

TEST_CASE("vector and basis json round trips") {
  Rng rng(603);
  Vector v(4);
  for (int i = 0; i < 4; ++i) v(i) = rng.gaussian();
  CHECK((parse_vector_json(vector_to_json(v)) - v).norm() == 0.0);

  const OrthonormalBasis b = random_subspace(rng, 4, 2);
  const OrthonormalBasis back = parse_basis_json(basis_to_json(b));
  CHECK(back.ambient() == 4);
  CHECK(back.k() == 2);
  CHECK((back.columns() - b.columns()).norm() == 0.0);
}

TEST_CASE("joint json carries factor dimensions") {
  Rng rng(607);
  const JointDensity j = random_joint(rng, 2, 3);
  const std::string text = joint_to_json(j.matrix(), 2, 3);
  const auto dims = parse_dims_json(text);
  REQUIRE(dims.has_value());
  CHECK(dims->first == 2);
  CHECK(dims->second == 3);
  CHECK((parse_matrix_json(text) - j.matrix()).norm() == 0.0);
  CHECK_FALSE(parse_dims_json(matrix_to_json(j.matrix())).has_value());
}

TEST_CASE("matrix json validation") {
  CHECK_THROWS_AS(parse_matrix_json("not json"), InvalidInput);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 2, "rows": [[1, 0]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 2, "rows": [[1, 0], [0]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_matrix_json(R"({"rows": [[1]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 1, "rows": [["x"]]})"), InvalidInput);
}

TEST_CASE("format_full keeps 17 significant digits") {
  const double x = 0.1234567890123456789;
  CHECK(std::stod(format_full(x)) == x);
  CHECK(format_full(1.0) == "1");
}
