#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"
#include "opineq/io.hpp"

using namespace opineq;

TEST(Io, RoundTripComplex) {
  Rng rng = test::rng_for(800);
  const HermitianMatrix A = test::random_hermitian(rng, 4);
  const HermitianMatrix back = hermitian_from_json(matrix_to_json(A));
  EXPECT_EQ(test::max_abs_diff(A, back), 0.0);
}

TEST(Io, ImaginaryPartIsOptional) {
  const json j = json::parse(R"({"dim": 2, "re": [[1, 2], [2, 5]]})");
  const HermitianMatrix A = hermitian_from_json(j);
  EXPECT_EQ(A(0, 1), std::complex<double>(2, 0));
  EXPECT_EQ(A(1, 1), std::complex<double>(5, 0));
}

TEST(Io, RejectsMalformedLiterals) {
  EXPECT_ANY_THROW(hermitian_from_json(json::parse(R"({"dim": 3, "re": [[1, 2], [2, 5]]})")));
  EXPECT_ANY_THROW(hermitian_from_json(json::parse(R"({"dim": 2, "re": [[1, 2], [2]]})")));
  EXPECT_ANY_THROW(hermitian_from_json(json::parse(R"({"dim": 2, "re": [[1, 2], [2, 5]], "im": [[0]]})")));
  EXPECT_ANY_THROW(hermitian_from_json(json::parse(R"({"re": [[1, 2, 3], [2, 5, 6]]})")));
  EXPECT_ANY_THROW(hermitian_from_json(json::parse(R"([1, 2])")));
}

TEST(Io, RectangularMatrices) {
  const ComplexMatrix K = complex_matrix_from_json(json::parse(R"({"re": [[1, 0], [0, 1], [0, 0]]})"));
  EXPECT_EQ(K.rows(), 3);
  EXPECT_EQ(K.cols(), 2);
}

TEST(Io, Files) {
  const auto path = std::filesystem::temp_directory_path() / "opineq_io_test.json";
  const HermitianMatrix A = HermitianMatrix::diagonal({1.0, 2.0, 3.0});
  write_json_file(path.string(), matrix_to_json(A));
  EXPECT_EQ(test::max_abs_diff(read_hermitian_file(path.string()), A), 0.0);
  std::filesystem::remove(path);
  EXPECT_ANY_THROW(read_hermitian_file("/nonexistent/matrix.json"));
  EXPECT_EQ(read_hermitian_file(test::fixture("sqrt_geo_A1.json"))(0, 1), std::complex<double>(1, 0));
}
