#include "ism/linalg.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace ism;

TEST_CASE("centering matrix small cases") {
  CHECK(centering_matrix(1).values(0, 0) == doctest::Approx(0.0));

  const Matrix h2 = centering_matrix(2).values;
  CHECK(h2(0, 0) == doctest::Approx(0.5));
  CHECK(h2(0, 1) == doctest::Approx(-0.5));
  CHECK(h2(1, 0) == doctest::Approx(-0.5));
  CHECK(h2(1, 1) == doctest::Approx(0.5));

  const Matrix h4 = centering_matrix(4).values;
  CHECK((h4 * Vector::Ones(4)).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(centering_matrix(0), std::invalid_argument);
}

TEST_CASE("centering matrix annihilates constants and is idempotent") {
  for (Index n : {2, 3, 7, 25, 50}) {
    const Matrix h = centering_matrix(n).values;
    CHECK((h * Vector::Ones(n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * h - h).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("degree matrix") {
  CHECK(degree_matrix(SymmetricMatrix(Matrix::Identity(3, 3))).isApprox(Matrix::Identity(3, 3)));

  const SymmetricMatrix ones(Matrix::Ones(2, 2));
  CHECK(degree_matrix(ones).isApprox(2.0 * Matrix::Identity(2, 2)));

  Rng rng(11);
  const SymmetricMatrix m = test::random_symmetric(rng, 5);
  const Vector deg = degree_vector(m);
  for (Index i = 0; i < 5; ++i) {
    double expected = 0.0;
    for (Index j = 0; j < 5; ++j) expected += m.values(i, j);
    CHECK(deg[i] == doctest::Approx(expected));
  }
}

TEST_CASE("sorted symmetric eigendecomposition") {
  SUBCASE("diagonal input sorts ascending") {
    Vector diag(3);
    diag << 3, 1, 2;
    const EigResult eig = sorted_symmetric_eig(SymmetricMatrix(Matrix(diag.asDiagonal())));
    CHECK(eig.eigenvalues[0] == doctest::Approx(1));
    CHECK(eig.eigenvalues[1] == doctest::Approx(2));
    CHECK(eig.eigenvalues[2] == doctest::Approx(3));
    // permuted identity columns with positive signs
    CHECK(eig.eigenvectors.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(eig.eigenvectors.minCoeff() >= -1e-15);
  }

  SUBCASE("known 2x2 spectrum") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    const EigResult eig = sorted_symmetric_eig(SymmetricMatrix(m));
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1));
  }

  SUBCASE("reconstruction of a random 8x8") {
    Rng rng(3);
    const SymmetricMatrix m = test::random_symmetric(rng, 8);
    const EigResult eig = sorted_symmetric_eig(m);
    const Matrix rebuilt =
        eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose();
    CHECK((rebuilt - m.values).norm() < 1e-9 * m.values.norm());
    const double residual =
        (m.values * eig.eigenvectors - eig.eigenvectors * eig.eigenvalues.asDiagonal()).norm();
    CHECK(residual <= 1e-9 * m.values.norm());
  }

  SUBCASE("bit-identical across calls") {
    Rng rng(5);
    const SymmetricMatrix m = test::random_symmetric(rng, 12);
    const EigResult a = sorted_symmetric_eig(m);
    const EigResult b = sorted_symmetric_eig(m);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenvectors == b.eigenvectors);
  }

  SUBCASE("eigenvectors orthonormal up to n = 64") {
    for (Index n : {4, 16, 64}) {
      Rng rng(100 + static_cast<std::uint64_t>(n));
      const EigResult eig = sorted_symmetric_eig(test::random_symmetric(rng, n));
      const Matrix gram = eig.eigenvectors.transpose() * eig.eigenvectors;
      CHECK((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("non-finite input rejected") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SymmetricMatrix(m), std::invalid_argument);
  }
}

TEST_CASE("orthonormal columns helper") {
  Rng rng(17);
  const Matrix m = test::random_matrix(rng, 6, 3);
  const Matrix q = orthonormal_columns(m);
  CHECK((q.transpose() * q - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(orthonormal_columns(m) == q);  // deterministic
}

TEST_CASE("symmetric matrix gate") {
  Matrix m(2, 2);
  m << 1, 2, 2 + 1e-14, 1;
  CHECK_NOTHROW(SymmetricMatrix(m));  // tiny asymmetry repaired
  m(1, 0) = 2.5;
  CHECK_THROWS_AS(SymmetricMatrix(m), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricMatrix(Matrix::Zero(2, 3)), std::invalid_argument);
}
