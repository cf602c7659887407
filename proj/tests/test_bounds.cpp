#include "cpd/bounds.hpp"
#include "cpd/synth.hpp"
#include "cpd/tensor.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <sstream>

using namespace cpd;

namespace {

GenEig at_deg(double d) {
    return make_gen_eig(std::cos(d * M_PI / 180.0), std::sin(d * M_PI / 180.0));
}

}  // namespace

TEST_CASE("delta_j: two orthogonal eigenvalues") {
    CHECK(delta_j({at_deg(0), at_deg(90)}, 2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("delta_j: identical eigenvalues give zero") {
    CHECK(delta_j({at_deg(30), at_deg(30), at_deg(30)}, 2) == 0.0);
}

TEST_CASE("delta_j: second largest half gap of {0, 10, 90} degrees") {
    const double expected = 0.5 * std::sin(80.0 * M_PI / 180.0);
    CHECK(delta_j({at_deg(0), at_deg(10), at_deg(90)}, 2) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("delta_j: monotone non-increasing in J") {
    std::vector<GenEig> eigs = {at_deg(3), at_deg(25), at_deg(77), at_deg(120), at_deg(160)};
    double prev = 1.0;
    for (int j = 1; j <= 5; ++j) {
        double d = delta_j(eigs, j);
        CHECK(d <= prev + 1e-15);
        prev = d;
    }
    CHECK(delta_j(eigs, 6) == 0.0);
}

TEST_CASE("eps1: identity factors pass delta through") {
    CHECK(eps1(Matrix::Identity(3, 3), Matrix::Identity(3, 3), 0.3) ==
          doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("eps1: zero column collapses the bound") {
    Matrix a = Matrix::Identity(3, 3);
    a.col(1).setZero();
    CHECK(eps1(a, Matrix::Identity(3, 3), 0.4) == 0.0);
}

TEST_CASE("eps1: matches the SVD oracle after balanced rescaling") {
    Matrix a = test::random_matrix(4, 4, 500), b = test::random_matrix(4, 4, 501);
    const double delta = 0.17;
    // oracle: rescale by hand, then take sigma_min products
    Matrix ar = a, br = b;
    for (Index r = 0; r < 4; ++r) {
        const double s = std::sqrt(a.col(r).norm() * b.col(r).norm());
        ar.col(r) *= s / a.col(r).norm();
        br.col(r) *= s / b.col(r).norm();
    }
    Eigen::JacobiSVD<Matrix> sa(ar), sb(br);
    const double expected =
        sa.singularValues()(3) * sb.singularValues()(3) * delta;
    CHECK(eps1(a, b, delta) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("eps2_lower: identity and zero slices") {
    Tensor3 t(3, 3, 2);
    for (Index i = 0; i < 3; ++i) t(i, i, 0) = 1.0;
    CHECK(eps2_lower(t) == doctest::Approx(1.0).epsilon(1e-14));
    Tensor3 z(2, 2, 3);
    CHECK(eps2_lower(z) == 0.0);
}

TEST_CASE("eps2_lower: equals the per-slice SVD oracle") {
    Tensor3 t = test::random_tensor(4, 4, 3, 510);
    double expected = 0.0;
    for (Index k = 0; k < 3; ++k) {
        Eigen::JacobiSVD<Matrix> svd(t.frontal_slice(k));
        expected = std::max(expected, svd.singularValues()(3));
    }
    CHECK(eps2_lower(t) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("pencil_bound: repeated eigenvalue forces zero at J = 2") {
    Matrix a = test::random_matrix(2, 2, 520), b = test::random_matrix(2, 2, 521);
    Matrix c(2, 2);
    c.col(0) << 1, 1;
    c.col(1) << 2, 2;  // same span
    Tensor3 pencil = from_cpd({a, b, c});
    CHECK(pencil_bound(pencil, {a, b, c}, 2) == 0.0);
}

TEST_CASE("pencil_bound: hand-evaluated diagonal example") {
    Matrix a = Matrix::Identity(2, 2), b = Matrix::Identity(2, 2);
    Matrix c(2, 2);
    c.col(0) << 1, 1;
    c.col(1) << 1, 3;
    Tensor3 pencil = from_cpd({a, b, c});  // slices I, diag(1, 3)
    // chi = 2/sqrt(20), delta = chi/2; balanced scaling gives
    // sigma_min(A')^2 = sqrt(2), so the bound is sqrt(2)*delta = 1/sqrt(10)
    CHECK(pencil_bound(pencil, {a, b, c}, 2) ==
          doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("pencil_bound: never exceeds eps2_lower and is orthogonal-invariant") {
    for (uint64_t s = 0; s < 4; ++s) {
        Matrix a = test::random_matrix(4, 4, 530 + s), b = test::random_matrix(4, 4, 540 + s);
        Matrix c = test::random_matrix(2, 4, 550 + s);
        Tensor3 pencil = from_cpd({a, b, c});
        const double bound = pencil_bound(pencil, {a, b, c}, 2);
        CHECK(bound <= eps2_lower(pencil) + 1e-15);

        auto rng = make_rng(560 + s);
        Matrix q1 = haar_orthogonal(4, rng), q2 = haar_orthogonal(4, rng);
        Tensor3 rotated = mode_product(mode_product(pencil, q1.transpose(), 1),
                                       q2.transpose(), 2);
        const double rotated_bound =
            pencil_bound(rotated, {q1.transpose() * a, q2.transpose() * b, c}, 2);
        CHECK(rotated_bound == doctest::Approx(bound).epsilon(1e-10));
    }
}

TEST_CASE("rescale_bound_convention: idempotent") {
    Cpd f{test::random_matrix(4, 3, 570), test::random_matrix(4, 3, 571),
          test::random_matrix(4, 3, 572)};
    Cpd once = rescale_bound_convention(f);
    Cpd twice = rescale_bound_convention(once);
    CHECK((once.a - twice.a).norm() < 1e-12);
    CHECK((once.b - twice.b).norm() < 1e-12);
    CHECK((once.c - twice.c).norm() < 1e-12);
    // reconstruction is unchanged
    CHECK(test::max_abs_diff(from_cpd(f), from_cpd(once)) < 1e-12);
    for (Index r = 0; r < 3; ++r) {
        CHECK(once.c.col(r).norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(once.a.col(r).norm() == doctest::Approx(once.b.col(r).norm()).epsilon(1e-12));
    }
}

TEST_CASE("corollary_bound: K = 2 identity mixing reproduces pencil_bound") {
    Matrix a = test::random_matrix(3, 3, 580), b = test::random_matrix(3, 3, 581);
    Matrix c = test::random_matrix(2, 3, 582);
    Tensor3 t = from_cpd({a, b, c});
    auto [records, aggregate] = bound_for_unitary(t, {a, b, c}, 2, Matrix::Identity(2, 2));
    REQUIRE(records.size() == 1);
    CHECK(aggregate == doctest::Approx(pencil_bound(t, {a, b, c}, 2)).epsilon(1e-12));
}

TEST_CASE("corollary_bound: more unitaries can only raise the best bound") {
    Problem p = gen_problem(4, 4, 4, 4, FactorDist::Uniform01, FactorDist::Uniform01,
                            FactorDist::Uniform01, std::nullopt, 590);
    Cpd truth = rescale_bound_convention(p.truth);
    BoundReport r5 = corollary_bound(p.noiseless, truth, 2, 5, 77);
    BoundReport r50 = corollary_bound(p.noiseless, truth, 2, 50, 77);
    CHECK(r50.eps_aggregate >= r5.eps_aggregate);
    CHECK(r50.records.size() == 50 * 2);
}

TEST_CASE("haar_orthogonal: orthogonality and the n = 1 case") {
    auto rng = make_rng(600);
    Matrix u1 = haar_orthogonal(1, rng);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-15);
    Matrix u8 = haar_orthogonal(8, rng);
    CHECK((u8.transpose() * u8 - Matrix::Identity(8, 8)).norm() < 1e-12);
}

TEST_CASE("haar_orthogonal: entries have mean zero over many samples") {
    auto rng = make_rng(601);
    double sum = 0.0;
    const int n_samples = 10000;
    for (int i = 0; i < n_samples; ++i) sum += haar_orthogonal(4, rng)(0, 0);
    // entry variance is 1/4, so 4 sigma over 1e4 samples is 0.02
    CHECK(std::abs(sum / n_samples) < 0.02);
}

TEST_CASE("write_bound_csv: schema header and row count") {
    Problem p = gen_problem(4, 4, 4, 4, FactorDist::Uniform01, FactorDist::Uniform01,
                            FactorDist::Uniform01, std::nullopt, 610);
    BoundReport r = corollary_bound(p.noiseless, rescale_bound_convention(p.truth), 2, 3, 11);
    std::ostringstream os;
    write_bound_csv(r, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "unitary_index,pencil_index,delta,eps1,eps2_lower,eps_pencil,eps_aggregate");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6);  // 3 unitaries x 2 pencils
}
