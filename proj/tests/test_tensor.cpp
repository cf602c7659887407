#include "cpd/io.hpp"
#include "cpd/kernels.hpp"
#include "cpd/tensor.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <sstream>

using namespace cpd;

TEST_CASE("unfold: single nonzero entry, mode 1") {
    Tensor3 t(2, 2, 2);
    t(0, 0, 0) = 1.0;
    Matrix m = unfold(t, 1);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 4);
    Matrix expected(2, 4);
    expected << 1, 0, 0, 0,
                0, 0, 0, 0;
    CHECK((m - expected).norm() == 0.0);
}

TEST_CASE("unfold: rank-1 tensor satisfies T_[2;3,1] = b (c kr a)^T") {
    Vector a(3), b(4), c(2);
    a << 1, -2, 0.5;
    b << 2, 0, 1, -1;
    c << 3, 0.25;
    Tensor3 t = test::cpd_oracle(a, b, c);
    Matrix lhs = unfold(t, 2);
    Matrix rhs = b * khatri_rao(Matrix(c), Matrix(a)).transpose();
    CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
}

TEST_CASE("unfold/refold round trip is exact, all modes") {
    Tensor3 t = test::random_tensor(3, 4, 5, 17);
    for (int mode : {1, 2, 3}) {
        Tensor3 back = refold(unfold(t, mode), mode, 3, 4, 5);
        CHECK(test::max_abs_diff(t, back) == 0.0);
    }
    // random small dims
    for (uint64_t s = 0; s < 5; ++s) {
        auto rng = make_rng(900 + s);
        std::uniform_int_distribution<Index> d(1, 8);
        Index i1 = d(rng), i2 = d(rng), i3 = d(rng);
        Tensor3 u = test::random_tensor(i1, i2, i3, 1000 + s);
        for (int mode : {1, 2, 3})
            CHECK(test::max_abs_diff(u, refold(unfold(u, mode), mode, i1, i2, i3)) == 0.0);
    }
}

TEST_CASE("mode_product: identity leaves tensor unchanged") {
    Tensor3 t = test::random_tensor(4, 3, 5, 2);
    Tensor3 r = mode_product(t, Matrix::Identity(4, 4), 1);
    CHECK(test::max_abs_diff(t, r) < 1e-15);
}

TEST_CASE("mode_product: basis row vector selects a frontal slice") {
    Tensor3 t = test::random_tensor(3, 3, 4, 3);
    Matrix ek = Matrix::Zero(1, 4);
    ek(0, 2) = 1.0;
    Tensor3 r = mode_product(t, ek, 3);
    REQUIRE(r.dim(3) == 1);
    CHECK((r.frontal_slice(0) - t.frontal_slice(2)).norm() == 0.0);
}

TEST_CASE("mode_product: matches entrywise expansion for t x2 M^T") {
    Matrix a = test::random_matrix(4, 3, 11), b = test::random_matrix(4, 3, 12),
           c = test::random_matrix(3, 3, 13), m = test::random_matrix(4, 4, 14);
    Tensor3 t = test::cpd_oracle(a, b, c);
    Tensor3 lhs = mode_product(t, m.transpose(), 2);
    Tensor3 rhs = test::cpd_oracle(a, m.transpose() * b, c);
    CHECK(test::max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("mode_product: dimension mismatch throws") {
    Tensor3 t = test::random_tensor(3, 3, 3, 4);
    CHECK_THROWS_AS(mode_product(t, Matrix::Identity(4, 4), 1), std::invalid_argument);
}

TEST_CASE("khatri_rao: small examples") {
    Matrix x(2, 1), y(2, 1);
    x << 1, 0;
    y << 1, 1;
    Matrix k = khatri_rao(x, y);
    Vector expected(4);
    expected << 1, 1, 0, 0;
    CHECK((k.col(0) - expected).norm() == 0.0);

    Matrix e = Matrix::Identity(2, 2);
    Matrix k2 = khatri_rao(e, e);
    REQUIRE(k2.rows() == 4);
    CHECK(k2(0, 0) == 1.0);
    CHECK(k2(3, 1) == 1.0);
    CHECK(k2.col(0).sum() == 1.0);
    CHECK(k2.col(1).sum() == 1.0);

    CHECK_THROWS_AS(khatri_rao(Matrix::Ones(2, 2), Matrix::Ones(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("khatri_rao: unfolding identity against entrywise tensor oracle") {
    Matrix a = test::random_matrix(4, 3, 21), b = test::random_matrix(5, 3, 22),
           c = test::random_matrix(3, 3, 23);
    Tensor3 t = test::cpd_oracle(a, b, c);
    Matrix lhs = unfold(t, 2);
    Matrix rhs = b * khatri_rao(c, a).transpose();
    CHECK((lhs - rhs).norm() / lhs.norm() < 1e-12);
}

TEST_CASE("from_cpd: rank-1 basis vectors give a single unit entry") {
    Matrix a = Matrix::Zero(2, 1), b = Matrix::Zero(2, 1), c = Matrix::Zero(2, 1);
    a(0, 0) = b(0, 0) = c(0, 0) = 1.0;
    Tensor3 t = from_cpd({a, b, c});
    CHECK(t(0, 0, 0) == 1.0);
    CHECK(frob_norm(t) == 1.0);
}

TEST_CASE("from_cpd: adversarial fixture reproduces its frontal slices") {
    Tensor3 t = from_cpd(test::adversarial_truth());
    Matrix t1(3, 3), t2(3, 3), t3(3, 3);
    t1 = Matrix::Identity(3, 3);
    t2 << 1, 0, 0, 0, 0.5, 0, 0, 0, 0.5;
    t3 << 0, 0, 0, 0, 0, 0.2, 0, 0.2, 0;
    CHECK((t.frontal_slice(0) - t1).norm() < 1e-14);
    CHECK((t.frontal_slice(1) - t2).norm() < 1e-14);
    CHECK((t.frontal_slice(2) - t3).norm() < 1e-14);
}

TEST_CASE("from_cpd: matches the triple-loop oracle") {
    Matrix a = test::random_matrix(4, 5, 31), b = test::random_matrix(6, 5, 32),
           c = test::random_matrix(3, 5, 33);
    Tensor3 t = from_cpd({a, b, c});
    Tensor3 o = test::cpd_oracle(a, b, c);
    CHECK(test::max_abs_diff(t, o) < 1e-12);
}

TEST_CASE("frob_norm of the all-ones 2x2x2 tensor") {
    Tensor3 t(2, 2, 2);
    for (Index idx = 0; idx < 8; ++idx) t.data()[idx] = 1.0;
    CHECK(frob_norm(t) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
}

TEST_CASE("rank1_approx_matrix recovers an exact rank-1 matrix") {
    auto rng = make_rng(44);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector u(5), v(4);
    for (Index i = 0; i < 5; ++i) u(i) = gauss(rng);
    for (Index i = 0; i < 4; ++i) v(i) = gauss(rng);
    u.normalize();
    v.normalize();
    Matrix m = 3.0 * u * v.transpose();
    auto r = rank1_approx_matrix(m);
    CHECK(r.triple.sigma == doctest::Approx(3.0).epsilon(1e-10));
    const double sgn = r.triple.u.dot(u) > 0 ? 1.0 : -1.0;
    CHECK((r.triple.u - sgn * u).norm() < 1e-10);
    CHECK((r.triple.v - sgn * v).norm() < 1e-10);
}

TEST_CASE("rank1_approx_matrix on diag(2, 1)") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 1.0;
    auto r = rank1_approx_matrix(m);
    CHECK(r.triple.sigma == doctest::Approx(2.0));
    CHECK(std::abs(r.triple.u(0)) == doctest::Approx(1.0));
    CHECK(std::abs(r.triple.v(0)) == doctest::Approx(1.0));
    CHECK(r.sigma2 == doctest::Approx(1.0));
}

TEST_CASE("mode-product composition and orthogonal invariance") {
    Tensor3 t = test::random_tensor(4, 5, 6, 55);
    Matrix u = test::random_matrix(6, 6, 56), v = test::random_matrix(6, 6, 57);
    Tensor3 lhs = mode_product(mode_product(t, u, 3), v, 3);
    Tensor3 rhs = mode_product(t, v * u, 3);
    CHECK(test::max_abs_diff(lhs, rhs) < 1e-12);

    Eigen::HouseholderQR<Matrix> qr(test::random_matrix(6, 6, 58));
    Matrix q = qr.householderQ();
    CHECK(frob_norm(mode_product(t, q.transpose(), 3)) ==
          doctest::Approx(frob_norm(t)).epsilon(1e-12));
}

TEST_CASE("kernels: serial and parallel variants agree") {
    Tensor3 t = test::random_tensor(5, 7, 6, 71);
    Matrix ms, mp;
    kernels::unfold2_serial(t, ms);
    kernels::unfold2_parallel(t, mp);
    CHECK((ms - mp).norm() == 0.0);
    kernels::unfold3_serial(t, ms);
    kernels::unfold3_parallel(t, mp);
    CHECK((ms - mp).norm() == 0.0);

    Tensor3 rs(5, 7, 6), rp(5, 7, 6);
    kernels::refold2_serial(unfold(t, 2), rs);
    kernels::refold2_parallel(unfold(t, 2), rp);
    CHECK(test::max_abs_diff(rs, rp) == 0.0);
    kernels::refold3_serial(unfold(t, 3), rs);
    kernels::refold3_parallel(unfold(t, 3), rp);
    CHECK(test::max_abs_diff(rs, rp) == 0.0);

    Matrix a = test::random_matrix(5, 4, 72), b = test::random_matrix(7, 4, 73),
           c = test::random_matrix(6, 4, 74);
    Tensor3 fs(5, 7, 6), fp(5, 7, 6);
    kernels::from_cpd_serial(a, b, c, fs);
    kernels::from_cpd_parallel(a, b, c, fp);
    CHECK(test::max_abs_diff(fs, fp) < 1e-14);

    Matrix ks, kp;
    kernels::khatri_rao_serial(a, b, ks);
    kernels::khatri_rao_parallel(a, b, kp);
    CHECK((ks - kp).norm() == 0.0);
}

TEST_CASE("tensor file round trip") {
    Tensor3 t = test::random_tensor(3, 2, 4, 91);
    const std::string path = "test_tensor_io.txt";
    save_tensor(t, path);
    Tensor3 back = load_tensor(path);
    REQUIRE(back.dims() == t.dims());
    CHECK(test::max_abs_diff(t, back) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("factor sidecar round trip") {
    Cpd f{test::random_matrix(4, 2, 92), test::random_matrix(3, 2, 93),
          test::random_matrix(5, 2, 94)};
    const std::string path = "test_factors_io.txt";
    save_factors(f, path);
    Cpd back = load_factors(path);
    CHECK((back.a - f.a).norm() == 0.0);
    CHECK((back.b - f.b).norm() == 0.0);
    CHECK((back.c - f.c).norm() == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("unfolding CSV export emits one row per mode index") {
    Tensor3 t = test::random_tensor(2, 3, 2, 95);
    std::ostringstream os;
    write_matrix_csv(unfold(t, 2), os);
    std::string s = os.str();
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}
