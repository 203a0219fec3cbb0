#include <doctest.h>

#include <cmath>

#include "dsom/linalg.hpp"
#include "dsom/parallel.hpp"
#include "test_support.hpp"

using namespace dsom;
using namespace dsom::test;

TEST_CASE("matmul_nt identity case") {
    Matrix a(1, 2);
    a.data = {1.0f, 0.0f};
    Matrix b(2, 2);
    b.data = {1.0f, 0.0f, 0.0f, 1.0f};
    const Matrix r = matmul_nt(a, b);
    REQUIRE(r.rows == 1);
    REQUIRE(r.cols == 2);
    CHECK(r.at(0, 0) == 1.0f);
    CHECK(r.at(0, 1) == 0.0f);
}

TEST_CASE("matmul_nt self dot product of a unit row is 1") {
    const Matrix x = random_unit_matrix(1, 16, 7);
    Matrix codebook(3, 16);
    for (std::size_t j = 0; j < 16; ++j) {
        codebook.at(0, j) = -x.at(0, j);
        codebook.at(1, j) = x.at(0, j);  // row equal to the sample
        codebook.at(2, j) = 0.1f;
    }
    const Matrix r = matmul_nt(x, codebook);
    CHECK(r.at(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("matmul_nt matches the triple-loop oracle") {
    const Matrix a = random_matrix(3, 4, 11);
    const Matrix b = random_matrix(5, 4, 12);
    CHECK(max_abs_diff(matmul_nt(a, b), naive_matmul_nt(a, b)) < 1e-6);
}

TEST_CASE("matmul_nt agrees with the oracle across shapes") {
    for (std::uint64_t seed : {1, 2, 3}) {
        for (auto [n, k, d] : {std::tuple{1, 1, 1}, {2, 3, 5}, {17, 9, 33},
                               {64, 64, 64}, {5, 64, 7}}) {
            const Matrix a = random_matrix(n, d, seed * 100 + d);
            const Matrix b = random_matrix(k, d, seed * 200 + d);
            const Matrix expected = naive_matmul_nt(a, b);
            const Matrix got = matmul_nt(a, b);
            for (std::size_t i = 0; i < got.data.size(); ++i) {
                const double rel = std::fabs(got.data[i] - expected.data[i]) /
                                   std::max(1.0, std::fabs(double(expected.data[i])));
                CHECK(rel < 1e-5);
            }
        }
    }
}

TEST_CASE("matmul_nt rejects mismatched shapes naming both") {
    const Matrix a(2, 3);
    const Matrix b(4, 5);
    bool threw = false;
    try {
        matmul_nt(a, b);
    } catch (const std::invalid_argument& e) {
        threw = true;
        const std::string msg = e.what();
        CHECK(msg.find("2x3") != std::string::npos);
        CHECK(msg.find("4x5") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("matmul_tn matches a transpose-then-multiply oracle") {
    const Matrix a = random_matrix(13, 6, 21);  // N x K
    const Matrix b = random_matrix(13, 9, 22);  // N x d
    Matrix at(6, 13);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) at.at(j, i) = a.at(i, j);
    Matrix expected(6, 9);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t m = 0; m < 9; ++m) {
            double sum = 0.0;
            for (std::size_t n = 0; n < 13; ++n)
                sum += double(at.at(k, n)) * double(b.at(n, m));
            expected.at(k, m) = float(sum);
        }
    CHECK(max_abs_diff(matmul_tn(a, b), expected) < 1e-6);
}

TEST_CASE("matmul results do not depend on the thread cap") {
    const Matrix a = random_matrix(37, 23, 31);
    const Matrix b = random_matrix(19, 23, 32);
    parallel::set_max_threads(1);
    const Matrix serial_nt = matmul_nt(a, b);
    const Matrix serial_tn = matmul_tn(random_matrix(37, 19, 33), a);
    parallel::set_max_threads(7);
    const Matrix threaded_nt = matmul_nt(a, b);
    const Matrix threaded_tn = matmul_tn(random_matrix(37, 19, 33), a);
    parallel::set_max_threads(0);
    CHECK(serial_nt.data == threaded_nt.data);  // bit-identical
    CHECK(serial_tn.data == threaded_tn.data);
}

TEST_CASE("normalize_rows 3-4-5 row") {
    Matrix m(1, 2);
    m.data = {3.0f, 4.0f};
    const auto report = normalize_rows(m);
    CHECK(report.degenerate_rows.empty());
    CHECK(m.at(0, 0) == doctest::Approx(0.6).epsilon(1e-7));
    CHECK(m.at(0, 1) == doctest::Approx(0.8).epsilon(1e-7));
}

TEST_CASE("normalize_rows flags zero rows and leaves them unchanged") {
    Matrix m(2, 2);
    m.data = {0.0f, 0.0f, 1.0f, 1.0f};
    const auto report = normalize_rows(m);
    REQUIRE(report.degenerate_rows.size() == 1);
    CHECK(report.degenerate_rows[0] == 0);
    CHECK(m.at(0, 0) == 0.0f);
    CHECK(m.at(0, 1) == 0.0f);
}

TEST_CASE("normalize_rows leaves unit norms within 1e-6") {
    Matrix m = random_matrix(10, 784, 41);
    normalize_rows(m);
    for (std::size_t r = 0; r < m.rows; ++r)
        CHECK(std::fabs(row_norm(m, r) - 1.0) < 1e-6);
}

TEST_CASE("normalize_rows is idempotent within 1e-7") {
    Matrix once = random_matrix(8, 33, 43);
    normalize_rows(once);
    Matrix twice = once;
    normalize_rows(twice);
    CHECK(max_abs_diff(once, twice) < 1e-7);
}

TEST_CASE("argmax_rows basics and tie-break") {
    Matrix m(2, 3);
    m.data = {0.1f, 0.9f, 0.3f, 0.5f, 0.5f, 0.2f};
    const IndexVector idx = argmax_rows(m);
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 0);  // tie goes to the lowest index
}

TEST_CASE("argmax_rows matches a linear-scan oracle") {
    const Matrix m = random_matrix(100, 50, 47);
    const IndexVector idx = argmax_rows(m);
    for (std::size_t n = 0; n < m.rows; ++n) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < m.cols; ++k)
            if (m.at(n, k) > m.at(n, best)) best = k;
        CHECK(idx[n] == best);
    }
}

TEST_CASE("mean_alignment_error endpoints") {
    Matrix u(3, 4, 0.0f);
    u.at(0, 0) = 1.0f;
    u.at(1, 1) = 1.0f;
    u.at(2, 2) = 1.0f;
    CHECK(mean_alignment_error(u, u) == 0.0f);

    Matrix v = u;
    for (float& x : v.data) x = -x;
    CHECK(mean_alignment_error(u, v) == 2.0f);
}

TEST_CASE("mean_alignment_error matches a scalar loop oracle") {
    const Matrix u = random_unit_matrix(8, 4, 53);
    const Matrix v = random_unit_matrix(8, 4, 54);
    double sum = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        double dot = 0.0;
        for (std::size_t j = 0; j < 4; ++j)
            dot += double(u.at(k, j)) * double(v.at(k, j));
        sum += dot;
    }
    const double expected = 1.0 - sum / 8.0;
    CHECK(double(mean_alignment_error(u, v)) == doctest::Approx(expected).epsilon(1e-6));
    CHECK_THROWS_AS(mean_alignment_error(u, random_unit_matrix(8, 5, 55)),
                    std::invalid_argument);
}

TEST_CASE("unit sphere: squared distance equals twice one minus the dot product") {
    for (std::size_t d : {2, 16, 784}) {
        const Matrix x = random_unit_matrix(64, d, 60 + d);
        const Matrix u = random_unit_matrix(64, d, 70 + d);
        for (std::size_t r = 0; r < x.rows; ++r) {
            double dist2 = 0.0, dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = double(x.at(r, j)) - double(u.at(r, j));
                dist2 += diff * diff;
                dot += double(x.at(r, j)) * double(u.at(r, j));
            }
            CHECK(dist2 == doctest::Approx(2.0 * (1.0 - dot)).epsilon(1e-6));
        }
    }
}

TEST_CASE("unit sphere: nearest by distance is nearest by dot product") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Matrix x = random_unit_matrix(1, 16, 900 + seed);
        const Matrix u = random_unit_matrix(32, 16, 950 + seed);
        std::size_t by_dist = 0, by_dot = 0;
        double best_dist = 1e300, best_dot = -1e300;
        for (std::size_t k = 0; k < u.rows; ++k) {
            double dist2 = 0.0, dot = 0.0;
            for (std::size_t j = 0; j < 16; ++j) {
                const double diff = double(x.at(0, j)) - double(u.at(k, j));
                dist2 += diff * diff;
                dot += double(x.at(0, j)) * double(u.at(k, j));
            }
            if (dist2 < best_dist) {
                best_dist = dist2;
                by_dist = k;
            }
            if (dot > best_dot) {
                best_dot = dot;
                by_dot = k;
            }
        }
        CHECK(by_dist == by_dot);
    }
}
