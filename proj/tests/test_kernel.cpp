#include <doctest.h>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dsom/diffusion.hpp"
#include "test_support.hpp"

using namespace dsom;

namespace {

std::size_t toroidal_manhattan(std::size_t i, std::size_t j, std::size_t L) {
    const std::size_t di = std::min(i, L - i);
    const std::size_t dj = std::min(j, L - j);
    return di + dj;
}

}  // namespace

TEST_CASE("delta kernel at zero steps") {
    const DiffusionKernel k = compute_kernel(5, 0.25f, 0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(k.at(i, j) == (i == 0 && j == 0 ? 1.0f : 0.0f));
}

TEST_CASE("one step at quarter coefficient puts a quarter on each axis neighbor") {
    const DiffusionKernel k = compute_kernel(5, 0.25f, 1);
    CHECK(k.at(0, 0) == 1.0f);
    CHECK(k.at(0, 1) == 0.25f);
    CHECK(k.at(0, 4) == 0.25f);
    CHECK(k.at(1, 0) == 0.25f);
    CHECK(k.at(4, 0) == 0.25f);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if (toroidal_manhattan(i, j, 5) > 1) CHECK(k.at(i, j) == 0.0f);
}

TEST_CASE("two steps: quarter on axis-1, eighth on diagonals, sixteenth on axis-2") {
    const DiffusionKernel k = compute_kernel(5, 0.25f, 2);
    CHECK(k.at(0, 0) == 1.0f);
    CHECK(k.at(0, 1) == 0.25f);
    CHECK(k.at(1, 0) == 0.25f);
    CHECK(k.at(1, 1) == 0.125f);
    CHECK(k.at(1, 4) == 0.125f);
    CHECK(k.at(4, 4) == 0.125f);
    CHECK(k.at(0, 2) == 0.0625f);
    CHECK(k.at(2, 0) == 0.0625f);
    CHECK(k.at(0, 3) == 0.0625f);
}

TEST_CASE("kernel invariants across sides, coefficients and steps") {
    for (std::size_t L : {3, 5, 8, 16}) {
        for (float D : {0.05f, 0.1f, 0.25f}) {
            for (int T = 0; T <= int(L); ++T) {
                const DiffusionKernel k = compute_kernel(L, D, T);
                CHECK(k.at(0, 0) == 1.0f);
                for (std::size_t i = 0; i < L; ++i) {
                    for (std::size_t j = 0; j < L; ++j) {
                        const float v = k.at(i, j);
                        CHECK(v >= 0.0f);
                        CHECK(v <= 1.0f);
                        if (toroidal_manhattan(i, j, L) > std::size_t(T))
                            CHECK(v == 0.0f);
                        // dihedral symmetry, bit-exact
                        CHECK(v == k.at((L - i) % L, j));
                        CHECK(v == k.at(i, (L - j) % L));
                        CHECK(v == k.at(j, i));
                    }
                }
            }
        }
    }
}

TEST_CASE("support only grows with more steps") {
    for (int T = 0; T < 9; ++T) {
        const DiffusionKernel a = compute_kernel(9, 0.25f, T);
        const DiffusionKernel b = compute_kernel(9, 0.25f, T + 1);
        for (std::size_t i = 0; i < 81; ++i)
            if (a.values.data[i] > 0.0f) CHECK(b.values.data[i] > 0.0f);
    }
}

TEST_CASE("values decay monotonically along the first row up to the wrap point") {
    for (std::size_t L : {5, 9, 16}) {
        for (int T = 0; T <= int(L / 2); ++T) {
            const DiffusionKernel k = compute_kernel(L, 0.25f, T);
            for (std::size_t j = 0; j + 1 <= L / 2; ++j)
                CHECK(k.at(0, j) >= k.at(0, j + 1));
        }
    }
}

TEST_CASE("stability and argument guards") {
    CHECK_THROWS_AS(compute_kernel(5, 0.3f, 1), std::invalid_argument);
    CHECK_THROWS_AS(compute_kernel(5, 0.0f, 1), std::invalid_argument);
    CHECK_THROWS_AS(compute_kernel(5, -0.1f, 1), std::invalid_argument);
    CHECK_THROWS_AS(compute_kernel(1, 0.25f, 1), std::invalid_argument);
    CHECK_THROWS_AS(compute_kernel(5, 0.25f, -1), std::invalid_argument);
    CHECK_NOTHROW(compute_kernel(2, 0.25f, 3));
}

TEST_CASE("winner_to_grid maps flat indices row-major") {
    CHECK(winner_to_grid(0, 10) == GridCoord{0, 0});
    CHECK(winner_to_grid(10, 10) == GridCoord{1, 0});
    CHECK(winner_to_grid(57, 10) == GridCoord{5, 7});
    CHECK_THROWS_AS(winner_to_grid(100, 10), std::invalid_argument);
}

TEST_CASE("shifted delta kernel is a one-hot at the centered flat index") {
    const DiffusionKernel k = compute_kernel(5, 0.25f, 0);
    std::vector<float> out(25);
    shifted_flat_row(k, GridCoord{2, 3}, out.data());
    for (std::size_t f = 0; f < 25; ++f)
        CHECK(out[f] == (f == 13 ? 1.0f : 0.0f));
}

TEST_CASE("shift to the origin is the identity flattening") {
    const DiffusionKernel k = compute_kernel(7, 0.1f, 4);
    std::vector<float> out(49);
    shifted_flat_row(k, GridCoord{0, 0}, out.data());
    for (std::size_t i = 0; i < 49; ++i)
        CHECK(out[i] == k.values.data[i]);
}

TEST_CASE("shift wraps around both axes") {
    const DiffusionKernel k = compute_kernel(5, 0.25f, 1);
    std::vector<float> out(25);
    shifted_flat_row(k, GridCoord{4, 4}, out.data());
    CHECK(out[24] == 1.0f);   // peak at (4,4)
    CHECK(out[19] == 0.25f);  // (3,4)
    CHECK(out[23] == 0.25f);  // (4,3)
    CHECK(out[20] == 0.25f);  // (4,0): column wrap
    CHECK(out[4] == 0.25f);   // (0,4): row wrap
}

TEST_CASE("shifting preserves the multiset of kernel values and peaks at the center") {
    const DiffusionKernel k = compute_kernel(6, 0.2f, 5);
    std::vector<float> flat(k.values.data);
    std::sort(flat.begin(), flat.end());
    for (std::size_t ci : {0, 2, 5}) {
        for (std::size_t cj : {0, 1, 4}) {
            std::vector<float> out(36);
            shifted_flat_row(k, GridCoord{ci, cj}, out.data());
            CHECK(out[ci * 6 + cj] == 1.0f);
            CHECK(*std::max_element(out.begin(), out.end()) == 1.0f);
            std::vector<float> sorted(out);
            std::sort(sorted.begin(), sorted.end());
            CHECK(sorted == flat);
        }
    }
}
