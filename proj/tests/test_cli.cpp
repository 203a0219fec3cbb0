#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "dsom/ingest.hpp"
#include "dsom/io.hpp"
#include "test_support.hpp"

using namespace dsom;
using namespace dsom::test;

namespace {

#ifndef DSOM_CLI_PATH
#error "DSOM_CLI_PATH must point at the dsom binary"
#endif

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DSOM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("train produces a codebook of the advertised shape") {
    TempDir tmp("dsom-cli");
    REQUIRE(run_cli("train --synthetic blobs:4x50x16 --grid-side 4 --seed 1 --out-dir " +
                    tmp.file("run1")) == 0);
    const Matrix cb = read_matrix_csv(tmp.file("run1") + "/codebook.csv");
    CHECK(cb.rows == 16);
    CHECK(cb.cols == 16);
}

TEST_CASE("identical train invocations produce byte-identical outputs") {
    TempDir tmp("dsom-cli");
    const std::string flags = "train --synthetic blobs:3x40x12 --grid-side 3 --seed 9"
                              " --schedule 2,1 --out-dir ";
    REQUIRE(run_cli(flags + tmp.file("a")) == 0);
    REQUIRE(run_cli(flags + tmp.file("b")) == 0);
    CHECK(slurp(tmp.file("a") + "/codebook.csv") == slurp(tmp.file("b") + "/codebook.csv"));
    CHECK(slurp(tmp.file("a") + "/history.csv") == slurp(tmp.file("b") + "/history.csv"));
}

TEST_CASE("bad training flags exit nonzero") {
    CHECK(run_cli("train --synthetic blobs:2x10x8 --grid-side 0") != 0);
    CHECK(run_cli("train --grid-side 4") != 0);       // no data source
    CHECK(run_cli("train --synthetic nonsense --grid-side 4") != 0);
}

TEST_CASE("kernel dump matches the one-step hand values") {
    TempDir tmp("dsom-cli");
    REQUIRE(run_cli("kernel --side 5 --steps 1 --out-dir " + tmp.file("k")) == 0);
    CHECK(slurp(tmp.file("k") + "/kernel.csv") ==
          "1,0.25,0,0,0.25\n"
          "0.25,0,0,0,0\n"
          "0,0,0,0,0\n"
          "0,0,0,0,0\n"
          "0.25,0,0,0,0\n");
}

TEST_CASE("kernel with zero steps dumps a one-hot and honors --center") {
    TempDir tmp("dsom-cli");
    REQUIRE(run_cli("kernel --side 3 --steps 0 --out-dir " + tmp.file("k0")) == 0);
    CHECK(slurp(tmp.file("k0") + "/kernel.csv") == "1,0,0\n0,0,0\n0,0,0\n");

    REQUIRE(run_cli("kernel --side 3 --steps 0 --center 1,2 --out-dir " +
                    tmp.file("kc")) == 0);
    CHECK(slurp(tmp.file("kc") + "/kernel.csv") == "0,0,0\n0,0,1\n0,0,0\n");
}

TEST_CASE("unstable coefficients are a kernel usage error") {
    TempDir tmp("dsom-cli");
    CHECK(run_cli("kernel --side 5 --steps 1 --coeff 0.3 --out-dir " + tmp.file("x")) != 0);
    CHECK(run_cli("kernel --side 5 --steps 1 --center 9,9 --out-dir " + tmp.file("y")) != 0);
}

TEST_CASE("classify reports deterministic per-class accuracy") {
    TempDir tmp("dsom-cli");
    REQUIRE(run_cli("train --synthetic blobs:4x50x16 --grid-side 2 --seed 3 --schedule 0"
                    " --out-dir " + tmp.file("run")) == 0);
    const std::string classify = "classify --codebook " + tmp.file("run") +
                                 "/codebook.csv --synthetic blobs:4x50x16 --seed 3"
                                 " --out-dir ";
    REQUIRE(run_cli(classify + tmp.file("c1")) == 0);
    REQUIRE(run_cli(classify + tmp.file("c2")) == 0);
    const std::string csv = slurp(tmp.file("c1") + "/accuracy.csv");
    CHECK(csv == slurp(tmp.file("c2") + "/accuracy.csv"));
    CHECK(csv.find("class,total,correct,accuracy") == 0);
    CHECK(csv.find("overall,200,") != std::string::npos);

    CHECK(run_cli("classify --synthetic blobs:4x50x16") != 0);  // --codebook missing
    CHECK(run_cli("classify --codebook " + tmp.file("run") +
                  "/codebook.csv --synthetic blobs:4x50x16 --label-strategy vote"
                  " --out-dir " + tmp.file("c3")) == 0);
}

TEST_CASE("viz emits deterministic pgm and csv artifacts") {
    TempDir tmp("dsom-cli");
    REQUIRE(run_cli("train --synthetic blobs:4x60x16 --grid-side 4 --seed 5 --out-dir " +
                    tmp.file("run")) == 0);
    const std::string viz = "viz --codebook " + tmp.file("run") +
                            "/codebook.csv --synthetic blobs:4x60x16 --seed 5 --out-dir ";
    REQUIRE(run_cli(viz + tmp.file("v1")) == 0);
    REQUIRE(run_cli(viz + tmp.file("v2")) == 0);
    for (const char* name : {"/correlation.pgm", "/correlation.csv", "/tiles.pgm"})
        CHECK(slurp(tmp.file("v1") + name) == slurp(tmp.file("v2") + name));
    CHECK(slurp(tmp.file("v1") + "/correlation.pgm").rfind("P5\n4 4\n255\n", 0) == 0);
    // four blob classes -> four masks
    for (int cls = 0; cls < 4; ++cls)
        CHECK(std::filesystem::exists(tmp.file("v1") + "/class_mask_" +
                                      std::to_string(cls) + ".pgm"));
    CHECK(run_cli("viz --synthetic blobs:4x60x16") != 0);  // --codebook missing
}

TEST_CASE("bench writes one row per method with stable metrics") {
    TempDir tmp("dsom-cli");
    const std::string bench = "bench --synthetic blobs:4x40x12 --grid-side 2 --seed 11"
                              " --online-steps 500 --batch-epochs 5 --out-dir ";
    REQUIRE(run_cli(bench + tmp.file("b1")) == 0);
    REQUIRE(run_cli(bench + tmp.file("b2")) == 0);

    auto metrics = [](const std::string& text) {
        // strip the timing column; keep method and metric columns
        std::vector<std::string> rows;
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) {
            const auto first = line.find(',');
            const auto second = line.find(',', first + 1);
            rows.push_back(line.substr(0, first) + line.substr(second));
        }
        return rows;
    };
    const auto a = metrics(slurp(tmp.file("b1") + "/bench.csv"));
    const auto b = metrics(slurp(tmp.file("b2") + "/bench.csv"));
    REQUIRE(a.size() == 5);  // header + four methods
    CHECK(a == b);
    CHECK(a[1].rfind("dsom,", 0) == 0);
    CHECK(a[2].rfind("online_som,", 0) == 0);
    CHECK(a[3].rfind("batch_som,", 0) == 0);
    CHECK(a[4].rfind("spherical_kmeans,", 0) == 0);

    CHECK(run_cli("bench --grid-side 2") != 0);  // no data source
}

TEST_CASE("train manifest checksums follow the input bytes") {
    TempDir tmp("dsom-cli");
    // labeled IDX pair written through the library writers
    Matrix images(12, 16);
    Rng rng(77);
    for (float& v : images.data) v = float(rng.next_below(256));
    std::vector<int> labels(12);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = int(i % 3);
    write_idx_images(tmp.file("img.idx"), images, 4, 4);
    write_idx_labels(tmp.file("lab.idx"), labels);

    const std::string flags = "train --images " + tmp.file("img.idx") + " --labels " +
                              tmp.file("lab.idx") + " --grid-side 2 --seed 2"
                              " --schedule 1 --out-dir ";
    REQUIRE(run_cli(flags + tmp.file("m1")) == 0);
    REQUIRE(run_cli(flags + tmp.file("m2")) == 0);
    const std::string before = fnv1a64_file(tmp.file("img.idx"));

    // same input bytes, same digest in both manifests
    const std::string m1 = slurp(tmp.file("m1") + "/manifest.json");
    const std::string m2 = slurp(tmp.file("m2") + "/manifest.json");
    CHECK(m1.find(before) != std::string::npos);
    CHECK(m2.find(before) != std::string::npos);

    // touching one pixel changes the digest
    images.data[0] += 1.0f;
    write_idx_images(tmp.file("img.idx"), images, 4, 4);
    CHECK(fnv1a64_file(tmp.file("img.idx")) != before);
    REQUIRE(run_cli(flags + tmp.file("m3")) == 0);
    CHECK(slurp(tmp.file("m3") + "/manifest.json").find(before) == std::string::npos);

    // every listed output exists
    for (const char* name : {"/codebook.csv", "/history.csv", "/manifest.json"})
        CHECK(std::filesystem::exists(tmp.file("m1") + name));
}
