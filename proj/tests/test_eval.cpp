#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "ssmseg/errors.hpp"
#include "ssmseg/eval.hpp"

using namespace ssmseg;

namespace {

std::vector<Segment> n_segments(int n) {
    std::vector<Segment> out;
    for (int i = 0; i < n; ++i)
        out.push_back({i * 10.0, (i + 1) * 10.0, Segment::Label::other, 0.0});
    return out;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& contents) {
        path = std::filesystem::temp_directory_path() /
               ("ssmseg_ref_" + std::to_string(::getpid()) + ".txt");
        std::ofstream(path) << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("count comparison reports hyp minus ref") {
    ReferenceAnnotation ref8;
    for (int i = 1; i <= 7; ++i) ref8.change_times_s.push_back(i * 60.0);
    auto c = compare_counts(n_segments(7), ref8);
    CHECK(c.hyp_count == 7);
    CHECK(c.ref_count == 8);
    CHECK(c.delta == -1);

    ReferenceAnnotation ref7;
    for (int i = 1; i <= 6; ++i) ref7.change_times_s.push_back(i * 60.0);
    CHECK(compare_counts(n_segments(7), ref7).delta == 0);

    ReferenceAnnotation ref1;
    auto c1 = compare_counts(n_segments(1), ref1);
    CHECK(c1.hyp_count == 1);
    CHECK(c1.ref_count == 1);
    CHECK(c1.delta == 0);
}

TEST_CASE("identical boundary lists score perfectly") {
    std::vector<double> times{10.0, 55.0, 200.0};
    auto s = boundary_prf(times, times, 0.5);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
    CHECK(s.matched == 3);
}

TEST_CASE("a boundary inside tolerance matches") {
    auto s = boundary_prf({10.2}, {10.0}, 0.5);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
}

TEST_CASE("an extra hypothesis boundary costs precision only") {
    auto s = boundary_prf({10.2, 55.0}, {10.0}, 0.5);
    CHECK(s.precision == doctest::Approx(0.5));
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("matching is one-to-one") {
    // two hyps near one ref: only one may match
    auto s = boundary_prf({9.8, 10.2}, {10.0}, 0.5);
    CHECK(s.matched == 1);
    CHECK(s.precision == doctest::Approx(0.5));
    CHECK(s.recall == 1.0);
}

TEST_CASE("swapping the lists swaps precision and recall") {
    std::vector<double> a{10.0, 50.0, 90.0};
    std::vector<double> b{10.1, 49.8};
    auto ab = boundary_prf(a, b, 0.5);
    auto ba = boundary_prf(b, a, 0.5);
    CHECK(ab.precision == doctest::Approx(ba.recall));
    CHECK(ab.recall == doctest::Approx(ba.precision));
    CHECK(ab.f1 == doctest::Approx(ba.f1));
}

TEST_CASE("raising the tolerance never loses matches") {
    std::vector<double> hyp{10.0, 20.0, 31.0, 44.0};
    std::vector<double> ref{10.3, 19.0, 30.0, 45.5};
    int prev = 0;
    for (double tol : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        auto s = boundary_prf(hyp, ref, tol);
        CHECK(s.matched >= prev);
        prev = s.matched;
    }
}

TEST_CASE("empty lists define the degenerate rates") {
    auto both = boundary_prf({}, {}, 0.5);
    CHECK(both.precision == 1.0);
    CHECK(both.recall == 1.0);
    CHECK(both.f1 == 1.0);

    auto no_hyp = boundary_prf({}, {10.0}, 0.5);
    CHECK(no_hyp.precision == 0.0);
    CHECK(no_hyp.recall == 0.0);
    CHECK(no_hyp.f1 == 0.0);
}

TEST_CASE("reference files parse times, comments, and labels") {
    TempFile f(
        "# bulletin reference\n"
        "62.5\n"
        "180.0  # back to the studio\n"
        "\n"
        "label 0 newsreader\n"
        "label 1 other\n");
    auto ref = load_reference(f.path.string());
    REQUIRE(ref.change_times_s.size() == 2);
    CHECK(ref.change_times_s[0] == doctest::Approx(62.5));
    CHECK(ref.change_times_s[1] == doctest::Approx(180.0));
    CHECK(ref.n_segments() == 3);
    CHECK(ref.labels.at(0) == "newsreader");
    CHECK(ref.labels.at(1) == "other");
}

TEST_CASE("reference files round-trip through save_reference") {
    ReferenceAnnotation ref;
    ref.change_times_s = {60.0, 125.5};
    ref.labels[0] = "newsreader";
    const auto path = std::filesystem::temp_directory_path() /
                      ("ssmseg_roundtrip_" + std::to_string(::getpid()) + ".txt");
    save_reference(path.string(), ref);
    auto back = load_reference(path.string());
    std::filesystem::remove(path);
    CHECK(back.change_times_s == ref.change_times_s);
    CHECK(back.labels == ref.labels);
}

TEST_CASE("malformed reference files are rejected") {
    TempFile unsorted("100.0\n50.0\n");
    CHECK_THROWS(load_reference(unsorted.path.string()));
    TempFile garbage("not-a-number\n");
    CHECK_THROWS(load_reference(garbage.path.string()));
    CHECK_THROWS_AS(load_reference("/nonexistent/ref.txt"), FileNotFound);
}
