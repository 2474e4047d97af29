#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI inside a scratch directory, stdout captured, stderr dropped.
class Sandbox {
public:
    Sandbox() : dir_(fs::temp_directory_path() / ("enet_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Sandbox() { fs::remove_all(dir_); }

    Run run(const std::string& args) const {
        const std::string cmd = "cd '" + dir_.string() + "' && '" ENET_CLI_PATH "' " + args + " 2>/dev/null";
        Run r;
        FILE* p = ::popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        std::array<char, 4096> buf{};
        std::size_t n = 0;
        while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) {
            r.out.append(buf.data(), n);
        }
        const int w = ::pclose(p);
        r.status = WIFEXITED(w) ? WEXITSTATUS(w) : -1;
        return r;
    }

    json run_json(const std::string& args) const {
        const Run r = run(args);
        REQUIRE(r.status == 0);
        return json::parse(r.out);
    }

    void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

private:
    fs::path dir_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes the chain and distance reads it") {
    const Sandbox box;
    const json g = box.run_json("gen geometric:2 6 g.txt");
    CHECK(g["vertices"] == 6);
    CHECK(box.read("g.txt") == "base 0\n0 1 1\n1 2 2\n2 3 4\n3 4 8\n4 5 16\n");
    CHECK(box.run_json("distance g.txt 3 4")["distance"].get<double>() == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(box.run_json("distance g.txt 2 2")["distance"].get<double>() == 0.0);
    box.run_json("gen unit 6 u.txt");
    CHECK(box.run_json("distance u.txt 0 5")["distance"].get<double>() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(box.run("distance g.txt 0 99").status == 4);
}

TEST_CASE("validate exit codes") {
    const Sandbox box;
    box.write("ok.txt", "0 1 1\n1 2 2\n");
    box.write("bad.txt", "0 0 1\n");
    box.write("neg.txt", "0 1 -1\n");
    CHECK(box.run_json("validate ok.txt")["ok"] == true);
    CHECK(box.run("validate bad.txt").status == 2);
    CHECK(box.run("validate neg.txt").status == 2);
    CHECK(box.run("validate missing.txt").status == 1);
    CHECK(box.run("no-such-command").status == 4);
}

TEST_CASE("spectra and dipoles") {
    const Sandbox box;
    box.write("e.txt", "0 1 1\n");
    const json l2 = box.run_json("spectrum e.txt --which l2");
    REQUIRE(l2["rows"].size() == 1);
    CHECK(l2["rows"][0][1].get<double>() == doctest::Approx(1.0));
    box.run_json("gen geometric:2 30 g.txt");
    const json cmp = box.run_json("spectrum g.txt --which compare");
    CHECK(cmp["matched"] == true);
    CHECK(cmp["matched_pairs"] == 29);
    const json gram = box.run_json("gramian e.txt");
    CHECK_FALSE(gram.empty());
    const json d = box.run_json("dipole g.txt 3 0");
    CHECK_FALSE(d.empty());
}

TEST_CASE("compare suites") {
    const Sandbox box;
    box.run_json("gen unit 30 u.txt");
    box.run_json("gen geometric:2 30 g.txt");
    const json t = box.run_json("compare u.txt g.txt --suite trace");
    CHECK(std::abs(t["trace"].get<double>() - (2.0 - std::ldexp(1.0, -28))) <= 1e-9);
    CHECK(t["limit"].get<double>() == 2.0);
    box.run_json("gen unit 20 u20.txt");
    box.run_json("gen geometric:2 20 g20.txt");
    CHECK(box.run_json("compare u20.txt g20.txt --suite intertwine")["max_residual"].get<double>() <= 1e-8);
    CHECK(box.run_json("compare u20.txt g20.txt --suite isometry")["isometry_defect"].get<double>() <= 1e-9);
    CHECK(box.run_json("compare u20.txt g20.txt --suite dipole")["ok"] == true);
    for (const char* s : {"dipole", "intertwine", "isometry"}) {
        const json r = box.run_json(std::string("compare u.txt u.txt --suite ") + s);
        CHECK(r["ok"] == true);
    }
    CHECK(box.run_json("compare u.txt u.txt --suite intertwine")["max_residual"].get<double>() <= 1e-12);
    CHECK(box.run_json("compare u.txt u.txt --suite trace")["trace"].get<double>() == doctest::Approx(29.0));
    const json dom = box.run_json("compare u.txt g.txt --suite domination");
    CHECK(dom.contains("moments"));
    CHECK(box.run_json("compare u.txt g.txt --suite harmonic")["ok"] == true);
    // Wrong order violates c <= c_A.
    CHECK(box.run("compare g.txt u.txt --suite trace").status == 2);
}

TEST_CASE("csv output") {
    const Sandbox box;
    box.run_json("gen geometric:2 6 g.txt");
    const Run r = box.run("--format csv distance g.txt 3 4");
    CHECK(r.status == 0);
    CHECK(r.out.find("distance,0.125") != std::string::npos);
}

TEST_CASE("defect probe, harmonic and laplacian export") {
    const Sandbox box;
    CHECK(box.run_json("defect geometric:2")["plateau"] == true);
    CHECK(box.run_json("defect unit")["plateau"] == false);
    box.run_json("gen two_sided_geometric:2 21 s.txt");
    const json h = box.run_json("harmonic s.txt");
    CHECK(h["interior_residual"].get<double>() <= 1e-10);
    CHECK(box.run("laplacian s.txt").status == 4);
    CHECK(box.run("--out lap.mtx laplacian s.txt --reduced").status == 0);
    CHECK(box.read("lap.mtx").rfind("%%MatrixMarket", 0) == 0);
}

TEST_CASE("seeded output is byte-identical") {
    const Sandbox box;
    box.run_json("gen unit 12 u.txt");
    box.run_json("gen geometric:3 12 g.txt");
    const Run a = box.run("--seed 7 compare u.txt g.txt --suite domination");
    const Run b = box.run("--seed 7 compare u.txt g.txt --suite domination");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

}  // TEST_SUITE
