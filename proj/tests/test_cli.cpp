#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "cli_io.hpp"
#include "elastic/verify.hpp"

namespace fs = std::filesystem;
using namespace elastic;
using json = nlohmann::json;

namespace {

struct Workdir {
    fs::path dir;
    Workdir() {
        dir = fs::temp_directory_path() / ("elastic_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workdir() { fs::remove_all(dir); }
    fs::path operator/(const std::string& name) const { return dir / name; }
};

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(const Workdir& w, const std::string& args) {
    const fs::path out = w / "stdout.txt";
    const fs::path err = w / "stderr.txt";
    const std::string cmd = "cd '" + w.dir.string() + "' && '" ELASTIC_CLI_PATH "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream o(out);
    std::ifstream e(err);
    std::stringstream so;
    std::stringstream se;
    so << o.rdbuf();
    se << e.rdbuf();
    r.out = so.str();
    r.err = se.str();
    return r;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream(p) << s;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

SampledFunction sample_function(std::uint64_t seed, std::size_t nodes) {
    verify::Rng rng(seed);
    return verify::random_function(rng, verify::random_grid(rng, nodes));
}

}  // namespace

TEST_CASE("srsf then reconstruct reproduces the input file") {
    Workdir w;
    const SampledFunction f = sample_function(1, 400);
    cli::write_atomic(w / "f.csv", cli::function_csv(f));
    REQUIRE(run(w, "srsf f.csv -o q.csv").code == 0);
    const cli::Table q = cli::read_table(w / "q.csv", 4);
    CHECK(q.rows.size() == f.size() - 1);
    const Run r = run(w, "reconstruct q.csv --f0 " + cli::format_double(f[0]) + " -o back.csv");
    REQUIRE(r.code == 0);
    const SampledFunction back = cli::read_function(w / "back.csv", false);
    REQUIRE(back.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(back.grid()[i] == f.grid()[i]);
        CHECK(std::abs(back[i] - f[i]) <= 1e-9);
    }
}

TEST_CASE("align identical files") {
    Workdir w;
    cli::write_atomic(w / "f.csv", cli::function_csv(sample_function(2, 150)));
    const Run r = run(w, "align f.csv f.csv -M 32 -o out");
    REQUIRE(r.code == 0);
    const json doc = json::parse(slurp(w / "out/result.json"));
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["distance"].get<double>() == 0.0);
    CHECK(doc["config"]["grid_size"] == 32);
    CHECK(doc["nodes_expanded"].get<std::int64_t>() > 0);
    for (const auto& pt : doc["warp"]) CHECK(pt[0].get<double>() == pt[1].get<double>());
    const SampledFunction warp = cli::read_function(w / "out/warp.csv", false);
    for (std::size_t i = 0; i < warp.size(); ++i) CHECK(warp[i] == warp.grid()[i]);
}

TEST_CASE("align recovers a generated warp") {
    Workdir w;
    verify::Rng rng(3);
    const SampledFunction f1 = sample_function(4, 120);
    const int M = 16;
    const Warp g0 = path_to_warp(verify::random_lattice_path(rng, M, DpConfig::default_slopes()), M);
    const SampledFunction f2 = reconstruct(action(srsf_of(f1), g0), f1[0]);
    cli::write_atomic(w / "f1.csv", cli::function_csv(f1));
    cli::write_atomic(w / "f2.csv", cli::function_csv(f2));
    const Run r = run(w, "align f1.csv f2.csv -M 16 -o out");
    REQUIRE(r.code == 0);
    const json doc = json::parse(slurp(w / "out/result.json"));
    CHECK(doc["distance"].get<double>() <= 1e-6);
    const SampledFunction aligned = cli::read_function(w / "out/aligned.csv", false);
    CHECK(aligned.grid() == f1.grid());
    for (std::size_t i = 0; i < f1.size(); ++i) CHECK(aligned[i] == doctest::Approx(f1[i]).epsilon(1e-9));
}

TEST_CASE("align is deterministic and kernels agree") {
    Workdir w;
    cli::write_atomic(w / "a.csv", cli::function_csv(sample_function(5, 90)));
    cli::write_atomic(w / "b.csv", cli::function_csv(sample_function(6, 110)));
    REQUIRE(run(w, "align a.csv b.csv -M 24 -o r1").code == 0);
    REQUIRE(run(w, "align a.csv b.csv -M 24 -o r2").code == 0);
    REQUIRE(run(w, "align a.csv b.csv -M 24 --kernel serial -o r3").code == 0);
    CHECK(slurp(w / "r1/result.json") == slurp(w / "r2/result.json"));
    CHECK(slurp(w / "r1/warp.csv") == slurp(w / "r3/warp.csv"));
    const json a = json::parse(slurp(w / "r1/result.json"));
    const json b = json::parse(slurp(w / "r3/result.json"));
    CHECK(a["distance"] == b["distance"]);
}

TEST_CASE("batch alignment") {
    Workdir w;
    cli::write_atomic(w / "a.csv", cli::function_csv(sample_function(7, 60)));
    cli::write_atomic(w / "b.csv", cli::function_csv(sample_function(8, 70)));
    write_text(w / "pairs.txt", "# pairs\na.csv b.csv\nb.csv a.csv\n");
    REQUIRE(run(w, "align --pairs pairs.txt -M 16 -o batch").code == 0);
    const json summary = json::parse(slurp(w / "batch/pairs.json"));
    REQUIRE(summary["pairs"].size() == 2);
    const double d0 = json::parse(slurp(w / "batch/pair_0/result.json"))["distance"];
    const double d1 = json::parse(slurp(w / "batch/pair_1/result.json"))["distance"];
    CHECK(d0 == doctest::Approx(d1).epsilon(1e-12));
}

TEST_CASE("exit codes") {
    Workdir w;
    write_text(w / "bad.csv", "t,value\n0,1\n0.5,oops\n1,2\n");
    write_text(w / "flat.csv", "0,2\n0.5,2\n1,2\n");
    write_text(w / "ramp.csv", "0,0\n1,1\n");
    write_text(w / "wide.csv", "2,0\n3.5,1\n5,4\n");
    write_text(w / "back.csv", "0,0\n0.6,1\n0.4,2\n1,3\n");

    SUBCASE("parse error names the line") {
        const Run r = run(w, "srsf bad.csv");
        CHECK(r.code == 2);
        CHECK(r.err.find("bad.csv:3:") != std::string::npos);
    }
    SUBCASE("decreasing abscissae") { CHECK(run(w, "srsf back.csv").code == 2); }
    SUBCASE("missing file") { CHECK(run(w, "srsf nowhere.csv").code == 2); }
    SUBCASE("unknown flag") { CHECK(run(w, "align ramp.csv ramp.csv --bogus").code == 2); }
    SUBCASE("bad slope set") { CHECK(run(w, "align ramp.csv ramp.csv --slopes 1:0").code == 2); }
    SUBCASE("domain outside [0,1] needs --rescale") {
        CHECK(run(w, "srsf wide.csv").code == 2);
        CHECK(run(w, "srsf wide.csv --rescale -o q.csv").code == 0);
        const cli::Table q = cli::read_table(w / "q.csv", 4);
        CHECK(q.rows.front()[2] == 0.0);
        CHECK(q.rows.back()[3] == 1.0);
    }
    SUBCASE("constant input uses the convention") {
        const Run r = run(w, "align ramp.csv flat.csv -M 8 -o zl");
        CHECK(r.code == 3);
        const json doc = json::parse(slurp(w / "zl/result.json"));
        CHECK(doc["zero_length"] == true);
        CHECK(doc.contains("note"));
        CHECK(doc["distance"].get<double>() == doctest::Approx(1.0));
    }
    SUBCASE("geodesic basepoint mismatch") {
        write_text(w / "lift.csv", "0,1\n1,2\n");
        CHECK(run(w, "geodesic ramp.csv lift.csv").code == 3);
    }
}

TEST_CASE("geodesic writes one file per step") {
    Workdir w;
    const SampledFunction f1 = sample_function(9, 80);
    const SampledFunction g = sample_function(10, 100);
    const SampledFunction f2 = add_constant(g, f1[0] - g[0]);
    cli::write_atomic(w / "f1.csv", cli::function_csv(f1));
    cli::write_atomic(w / "f2.csv", cli::function_csv(f2));
    REQUIRE(run(w, "geodesic f1.csv f2.csv --steps 5 --aligned -M 16 -o geo").code == 0);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(w / "geo")) files += e.path().extension() == ".csv";
    CHECK(files == 5);
    const SampledFunction first = cli::read_function(w / "geo/step_0.csv", false);
    for (std::size_t i = 0; i < f1.size(); ++i) {
        CHECK(first(f1.grid()[i]) == doctest::Approx(f1[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("cantor and fisher-rao") {
    Workdir w;
    Run r = run(w, "cantor --eval 0.5 --digits 6");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["value"].get<double>() == 0.5);
    CHECK(doc["ternary"] == "0.111111");
    CHECK(doc["in_cantor_set"] == false);

    r = run(w, "cantor --eval 1/4");
    doc = json::parse(r.out);
    CHECK(doc["value"].get<double>() == 1.0 / 3.0);
    CHECK(doc["in_cantor_set"] == true);
    CHECK(run(w, "cantor --eval 3/2").code == 2);

    write_text(w / "a.csv", "0,0\n0.5,0.5\n1,1\n");
    write_text(w / "b.csv", "0,0\n1,4\n");
    r = run(w, "fisher-rao a.csv b.csv");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["fisher_rao_distance"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("constant-speed") {
    Workdir w;
    cli::write_atomic(w / "f.csv", cli::function_csv(sample_function(11, 50)));
    REQUIRE(run(w, "constant-speed f.csv -o cs").code == 0);
    CHECK(fs::exists(w / "cs/h.csv"));
    CHECK(fs::exists(w / "cs/gamma.csv"));
}

TEST_CASE("verify subcommand") {
    Workdir w;
    Run r = run(w, "verify --suite cantor --seed 7");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    json last;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        last = json::parse(line);
        ++n;
    }
    CHECK(n >= 2);
    CHECK(last["failed"] == 0);
    CHECK(run(w, "verify --suite nonsense").code == 2);
    CHECK(run(w, "verify --scale M=x").code == 2);

    r = run(w, "verify --scale M=8 --suite oracle");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"oracle\"") != std::string::npos);
}
