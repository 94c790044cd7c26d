// elastic: command-line front end for SRSF alignment, geodesics and the
// measure-theory utilities.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_io.hpp"
#include "elastic/align.hpp"
#include "elastic/errors.hpp"
#include "elastic/measurelab.hpp"
#include "elastic/srsf.hpp"
#include "elastic/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace elastic;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kInput = 2, kDomain = 3 };

struct DpFlags {
    int grid_size = 128;
    std::string slopes;
    std::optional<int> band;
    std::string kernel = "openmp";

    DpConfig config() const {
        DpConfig cfg;
        cfg.grid_size = grid_size;
        cfg.band_width = band;
        if (kernel == "serial") {
            cfg.kernel = DpKernel::serial;
        } else if (kernel != "openmp") {
            throw InputError("unknown kernel '" + kernel + "' (serial or openmp)");
        }
        if (!slopes.empty()) {
            cfg.slope_set.clear();
            std::stringstream ss(slopes);
            std::string item;
            while (std::getline(ss, item, ',')) {
                int a = 0;
                int b = 0;
                char colon = 0;
                std::istringstream is(item);
                if (!(is >> a >> colon >> b) || colon != ':' || !is.eof()) {
                    throw InputError("bad slope '" + item + "', expected a:b");
                }
                cfg.slope_set.push_back({a, b});
            }
        }
        cfg.validate();
        return cfg;
    }
};

void add_dp_flags(CLI::App* cmd, DpFlags& dp) {
    cmd->add_option("-M,--grid-size", dp.grid_size, "DP lattice intervals per axis")->capture_default_str();
    cmd->add_option("--slopes", dp.slopes, "slope set as a:b,a:b,... (default 7 slopes up to 3)");
    cmd->add_option("--band", dp.band, "adaptive band width (full lattice when absent)");
    cmd->add_option("--kernel", dp.kernel, "serial or openmp")->capture_default_str();
}

json config_json(const DpConfig& cfg) {
    json slopes = json::array();
    for (const Slope& s : cfg.slope_set) slopes.push_back({s.a, s.b});
    return {{"grid_size", cfg.grid_size},
            {"slope_set", slopes},
            {"band_width", cfg.band_width ? json(*cfg.band_width) : json(nullptr)},
            {"kernel", cfg.kernel == DpKernel::serial ? "serial" : "openmp"}};
}

json warp_json(const Warp& g) {
    json pts = json::array();
    for (std::size_t i = 0; i < g.grid().size(); ++i) pts.push_back({g.grid()[i], g.gamma()[i]});
    return pts;
}

SampledFunction on_grid_of(const SampledFunction& f2, const Warp& g, const Grid& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f2(g(grid[i]));
    return SampledFunction(grid, std::move(v));
}

struct AlignJob {
    fs::path f1;
    fs::path f2;
    fs::path out_dir;
};

struct AlignOptions {
    bool rescale = false;
    bool raw = false;
    DpConfig cfg;
};

int run_align(const AlignJob& job, const AlignOptions& opt, std::string& message) {
    const SampledFunction f1 = cli::read_function(job.f1, opt.rescale);
    const SampledFunction f2 = cli::read_function(job.f2, opt.rescale);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "align";
    doc["inputs"] = {{"f1", job.f1.string()}, {"f2", job.f2.string()}};
    int code = kOk;
    AlignmentResult r = [&] {
        try {
            if (opt.raw) return elastic_distance(srsf_of(f1), srsf_of(f2), opt.cfg);
            return shape_distance(f1, f2, opt.cfg);
        } catch (const ZeroLength& e) {
            code = kDomain;
            message = e.what();
            return constant_convention(srsf_of(f1), srsf_of(f2));
        }
    }();
    doc["distance"] = r.distance;
    doc["normalized"] = !opt.raw && !r.zero_length;
    doc["zero_length"] = r.zero_length;
    if (r.zero_length) {
        doc["note"] =
            "an input is constant (zero length); constant-function convention applied: "
            "distance = ||q1 - q2||_2 with the identity warp, no warp search";
    }
    doc["warp"] = warp_json(r.warp);
    doc["nodes_expanded"] = r.nodes_expanded;
    doc["config"] = config_json(opt.cfg);
    doc["config"]["rescale"] = opt.rescale;
    doc["config"]["normalize"] = !opt.raw;

    cli::write_atomic(job.out_dir / "result.json", doc.dump(2) + "\n");
    cli::write_atomic(job.out_dir / "aligned.csv",
                      cli::function_csv(on_grid_of(f2, r.warp, f1.grid())));
    cli::write_atomic(job.out_dir / "warp.csv", cli::function_csv(r.warp.gamma(), "gamma"));
    if (message.empty()) message = "distance " + cli::format_double(r.distance);
    return code;
}

std::vector<AlignJob> read_pairs(const fs::path& list, const fs::path& out_dir) {
    std::ifstream in(list);
    if (!in) throw InputError(list.string() + ": cannot open");
    std::vector<AlignJob> jobs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream is(line);
        std::string a;
        std::string b;
        if (!(is >> a)) continue;
        if (a.starts_with('#')) continue;
        std::string extra;
        if (!(is >> b) || (is >> extra)) {
            throw InputError(list.string() + ":" + std::to_string(line_no) +
                             ": expected two paths per line");
        }
        const fs::path base = list.parent_path();
        const auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
        jobs.push_back({resolve(a), resolve(b), out_dir / ("pair_" + std::to_string(jobs.size()))});
    }
    if (jobs.empty()) throw InputError(list.string() + ": no pairs");
    return jobs;
}

int align_batch(const std::vector<AlignJob>& jobs, const AlignOptions& opt, const fs::path& out_dir) {
    std::vector<int> codes(jobs.size(), kOk);
    std::vector<std::string> messages(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            codes[i] = run_align(jobs[i], opt, messages[i]);
        } catch (const DomainError& e) {
            codes[i] = kDomain;
            messages[i] = e.what();
        } catch (const std::exception& e) {
            codes[i] = kInput;
            messages[i] = e.what();
        }
    }
    json summary = json::array();
    int worst = kOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        summary.push_back({{"f1", jobs[i].f1.string()},
                           {"f2", jobs[i].f2.string()},
                           {"output", jobs[i].out_dir.string()},
                           {"exit_code", codes[i]},
                           {"message", messages[i]}});
        worst = std::max(worst, codes[i]);
        std::cout << jobs[i].out_dir.string() << ": " << messages[i] << '\n';
    }
    cli::write_atomic(out_dir / "pairs.json",
                      json{{"schema_version", kSchemaVersion}, {"pairs", summary}}.dump(2) + "\n");
    return worst;
}

std::string step_name(int k, int steps) {
    const int width = static_cast<int>(std::to_string(steps - 1).size());
    std::string s = std::to_string(k);
    return "step_" + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s + ".csv";
}

std::string ternary_string(const std::vector<int>& digits) {
    std::string s = "0.";
    for (int d : digits) s.push_back(static_cast<char>('0' + d));
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elastic shape analysis of functions: SRSF transform, alignment, geodesics, Cantor tools"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "elastic 1.0");

    bool rescale = false;
    DpFlags dp;

    // srsf
    auto* srsf_cmd = app.add_subcommand("srsf", "SRSF of a function CSV (one row per cell)");
    fs::path srsf_in;
    fs::path srsf_out = "q.csv";
    srsf_cmd->add_option("input", srsf_in, "function CSV (t,value)")->required();
    srsf_cmd->add_option("-o,--output", srsf_out, "output CSV")->capture_default_str();
    srsf_cmd->add_flag("--rescale", rescale, "map the abscissae affinely onto [0,1]");

    // reconstruct
    auto* rec_cmd = app.add_subcommand("reconstruct", "function from an SRSF CSV and f(0)");
    fs::path rec_in;
    fs::path rec_out = "f.csv";
    double f0 = 0.0;
    rec_cmd->add_option("input", rec_in, "SRSF CSV as written by srsf")->required();
    rec_cmd->add_option("--f0", f0, "value at t = 0")->capture_default_str();
    rec_cmd->add_option("-o,--output", rec_out, "output CSV")->capture_default_str();

    // align
    auto* align_cmd = app.add_subcommand("align", "elastic alignment of f2 to f1");
    fs::path a_f1;
    fs::path a_f2;
    fs::path a_pairs;
    fs::path a_out = ".";
    bool a_raw = false;
    align_cmd->add_option("f1", a_f1, "function CSV");
    align_cmd->add_option("f2", a_f2, "function CSV");
    align_cmd->add_option("--pairs", a_pairs, "file listing 'f1.csv f2.csv' per line (batch mode)");
    align_cmd->add_option("-o,--output-dir", a_out, "directory for result.json, aligned.csv, warp.csv")
        ->capture_default_str();
    align_cmd->add_flag("--no-normalize", a_raw, "align the raw SRSFs instead of unit-norm ones");
    align_cmd->add_flag("--rescale", rescale, "map the abscissae affinely onto [0,1]");
    add_dp_flags(align_cmd, dp);

    // fisher-rao
    auto* fr_cmd = app.add_subcommand("fisher-rao", "Fisher-Rao distance ||q1 - q2||_2 (no warping)");
    fs::path fr_f1;
    fs::path fr_f2;
    fr_cmd->add_option("f1", fr_f1)->required();
    fr_cmd->add_option("f2", fr_f2)->required();
    fr_cmd->add_flag("--rescale", rescale, "map the abscissae affinely onto [0,1]");

    // geodesic
    auto* geo_cmd = app.add_subcommand("geodesic", "path between two functions, one CSV per step");
    fs::path g_f1;
    fs::path g_f2;
    fs::path g_out = "geodesic";
    int g_steps = 5;
    bool g_aligned = false;
    geo_cmd->add_option("f1", g_f1)->required();
    geo_cmd->add_option("f2", g_f2)->required();
    geo_cmd->add_option("--steps", g_steps, "number of steps including both ends")->capture_default_str();
    geo_cmd->add_flag("--aligned", g_aligned, "optimally warp f2 first");
    geo_cmd->add_option("-o,--output-dir", g_out)->capture_default_str();
    geo_cmd->add_flag("--rescale", rescale, "map the abscissae affinely onto [0,1]");
    add_dp_flags(geo_cmd, dp);

    // constant-speed
    auto* cs_cmd = app.add_subcommand("constant-speed", "f = h o gamma with |h'| constant");
    fs::path cs_in;
    fs::path cs_out = ".";
    cs_cmd->add_option("input", cs_in)->required();
    cs_cmd->add_option("-o,--output-dir", cs_out, "directory for h.csv and gamma.csv")->capture_default_str();
    cs_cmd->add_flag("--rescale", rescale, "map the abscissae affinely onto [0,1]");

    // cantor
    auto* cantor_cmd = app.add_subcommand("cantor", "Cantor function and set membership");
    std::string c_eval;
    int c_digits = 20;
    cantor_cmd->add_option("--eval", c_eval, "point in [0,1] as p/q or decimal")->required();
    cantor_cmd->add_option("--digits", c_digits, "ternary digits to print")->capture_default_str();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the randomized property suites (JSON lines)");
    verify::SuiteOptions vopt;
    std::string v_scale;
    verify_cmd->add_option("--seed", vopt.seed)->capture_default_str();
    verify_cmd->add_option("--scale", v_scale, "DP lattice for the align suite, e.g. M=8 (<= 8 adds the brute-force oracle)");
    verify_cmd->add_option("--suite", vopt.only, "run one suite only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*srsf_cmd) {
            const SampledFunction f = cli::read_function(srsf_in, rescale);
            cli::write_atomic(srsf_out, cli::srsf_csv(srsf_of(f).q()));
            return kOk;
        }
        if (*rec_cmd) {
            const Srsf q(cli::read_srsf(rec_in));
            cli::write_atomic(rec_out, cli::function_csv(reconstruct(q, f0)));
            return kOk;
        }
        if (*align_cmd) {
            AlignOptions opt{rescale, a_raw, dp.config()};
            if (!a_pairs.empty()) {
                if (!a_f1.empty()) throw InputError("give either f1 f2 or --pairs, not both");
                return align_batch(read_pairs(a_pairs, a_out), opt, a_out);
            }
            if (a_f1.empty() || a_f2.empty()) throw InputError("align needs f1 and f2 (or --pairs)");
            std::string message;
            const int code = run_align({a_f1, a_f2, a_out}, opt, message);
            if (code == kDomain) {
                std::cerr << "elastic: " << message << " (constant-function convention written to "
                          << (a_out / "result.json").string() << ")\n";
            } else {
                std::cout << message << '\n';
            }
            return code;
        }
        if (*fr_cmd) {
            const double d = fisher_rao_distance(cli::read_function(fr_f1, rescale),
                                                 cli::read_function(fr_f2, rescale));
            std::cout << json{{"schema_version", kSchemaVersion}, {"fisher_rao_distance", d}}.dump() << '\n';
            return kOk;
        }
        if (*geo_cmd) {
            const auto path = geodesic_path(cli::read_function(g_f1, rescale), cli::read_function(g_f2, rescale),
                                            g_steps, g_aligned, dp.config());
            for (std::size_t k = 0; k < path.size(); ++k) {
                cli::write_atomic(g_out / step_name(static_cast<int>(k), g_steps), cli::function_csv(path[k]));
            }
            return kOk;
        }
        if (*cs_cmd) {
            const ConstantSpeed cs = constant_speed(cli::read_function(cs_in, rescale));
            cli::write_atomic(cs_out / "h.csv", cli::function_csv(cs.h));
            cli::write_atomic(cs_out / "gamma.csv", cli::function_csv(cs.gamma.gamma(), "gamma"));
            return kOk;
        }
        if (*cantor_cmd) {
            using namespace measurelab;
            if (c_digits < 1 || c_digits > kMaxMembershipDigits) {
                throw InputError("--digits must be in [1, " + std::to_string(kMaxMembershipDigits) + "]");
            }
            const Rational x = Rational::parse(c_eval);
            std::cout << json{{"x", c_eval},
                              {"value", cantor_function(x)},
                              {"ternary", ternary_string(ternary_digits(x, c_digits))},
                              {"in_cantor_set", in_cantor_set(x, kMaxMembershipDigits)}}
                             .dump()
                      << '\n';
            return kOk;
        }
        if (*verify_cmd) {
            if (!v_scale.empty()) {
                std::string s = v_scale;
                if (s.starts_with("M=")) s.erase(0, 2);
                try {
                    std::size_t used = 0;
                    vopt.grid_size = std::stoi(s, &used);
                    if (used != s.size()) throw std::invalid_argument(s);
                } catch (const std::logic_error&) {
                    throw InputError("bad --scale '" + v_scale + "', expected M=<int>");
                }
            }
            const auto results = verify::run_suites(vopt);
            std::size_t failed = 0;
            for (const auto& c : results) {
                failed += c.passed ? 0 : 1;
                std::cout << json{{"suite", c.suite}, {"check", c.check}, {"passed", c.passed}, {"detail", c.detail}}.dump()
                          << '\n';
            }
            std::cout << json{{"summary", true},
                              {"schema_version", kSchemaVersion},
                              {"seed", vopt.seed},
                              {"grid_size", vopt.grid_size},
                              {"checks", results.size()},
                              {"failed", failed}}
                             .dump()
                      << '\n';
            return failed == 0 ? kOk : kVerifyFailed;
        }
    } catch (const DomainError& e) {
        std::cerr << "elastic: " << e.what() << '\n';
        return kDomain;
    } catch (const InputError& e) {
        std::cerr << "elastic: " << e.what() << '\n';
        return kInput;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "elastic: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
