#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "morrey/cli/commands.hpp"
#include "morrey/cli/config.hpp"
#include "morrey/cli/report_io.hpp"
#include "morrey/cli/svg.hpp"

using namespace morrey;
using namespace morrey::cli;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    explicit Sandbox(const std::string& name) : dir(fs::temp_directory_path() / ("morrey_cli_test_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    std::string config(const std::string& text) const {
        const fs::path p = dir / "config.json";
        std::ofstream(p) << text;
        return p.string();
    }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::string& command, const std::string& config, const std::string& out_dir, int threads = 1) {
    RunOptions opt;
    opt.command = command;
    opt.config_file = config;
    opt.out_dir = out_dir;
    opt.threads = threads;
    std::ostringstream out, err;
    const int code = run(opt, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("norm command on the unit indicator") {
    Sandbox sb("norm");
    const auto cfg = sb.config(
        R"({"params":{"p":2,"lambda":"0.5"},"weight":{"type":"unit"},
            "experiment":{"target":{"step":{"breakpoints":[-1,1],"values":[1]}}}})");
    const auto r = invoke("norm", cfg, sb.dir.string());
    REQUIRE(r.code == kOk);
    const json j = read_json(sb.dir / "norm.json");
    CHECK(j["tool"] == kToolName);
    CHECK(j["version"] == kToolVersion);
    CHECK(j["command"] == "norm");
    CHECK(j["config"]["params"]["lambda"].get<double>() == 0.5);
    CHECK(j["result"]["report"]["value"].get<double>() == doctest::Approx(1.189207).epsilon(0.02));
    const std::string csv = slurp(sb.dir / "norm_trace.csv");
    CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("validation errors name the field") {
    Sandbox sb("validation");
    auto r = invoke("norm", sb.config(R"({"params":{"p":2,"lambda":0.5},"experiment":{"target":{"ball":{"center":0,"radius":1}}}})"),
                    sb.dir.string());
    CHECK(r.code == kValidation);
    CHECK(r.err.find("weight") != std::string::npos);

    r = invoke("norm", sb.config(R"({"params":{"p":2,"lambda":0.5},"weight":{"type":"power","nu":-2},
                                    "experiment":{"target":{"ball":{"center":0,"radius":1}}}})"),
               sb.dir.string());
    CHECK(r.code == kValidation);
    CHECK(r.err.find("weight.nu") != std::string::npos);

    r = invoke("norm", sb.config("{\"params\": {\"p\": 2,\n \"lambda\": }"), sb.dir.string());
    CHECK(r.code == kValidation);
    CHECK(r.err.find("line 2") != std::string::npos);

    r = invoke("aplconst", sb.config(R"({"params":{"p":2,"lambda":0.3},"weight":{"type":"unit"},"extra":{}})"),
               sb.dir.string());
    CHECK(r.code == kValidation);

    r = invoke("aplconst", sb.config(R"({"params":{"p":"two","lambda":0.3},"weight":{"type":"unit"}})"), sb.dir.string());
    CHECK(r.code == kValidation);
    CHECK(r.err.find("params.p") != std::string::npos);

    r = invoke("sweep", sb.config(R"({"params":{"p":2,"lambda":0.3},"experiment":{"nu":[]}})"), sb.dir.string());
    CHECK(r.code == kValidation);

    r = invoke("necessity", sb.config(R"({"params":{"p":2,"lambda":0.3},"weight":{"type":"unit"}})"), sb.dir.string());
    CHECK(r.code == kValidation);
    CHECK(r.err.find("experiment.k") != std::string::npos);

    r = invoke("norm", (sb.dir / "missing.json").string(), sb.dir.string());
    CHECK(r.code == kValidation);
}

TEST_CASE("config readers") {
    CHECK(read_number(json("0.25"), "x") == 0.25);
    CHECK(read_number(json(3), "x") == 3.0);
    CHECK_THROWS_AS(read_number(json("0.25abc"), "x"), ConfigError);
    CHECK_THROWS_AS(read_number(json::array(), "x"), ConfigError);
    CHECK_THROWS_AS(read_int(json(2.5), "x"), ConfigError);
    CHECK(read_number_list(json::parse(R"([1, "2.5"])"), "x") == std::vector<double>{1.0, 2.5});
    const Weight w = parse_weight(json::parse(R"({"type":"product","factors":[{"type":"power","a":0,"nu":0.5},
                                                {"type":"constant","c":2}]})"),
                                  "weight", 1);
    CHECK(w.power_factors().size() == 1);
    CHECK(w.constant_cofactor().value() == 2.0);
    try {
        (void)parse_weight(json::parse(R"({"type":"spline"})"), "weight", 1);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.path() == "weight.type");
    }
    const BallFamily f = apply_family(BallFamily{}, json::parse(R"({"center_count":17,"radius_min":"1e-3"})"), "family");
    CHECK(f.center_count == 17);
    CHECK(f.radius_min == 1e-3);
    CHECK_THROWS_AS(apply_family(BallFamily{}, json::parse(R"({"center_count":1})"), "family"), ConfigError);
}

TEST_CASE("command results and exit codes") {
    Sandbox sb("commands");
    const std::string dir = sb.dir.string();
    auto r = invoke("aplconst", sb.config(R"({"params":{"p":2,"lambda":0.3},"weight":{"type":"unit"}})"), dir);
    REQUIRE(r.code == kOk);
    CHECK(read_json(sb.dir / "aplconst.json")["result"]["report"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    r = invoke("necessity", sb.config(R"({"params":{"p":2,"lambda":0.3},"weight":{"type":"power","a":0,"nu":0.5},"experiment":{"k":5}})"),
               dir);
    REQUIRE(r.code == kOk);
    CHECK(read_json(sb.dir / "necessity.json")["result"]["satisfied"] == true);

    r = invoke("expfit",
               sb.config(R"({"params":{"p":2,"lambda":0.4},"weight":{"type":"power","a":0,"nu":0.3},
                            "experiment":{"radii":{"from":0.01,"to":1,"count":5}}})"),
               dir);
    REQUIRE(r.code == kOk);
    const json fit = read_json(sb.dir / "expfit.json")["result"];
    CHECK(fit["slope"].get<double>() == doctest::Approx(0.45).epsilon(0.02 / 0.45));
    CHECK(fit["theory"].get<double>() == doctest::Approx(0.45));

    r = invoke("apconst", sb.config(R"({"params":{"p":2},"weight":{"type":"power","nu":1.5},"experiment":{"expect_bounded":true}})"),
               dir);
    CHECK(r.code == kUnexpectedDivergence);
    const json ap = read_json(sb.dir / "apconst.json")["result"]["report"];
    CHECK(ap["value"] == "inf");
    CHECK(ap["diverging"] == true);

    r = invoke("admissible", sb.config(R"({"params":{"p":2,"lambda":0.3},"weight":{"type":"power","nu":1.5},
                                          "experiment":{"probe":{"center":0,"radius":1}}})"),
               dir);
    CHECK(r.code == kOk);
    CHECK(read_json(sb.dir / "admissible.json")["result"]["admissible"] == false);
}

TEST_CASE("sweep writes CSV and SVG") {
    Sandbox sb("sweep");
    const auto r = invoke("sweep", sb.config(R"({"params":{"p":2,"lambda":0.3},"experiment":{"nu":[-0.9, 0.5]}})"),
                          sb.dir.string());
    REQUIRE(r.code == kOk);
    const std::string csv = slurp(sb.dir / "sweep.csv");
    std::size_t lines = 0;
    for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2) ++lines;
    CHECK(lines == 1 + 2 * 6);
    const std::string svg = slurp(sb.dir / "sweep.svg");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("reports are byte-identical across thread counts") {
    Sandbox a("threads1"), b("threads8");
    const std::string text = R"({"params":{"p":2,"lambda":0.3},"weight":{"type":"power","a":0,"nu":0.5},"experiment":{"k":5}})";
    REQUIRE(invoke("necessity", a.config(text), a.dir.string(), 1).code == kOk);
    REQUIRE(invoke("necessity", b.config(text), b.dir.string(), 8).code == kOk);
    CHECK(slurp(a.dir / "necessity.json") == slurp(b.dir / "necessity.json"));
}

TEST_CASE("report formatting helpers") {
    CHECK(num(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(num(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(num(0.5) == 0.5);
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_row({"x", "y,z"}) == "x,\"y,z\"\r\n");
    CHECK(dump(json::object()).back() == '\n');
}

TEST_CASE("sweep plot draws the interval guides") {
    SweepResult s;
    for (double nu : {-0.5, 0.5})
        for (int k = 0; k < 2; ++k) s.rows.push_back({nu, k, k == 0 ? 1.0 : 2.0, false});
    s.rows.push_back({1.5, 0, std::numeric_limits<double>::infinity(), true});
    s.rows.push_back({1.5, 1, std::numeric_limits<double>::infinity(), true});
    const std::string svg = sweep_svg(s, {2.0, 0.3, 1}, 2);
    std::size_t dashed = 0;
    for (std::size_t pos = 0; (pos = svg.find("stroke-dasharray", pos)) != std::string::npos; ++pos) ++dashed;
    CHECK(dashed >= 2);
    CHECK(svg.find("<polyline") != std::string::npos);
}
