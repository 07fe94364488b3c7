#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cli/commands.hpp"

using namespace zsum::cli;
using nlohmann::json;

namespace {

struct Captured {
    int exit_code;
    std::string out;
    std::string err;
};

template <typename Config, typename Fn>
Captured run(Fn fn, const Config& config) {
    std::ostringstream out, err;
    int code = run_mapped([&]() { return fn(config, out, err); }, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("harborth text output") {
    RunConfig config;
    config.group = "3x6";
    auto r = run(cmd_harborth, config);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("g: 9") != std::string::npos);
    CHECK(r.out.find("algorithm: direct") != std::string::npos);  // auto picks direct at order 18
}

TEST_CASE("harborth json schema") {
    RunConfig config;
    config.group = "4x4";
    config.format = "json";
    config.algorithm = "bfs";
    auto r = run(cmd_harborth, config);
    CHECK(r.exit_code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["group"] == "4x4");
    CHECK(j["algorithm"] == "bfs");
    CHECK(j["g"] == 9);
    CHECK(j["levels"].is_array());
    CHECK(j["levels"].front()["k"] == 4);
    CHECK(j["levels"].front().contains("good"));
    CHECK(j["levels"].front().contains("total"));
    CHECK(j.contains("elapsed_ms"));
    CHECK(j.contains("peak_bytes"));

    // text mode reports the same values
    RunConfig text_config = config;
    text_config.format = "text";
    auto t = run(cmd_harborth, text_config);
    CHECK(t.out.find("g: 9") != std::string::npos);
    for (const auto& level : j["levels"]) {
        std::ostringstream line;
        line << "k=" << level["k"].get<int>() << " good=" << level["good"].get<std::uint64_t>()
             << " total=" << level["total"].get<std::uint64_t>();
        CHECK(t.out.find(line.str()) != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    RunConfig bad_group;
    bad_group.group = "3x5";
    CHECK(run(cmd_harborth, bad_group).exit_code == kExitUsage);

    RunConfig normalized = bad_group;
    normalized.normalize = true;
    auto ok = run(cmd_harborth, normalized);
    CHECK(ok.exit_code == kExitOk);
    CHECK(ok.out.find("group: 15") != std::string::npos);

    RunConfig tiny_cap;
    tiny_cap.group = "5x5";
    tiny_cap.algorithm = "bfs";
    tiny_cap.memory_bytes = 64ull << 20;  // smallest admissible cap
    CHECK(run(cmd_harborth, tiny_cap).exit_code == kExitOk);
    tiny_cap.memory_bytes = 1 << 20;  // below the 64 MiB floor
    CHECK(run(cmd_harborth, tiny_cap).exit_code == kExitUsage);

    RunConfig too_big;
    too_big.group = "8x8";
    too_big.algorithm = "direct";  // order 64 over the direct cap
    CHECK(run(cmd_harborth, too_big).exit_code == kExitResource);

    VerifyConfig kiefer3;
    kiefer3.selector = "kiefer";
    kiefer3.kiefer_n = 3;
    auto k3 = run(cmd_verify, kiefer3);
    CHECK(k3.exit_code == kExitDomain);
    CHECK(k3.err.find("collides") != std::string::npos);

    AddcheckConfig composite_p;
    composite_p.p = 4;
    composite_p.mode = "cd";
    CHECK(run(cmd_addcheck, composite_p).exit_code == kExitUsage);
}

TEST_CASE("verify command") {
    VerifyConfig c3c9;
    c3c9.selector = "c3c9";
    auto r = run(cmd_verify, c3c9);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("length: 12") != std::string::npos);
    CHECK(r.out.find("accepted: true") != std::string::npos);

    VerifyConfig kiefer5;
    kiefer5.selector = "kiefer";
    kiefer5.kiefer_n = 5;
    auto k5 = run(cmd_verify, kiefer5);
    CHECK(k5.exit_code == kExitOk);
    CHECK(k5.out.find("length: 17") != std::string::npos);

    VerifyConfig comp;
    comp.selector = "composite";
    comp.composite_g1 = "9";
    comp.composite_g2 = "3";
    comp.format = "json";
    auto c = run(cmd_verify, comp);
    CHECK(c.exit_code == kExitOk);
    json j = json::parse(c.out);
    CHECK(j["accepted"] == true);
    CHECK(j["group"] == "3x9");
    CHECK(j["length"] == 10);  // g(C9) - 1 + D(C3) - 1

    VerifyConfig unknown;
    unknown.selector = "nope";
    CHECK(run(cmd_verify, unknown).exit_code == kExitUsage);
}

TEST_CASE("extremal command") {
    RunConfig config;
    config.group = "2x2";
    auto r = run(cmd_extremal, config);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out == "4 4 1\n0 1 2 3\n");  // dump on stdout
    CHECK(r.err.find("extremal_count: 1") != std::string::npos);

    // json mode requires a file path
    RunConfig js = config;
    js.format = "json";
    CHECK(run(cmd_extremal, js).exit_code == kExitUsage);

    js.extremal_out = "/tmp/zsum_test_extremal.dump";
    auto jr = run(cmd_extremal, js);
    CHECK(jr.exit_code == kExitOk);
    json j = json::parse(jr.out);
    CHECK(j["extremal"]["level"] == 4);
    CHECK(j["extremal"]["count"] == 1);
    std::ifstream dump("/tmp/zsum_test_extremal.dump");
    std::string header;
    std::getline(dump, header);
    CHECK(header == "4 4 1");
}

TEST_CASE("addcheck command") {
    AddcheckConfig cd;
    cd.p = 5;
    cd.mode = "cd";
    cd.exhaustive = true;
    auto r = run(cmd_addcheck, cd);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("checked: 961") != std::string::npos);
    CHECK(r.out.find("violations: 0") != std::string::npos);

    AddcheckConfig dsh;
    dsh.p = 7;
    dsh.mode = "dsh";
    dsh.exhaustive = true;
    CHECK(run(cmd_addcheck, dsh).exit_code == kExitOk);

    AddcheckConfig vosper;
    vosper.p = 11;
    vosper.mode = "vosper";
    vosper.samples = 500;
    CHECK(run(cmd_addcheck, vosper).exit_code == kExitOk);

    AddcheckConfig ap;
    ap.p = 13;
    ap.mode = "ap";
    ap.samples = 500;
    CHECK(run(cmd_addcheck, ap).exit_code == kExitOk);

    AddcheckConfig bad_mode;
    bad_mode.p = 5;
    bad_mode.mode = "xx";
    CHECK(run(cmd_addcheck, bad_mode).exit_code == kExitUsage);

    AddcheckConfig too_big;
    too_big.p = 37;
    too_big.mode = "cd";
    too_big.exhaustive = true;
    CHECK(run(cmd_addcheck, too_big).exit_code == kExitUsage);
}

TEST_CASE("table command") {
    TableConfig config;
    config.groups = {"5", "3x6", "2x4"};
    auto r = run(cmd_table, config);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.out.find("MISMATCH") == std::string::npos);

    // groups without a known value still get a row
    TableConfig unknown;
    unknown.groups = {"2x2x4"};
    auto u = run(cmd_table, unknown);
    CHECK(u.exit_code == kExitOk);
    CHECK(u.out.find("2x2x4") != std::string::npos);
    CHECK(u.out.find("none") != std::string::npos);
}

TEST_CASE("determinism across thread counts") {
    auto run_with_threads = [&](int threads) {
        RunConfig config;
        config.group = "3x6";
        config.algorithm = "bfs";
        config.threads = threads;
        std::ostringstream out, err;
        cmd_harborth(config, out, err);
        std::string text = out.str();
        // strip the timing line, everything else must be identical
        auto pos = text.find("elapsed_ms:");
        auto end = text.find('\n', pos);
        return text.substr(0, pos) + text.substr(end + 1);
    };
    std::string base = run_with_threads(1);
    CHECK(run_with_threads(2) == base);
    CHECK(run_with_threads(8) == base);
}

TEST_SUITE_END();
