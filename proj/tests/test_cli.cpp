#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("info prints parameters and honors exit codes") {
    auto r = run("info C1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("rate=4") != std::string::npos);
    CHECK(r.out.find("exponent=15") != std::string::npos);
    auto r3 = run("info C3 --json");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.find("\"exponent\": 3") != std::string::npos);
    CHECK(run("info NOPE").exit_code == 2);
    CHECK(run("info C1 --bogus-flag").exit_code == 2);
    CHECK(run("").exit_code == 2);  // missing subcommand
}

TEST_CASE("certify passes for all four codes") {
    for (const char* c : {"C1", "C2", "C3", "C4"}) {
        auto r = run(std::string("certify ") + c + " --trials 10 --seed 5");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"pass\": true") != std::string::npos);
    }
}

TEST_CASE("certify with shuffled ordering still reports") {
    auto r = run("certify C2 --shuffle --seed 3 --trials 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"ordering\"") != std::string::npos);
    CHECK(r.out.find("\"exponent\"") != std::string::npos);
}

TEST_CASE("verify-nvd") {
    auto r3 = run("verify-nvd C3 --bound 1 --mode exhaustive");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.find("\"min_det\": 3.99") != std::string::npos);
    auto r1 = run("verify-nvd C1 --mode sparse2");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("\"residue_certificate\": true") != std::string::npos);
    auto r4 = run("verify-nvd C4 --mode sampled --samples 500 --seed 4");
    CHECK(r4.exit_code == 0);
    CHECK(r4.out.find("not claimed") != std::string::npos);
    CHECK(run("verify-nvd C1 --mode exhaustive").exit_code == 2);  // guard
}

TEST_CASE("decode-bench oracle checking") {
    auto r = run("decode-bench C2 --decoder fast --alphabet 2 --instances 40 --seed 9 "
                 "--check-oracle");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.out) == 41);  // header + one row per instance
    auto r3 = run("decode-bench C3 --decoder ordered --alphabet 4 --instances 40 --seed 9 "
                  "--check-oracle");
    CHECK(r3.exit_code == 0);
    CHECK(run("decode-bench C2 --alphabet 3 --instances 1").exit_code == 2);
    CHECK(run("decode-bench C3 --decoder fast --instances 1").exit_code == 2);  // no partition
}

TEST_CASE("simulate is reproducible from a config file") {
    const std::string cfg_path = "/tmp/relay_sim_cfg.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"code":"C3","decoder":"sphere","snr_db":[0,10,20],"trials":50,)"
            << R"("alphabet_size":2,"seed":21})";
    }
    auto a = run("simulate " + cfg_path);
    CHECK(a.exit_code == 0);
    CHECK(count_lines(a.out) == 4);
    CHECK(a.out.rfind("code,decoder,snr_db,trials,block_errors,bler,avg_nodes,avg_leaves,seed",
                      0) == 0);
    auto b = run("simulate " + cfg_path);
    CHECK(a.out == b.out);

    const std::string bad_path = "/tmp/relay_sim_bad.json";
    {
        std::ofstream cfg(bad_path);
        cfg << R"({"code":"C9","trials":0})";
    }
    CHECK(run("simulate " + bad_path).exit_code == 2);
}

TEST_CASE("export-code round trips through info and certify") {
    const std::string path = "/tmp/relay_c2.json";
    CHECK(run("export-code C2 --out " + path).exit_code == 0);
    auto r = run("info " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("k=16") != std::string::npos);
    CHECK(run("certify " + path + " --trials 5").exit_code == 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-relaycodes>\n");
        return 1;
    }
    g_binary = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    return ctx.run();
}
