#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>

#include "scmx/explorer.hpp"
#include "scmx/memdev.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("scmx_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_tool(const TempDir& d, const std::string& args) {
    const std::string out_path = (d.path / "cmd_stdout.txt").string();
    std::string cmd = std::string(SCMX_TOOL_PATH) + " " + args + " > " + out_path + " 2> " +
                      (d.path / "cmd_stderr.txt").string();
    int rc = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    return r;
}

size_t lines(const std::string& s) {
    size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("cost prints a bare two-decimal value") {
    TempDir d;
    auto r = run_tool(d, "cost --table default --spec mlc:1/32");
    CHECK(r.code == 0);
    CHECK(r.out == "0.72\n");
    CHECK(run_tool(d, "cost --spec slc").out == "1.00\n");
    CHECK(run_tool(d, "cost --main tlc --fraction 12.5%").out == "1.12\n");
}

TEST_CASE("config errors exit 2, runtime errors exit 1") {
    TempDir d;
    CHECK(run_tool(d, "cost --spec optane:1/32").code == 2);      // unknown tech
    CHECK(run_tool(d, "cost --spec mlc:1/32:x:y").code == 2);     // malformed spec
    CHECK(run_tool(d, "cost").code == 2);                         // neither --spec nor --main
    CHECK(run_tool(d, "miss-curve").code == 2);                   // missing required --trace
    CHECK(run_tool(d, "no-such-command").code == 2);
    CHECK(run_tool(d, "miss-curve --trace /nonexistent.trace").code == 1);
    CHECK(run_tool(d, "gen-trace --pages 0 --records 10 --out " + d.file("x")).code == 2);
    CHECK(run_tool(d, "--help").code == 0);
}

TEST_CASE("amat emits the closed-form curve with a JSON mirror") {
    TempDir d;
    auto r = run_tool(d, "amat --t-act 14 --sizes 64,1024 --out " + d.file("a.csv") +
                             " --json " + d.file("a.json"));
    CHECK(r.code == 0);
    auto csv = slurp(d.file("a.csv"));
    CHECK(csv == "t_act,transfer_bytes,amat_ns\n14,64,17\n14,1024,3.875\n");
    auto j = nlohmann::json::parse(slurp(d.file("a.json")));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["amat_ns"].get<double>() == 17.0);
    CHECK(j[1]["transfer_bytes"].get<double>() == 1024.0);

    // range form sweeps powers of two
    auto r2 = run_tool(d, "amat --t-act 60 --sizes 64..8192 --out " + d.file("b.csv"));
    CHECK(r2.code == 0);
    CHECK(lines(slurp(d.file("b.csv"))) == 1 + 8);
}

TEST_CASE("trace generation feeds the analysis subcommands") {
    TempDir d;
    auto gen = run_tool(d, "gen-trace --pages 128 --alpha 0.9 --read-fraction 0.7 "
                           "--footprint-mean 8 --contiguity 0.5 --records 20000 --seed 5 --out " +
                               d.file("t.trace"));
    REQUIRE(gen.code == 0);

    // determinism: regenerating gives a byte-identical file
    run_tool(d, "gen-trace --pages 128 --alpha 0.9 --read-fraction 0.7 "
                "--footprint-mean 8 --contiguity 0.5 --records 20000 --seed 5 --out " +
                    d.file("t2.trace"));
    CHECK(slurp(d.file("t.trace")) == slurp(d.file("t2.trace")));

    auto mc = run_tool(d, "miss-curve --trace " + d.file("t.trace") + " --out " + d.file("m.csv"));
    CHECK(mc.code == 0);
    auto mcsv = slurp(d.file("m.csv"));
    CHECK(lines(mcsv) == 1 + 8);
    CHECK(mcsv.rfind("block_bytes,capacity_bytes,capacity_fraction,miss_ratio\n", 0) == 0);

    auto dn = run_tool(d, "density --trace " + d.file("t.trace") + " --cache-fraction 1/16 "
                          "--out " + d.file("d.csv"));
    CHECK(dn.code == 0);
    CHECK(lines(slurp(d.file("d.csv"))) == 1 + 5);

    // binary format round-trips through the same readers
    auto genb = run_tool(d, "gen-trace --pages 128 --records 5000 --seed 6 --format binary "
                            "--out " + d.file("t.bin"));
    REQUIRE(genb.code == 0);
    auto mcb = run_tool(d, "miss-curve --trace " + d.file("t.bin") + " --block 64 "
                           "--capacities 4096 --out " + d.file("mb.csv"));
    CHECK(mcb.code == 0);
    CHECK(lines(slurp(d.file("mb.csv"))) == 2);
}

TEST_CASE("simulate: cache-only CSV contract and hierarchy extension") {
    TempDir d;
    run_tool(d, "gen-trace --pages 64 --alpha 0.8 --footprint-mean 16 --records 10000 "
                "--seed 7 --out " + d.file("t.trace"));

    auto sim = run_tool(d, "simulate --trace " + d.file("t.trace") +
                               " --cache-fraction 1/8 --block 1024 --out " + d.file("s.csv"));
    REQUIRE(sim.code == 0);
    auto csv = slurp(d.file("s.csv"));
    REQUIRE(lines(csv) == 2);
    CHECK(csv.rfind("capacity,block,ways,accesses,hits,misses,writebacks,mean_density\n", 0) == 0);
    std::istringstream row(csv.substr(csv.find('\n') + 1));
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(row, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 8);
    CHECK(std::stoull(fields[1]) == 1024);
    CHECK(std::stoull(fields[3]) == 10000);
    CHECK(std::stoull(fields[4]) + std::stoull(fields[5]) == 10000);

    // device-backed run appends latency columns and can dump the backside stream
    {
        std::ofstream dev(d.file("dev.json"));
        scmx::DeviceGeometry g;
        dev << scmx::device_to_json(g, scmx::TimingParams::scm(60, 150));
    }
    auto hier = run_tool(d, "simulate --trace " + d.file("t.trace") +
                                " --cache-fraction 1/8 --block 1024 --device " +
                                d.file("dev.json") + " --backside " + d.file("bs.trace") +
                                " --out " + d.file("h.csv"));
    REQUIRE(hier.code == 0);
    auto hcsv = slurp(d.file("h.csv"));
    CHECK(hcsv.rfind("capacity,block,ways,accesses,hits,misses,writebacks,mean_density,"
                     "miss_ratio,mean_fill_ns,e2e_amat_ns,loaded_amat_ns,row_hit_ratio,"
                     "mean_bytes_per_activation\n", 0) == 0);
    CHECK(slurp(d.file("bs.trace")).rfind("#scmtrace v1\n", 0) == 0);

    // a cache block wider than the device row is a configuration error
    auto bad = run_tool(d, "simulate --trace " + d.file("t.trace") +
                               " --cache-fraction 1/8 --block 2048 --device " +
                               d.file("dev.json"));
    CHECK(bad.code == 2);
}

TEST_CASE("explore runs a tiny grid over the shipped workload specs") {
    TempDir d;
    auto r = run_tool(d, std::string("explore --workloads ") + SCMX_WORKLOAD_DIR +
                             " --records 20000 --rb 1024 --t-read 60 --t-write 150,1000 "
                             "--jobs 4 --out " + d.file("r.csv") + " --frontier " +
                             d.file("f.csv") + " --json " + d.file("r.json"));
    REQUIRE(r.code == 0);
    auto csv = slurp(d.file("r.csv"));
    CHECK(lines(csv) == 1 + 2);
    CHECK(csv.rfind("row_buffer,t_read_ns,t_write_ns,proxy_", 0) == 0);
    auto j = nlohmann::json::parse(slurp(d.file("r.json")));
    REQUIRE(j.is_array());
    CHECK(j.size() == 2);
    CHECK(j[0]["row_buffer"].get<double>() == 1024.0);
    CHECK(j[0].contains("proxy_hot_sparse"));
    auto fcsv = slurp(d.file("f.csv"));
    CHECK(fcsv.rfind("row_buffer,t_read_ns,max_t_write_ns\n", 0) == 0);
}

TEST_CASE("shipped workload spec files match the builtin suite") {
    std::map<std::string, scmx::WorkloadSpec> from_disk;
    for (const auto& e : fs::directory_iterator(SCMX_WORKLOAD_DIR)) {
        if (e.path().extension() != ".json") continue;
        auto w = scmx::workload_from_json(slurp(e.path().string()));
        from_disk[w.name] = w;
    }
    auto builtins = scmx::builtin_workloads();
    REQUIRE(from_disk.size() == builtins.size());
    for (const auto& b : builtins) {
        REQUIRE(from_disk.count(b.name) == 1);
        const auto& d = from_disk[b.name].spec;
        CHECK(d.n_pages == b.spec.n_pages);
        CHECK(d.zipf_alpha == b.spec.zipf_alpha);
        CHECK(d.read_fraction == b.spec.read_fraction);
        CHECK(d.footprint_mean == b.spec.footprint_mean);
        CHECK(d.burst_contiguity == b.spec.burst_contiguity);
        CHECK(d.n_records == b.spec.n_records);
        CHECK(d.seed == b.spec.seed);
    }
}

TEST_CASE("zipf and pcm-study emit their tables") {
    TempDir d;
    auto r = run_tool(d, "zipf --alpha 0.9 --n 50000000 --coverage 0.7 --out " + d.file("z.csv"));
    REQUIRE(r.code == 0);
    auto csv = slurp(d.file("z.csv"));
    CHECK(csv.rfind("alpha,n_items,coverage,hot_fraction\n", 0) == 0);
    CHECK(csv.find("0.0548") != std::string::npos);

    auto pcm = run_tool(d, "pcm-study --workloads none --perf slc=1.31 --perf mlc_lat=1.28 "
                           "--out " + d.file("p.csv"));
    REQUIRE(pcm.code == 0);
    auto pcsv = slurp(d.file("p.csv"));
    CHECK(lines(pcsv) == 1 + 8);
    CHECK(pcsv.find("slc,slc,1024,60,150,0.03125,1.31,0.21875,1.21875,1.07") !=
          std::string::npos);
}
