#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "saltbox/roof.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SALTBOX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        r.out.append(buf, got);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path test_dir() {
    const fs::path dir = fs::temp_directory_path() / "saltbox_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

const std::string d1_flags = "--a 0 --b 1 --c 0.5 --shape 0.5";

} // namespace

TEST_CASE("eval prints round-trip decimals") {
    CHECK(run_cli("eval pdf 0.25 " + d1_flags).out == "0.75\n");
    CHECK(run_cli("eval pdf 0.25 " + d1_flags).exit_code == 0);
    CHECK(run_cli("eval quantile 0 " + d1_flags).out == "0\n");
    CHECK(run_cli("eval pdf -1 " + d1_flags).out == "0\n");
    CHECK(run_cli("eval cdf 0.75 " + d1_flags).out == "0.71875\n");
}

TEST_CASE("eval exits 2 on domain violations") {
    CHECK(run_cli("eval pdf 0.25 --a 0 --b 1 --c 0.9 --shape 0.5").exit_code == 2);
    CHECK(run_cli("eval quantile 1.5 " + d1_flags).exit_code == 2);
    CHECK(run_cli("eval pdf 0.25 --a 0 --b 1").exit_code == 2); // underspecified
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("sample " + d1_flags).exit_code == 2); // missing --n/--out
    CHECK(run_cli("space " + d1_flags + " --n 1").exit_code == 2);
    CHECK(run_cli("space " + d1_flags + " --n 5 --interval 1,0").exit_code == 2);
    CHECK(run_cli("domain").exit_code == 2); // needs --rho or --grid
    CHECK(run_cli("domain --grid 1").exit_code == 2);
}

TEST_CASE("spec files feed the distribution and flags override them") {
    const fs::path spec = test_dir() / "d1.spec";
    {
        std::ofstream os(spec);
        os << "# reference distribution\n"
           << "a = 0\n"
           << "b = 1\n"
           << "c = 0.5\n"
           << "shape = 0.5\n";
    }
    CHECK(run_cli("eval pdf 0.25 --spec " + spec.string()).out == "0.75\n");
    // override: shape 0.8 lifts h_c to 1.8, so the ascending density is 0.9
    CHECK(run_cli("eval pdf 0.25 --spec " + spec.string() + " --shape 0.8").out == "0.9\n");

    const fs::path bad = test_dir() / "bad.spec";
    {
        std::ofstream os(bad);
        os << "a = 0\nb = 1\nc = 0.5\nshape = 0.5\nmedian = 0.3\n";
    }
    CHECK(run_cli("eval pdf 0.25 --spec " + bad.string()).exit_code == 2);
}

TEST_CASE("sample writes deterministic CSV and histogram counts") {
    const fs::path out1 = test_dir() / "s1.csv";
    const fs::path out2 = test_dir() / "s2.csv";
    const std::string friction = "--a 20 --b 45 --c 32 --shape 0.8";

    CHECK(run_cli("sample " + friction + " --n 300 --seed 1 --out " + out1.string() +
                  " --bins 25").exit_code == 0);
    CHECK(run_cli("sample " + friction + " --n 300 --seed 1 --out " + out2.string())
              .exit_code == 0);
    CHECK(slurp(out1) == slurp(out2)); // byte-identical under identical flags

    const auto rows = parse_csv(slurp(out1));
    REQUIRE(rows.size() == 301);
    CHECK(rows[0][0] == "x");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][0]);
        CHECK(x >= 20.0);
        CHECK(x <= 45.0);
    }

    fs::path hist = out1;
    hist.replace_extension(".hist.csv");
    const auto hist_rows = parse_csv(slurp(hist));
    REQUIRE(hist_rows.size() == 26);
    CHECK(hist_rows[0] == std::vector<std::string>{"bin_lo", "bin_hi", "count"});
    std::size_t total = 0;
    for (std::size_t i = 1; i < hist_rows.size(); ++i) {
        total += static_cast<std::size_t>(std::stoul(hist_rows[i][2]));
    }
    CHECK(total == 300);

    const fs::path empty_out = test_dir() / "empty.csv";
    CHECK(run_cli("sample " + d1_flags + " --n 0 --seed 1 --out " + empty_out.string())
              .exit_code == 0);
    CHECK(slurp(empty_out) == "x\n"); // header-only
}

TEST_CASE("space emits monotone endpoint-exact points") {
    const RunResult two = run_cli("space " + d1_flags + " --n 2 --interval 0.25,0.75");
    CHECK(two.exit_code == 0);
    CHECK(two.out == "x\n0.25\n0.75\n");

    const RunResult flat =
        run_cli("space --a 0 --b 1 --c 0 --shape 0 --n 5 --interval 0,1");
    CHECK(flat.out == "x\n0\n0.25\n0.5\n0.75\n1\n"); // uniform rule = even spacing

    const RunResult r = run_cli("space --a 0 --b 1 --c 0.7 --shape 0.8 --n 30");
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 31);
    double prev = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][0]);
        CHECK(x >= prev);
        prev = x;
    }
    CHECK(std::stod(rows[1][0]) == 0.0);
    CHECK(std::stod(rows[30][0]) == 1.0);

    // the spacing rule depends only on the distribution's shape on [0, 1],
    // so a shifted spec spaces points identically
    const RunResult shifted =
        run_cli("space --a 10 --b 30 --c 24 --shape 0.8 --n 12 --interval 0,1");
    const RunResult unit =
        run_cli("space --a 0 --b 1 --c 0.7 --shape 0.8 --n 12 --interval 0,1");
    CHECK(shifted.out == unit.out);
}

TEST_CASE("curve emits x, y and curvature columns") {
    const RunResult r = run_cli("curve --a 0 --b 1 --c 0.833333333333333333 --shape 0.75 "
                                "--n 2 --interval -1,0.2 --poly 0,0,1");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"x", "y", "curvature"});
    CHECK(std::stod(rows[1][0]) == -1.0);
    CHECK(std::stod(rows[1][1]) == 1.0);
    CHECK(std::stod(rows[2][0]) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(std::stod(rows[2][1]) == doctest::Approx(0.04).epsilon(1e-12));
    // curvature of y = x^2 at x = -1: 2 / 5^(3/2)
    CHECK(std::stod(rows[1][2]) == doctest::Approx(2.0 / std::pow(5.0, 1.5)).epsilon(1e-12));

    // a straight line has zero curvature everywhere
    const RunResult line = run_cli("curve " + d1_flags +
                                   " --n 3 --interval 0,1 --poly 1,2,0");
    for (const auto& row : parse_csv(line.out)) {
        if (row[0] == "x") continue;
        CHECK(std::stod(row[2]) == 0.0);
    }

    // a uniform spec spaces x evenly; the parabola vertex has curvature 2 a2
    const RunResult vertex = run_cli("curve --a 0 --b 1 --c 0 --shape 0 "
                                     "--n 3 --interval -1,1 --poly 0,0,1");
    const auto vrows = parse_csv(vertex.out);
    REQUIRE(vrows.size() == 4);
    CHECK(std::stod(vrows[1][0]) == -1.0);
    CHECK(std::stod(vrows[2][0]) == 0.0);
    CHECK(std::stod(vrows[3][0]) == 1.0);
    CHECK(std::stod(vrows[2][2]) == 2.0);
}

TEST_CASE("domain prints the boundary curve") {
    CHECK(run_cli("domain --rho 0.5").out == "0.6666666666666667\n");
    CHECK(run_cli("domain --rho 1").out == "1\n");
    CHECK(run_cli("domain --rho 2").exit_code == 2);

    const RunResult grid = run_cli("domain --grid 3");
    const auto rows = parse_csv(grid.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"rho", "c_limit"});
    CHECK(rows[1] == std::vector<std::string>{"0", "0"});
    CHECK(rows[2] == std::vector<std::string>{"0.5", "0.6666666666666667"});
    CHECK(rows[3] == std::vector<std::string>{"1", "1"});
}

TEST_CASE("validate compares the two quantile routes") {
    const fs::path out = test_dir() / "validate.csv";
    const RunResult ok =
        run_cli("validate " + d1_flags + " --n 50 --seed 3 --out " + out.string());
    CHECK(ok.exit_code == 0);
    CHECK(std::stod(ok.out) <= 1e-9);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 51);
    CHECK(rows[0] == std::vector<std::string>{"u", "explicit", "oracle", "abs_diff"});

    const RunResult single = run_cli("validate " + d1_flags + " --n 1 --seed 3 --out " +
                                     out.string());
    CHECK(single.exit_code == 0);
    CHECK(parse_csv(slurp(out)).size() == 2); // header + one row

    // a boundary spec routes through the shed-flat fallback and still passes
    const RunResult boundary =
        run_cli("validate --a 0 --b 1 --c 0.5 --shape 0.3333333333333334 --n 50 --seed 3");
    CHECK(boundary.exit_code == 0);
}
