#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "run_process.hpp"

using hadml::testing::run_process;

namespace {

const std::string kExe = HADML_CLI_PATH;

hadml::testing::ProcessResult cli(const std::string& args) { return run_process(kExe + " " + args); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> cells(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, ',');) out.push_back(c);
    return out;
}

}  // namespace

TEST_CASE("eval prints t,value,terms_used") {
    const auto e = cli("eval --function alpha-ml --alpha 1 --nu 1 --gamma 1 --points 1:1:1");
    CHECK(e.exit_code == 0);
    const auto l = lines(e.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "t,value,terms_used");
    CHECK(l[1].rfind("1,2.718281828459045", 0) == 0);

    const auto g = cli("eval --function gcom-normalizer --r 0 --nu 1 --points 2:2:1");
    CHECK(std::stod(cells(lines(g.out).at(1)).at(1)) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));

    const auto m = cli("eval --function alpha-ml --alpha 2 --nu 1 --gamma 1 --points 1:1:1");
    CHECK(std::fabs(std::stod(cells(lines(m.out).at(1)).at(1)) / 2.279585302336067267437204 - 1.0) < 1e-15);

    CHECK(cli("eval --function le-roy --alpha 1.5 --points 2").out.find("2.0613375769083") != std::string::npos);
    CHECK(cli("eval --function wright --a 1 --b 1 --points 0,1").exit_code == 0);
    CHECK(cli("eval --function ml --nu 0.5 --gamma 1 --points -2:2:0.5").exit_code == 0);
}

TEST_CASE("range specs include stop on the step lattice") {
    CHECK(lines(cli("eval --function ml --nu 1 --gamma 1 --points 0:1:0.1").out).size() == 12);
    CHECK(lines(cli("eval --function ml --nu 1 --gamma 1 --points 0:1:0.3").out).size() == 5);
    const auto l = lines(cli("eval --function ml --nu 1 --gamma 1 --points 0:1:0.1").out);
    CHECK(cells(l.back()).at(0) == "1");
    CHECK(cli("eval --function ml --nu 1 --gamma 1 --points 1:0:0.1").exit_code == 2);
    CHECK(cli("eval --function ml --nu 1 --gamma 1 --points 0:1:0").exit_code == 2);
    CHECK(cli("eval --function ml --nu 1 --gamma 1 --points 0:x:1").exit_code == 2);
}

TEST_CASE("dist commands") {
    const auto pmf = lines(cli("dist pmf --family gcom --r 0 --nu 1 --t 3 --kmax 2").out);
    REQUIRE(pmf.size() == 4);
    CHECK(pmf[0] == "k,pmf,log_pmf");
    const double e3 = std::exp(-3.0);
    CHECK(std::stod(cells(pmf[1])[1]) == doctest::Approx(e3).epsilon(1e-14));
    CHECK(std::stod(cells(pmf[2])[1]) == doctest::Approx(3 * e3).epsilon(1e-14));
    CHECK(std::stod(cells(pmf[3])[1]) == doctest::Approx(4.5 * e3).epsilon(1e-14));

    const auto mom = lines(cli("dist moments --family com --nu 0.5 --t 2").out);
    REQUIRE(mom.size() == 2);
    CHECK(mom[0] == "mean,variance,dispersion");
    CHECK(std::stod(cells(mom[1]).at(2)) > 1.0);

    const auto s = cli("dist sample --family gcom --r 1 --nu 1 --t 0.5 -n 5 --seed 42");
    CHECK(s.exit_code == 0);
    const auto sl = lines(s.out);
    REQUIRE(sl.size() == 6);
    for (std::size_t i = 1; i < sl.size(); ++i) CHECK(std::stoll(sl[i]) >= 0);

    const auto pgf = lines(cli("dist pgf --family fractional --alpha 0.6 --t 2 --points 1").out);
    CHECK(std::stod(cells(pgf.at(1)).at(1)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("exit codes") {
    CHECK(cli("verify --check theorem2 --alpha 2").exit_code == 0);
    CHECK(cli("verify --check theorem2 --alpha 2").out.find(",false") == std::string::npos);
    CHECK(cli("verify --check theorem1 --nu 1.5").exit_code == 2);
    CHECK(cli("verify --check theorem7").exit_code == 2);
    CHECK(cli("verify --check theorem2 --tol 1e-30 --termwise-tol 1e-30").exit_code == 1);
    CHECK(cli("dist pmf --family gcom --r 0.7 --nu 1 --t 1").exit_code == 2);
    CHECK(cli("dist pmf --family com --t 1").exit_code == 2);
    CHECK(cli("eval --function alpha-ml --alpha 0.2 --nu 0.1 --gamma 1 --points 100").exit_code == 3);
    CHECK(cli("eval --function alpha-ml --alpha 1 --nu 1 --gamma 1 --points 50 --max-terms 5").exit_code == 3);
    CHECK(cli("eval --function nope --points 1").exit_code == 2);
    CHECK(cli("").exit_code == 2);
    CHECK(cli("--help").exit_code == 0);
}

TEST_CASE("verify --all passes and lists every check in order") {
    const auto r = cli("verify --all");
    CHECK(r.exit_code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 17);
    CHECK(l[0] == "check_id,max_abs_residual,max_rel_residual,tolerance,passed");
    for (std::size_t i = 2; i < l.size(); ++i) CHECK(cells(l[i - 1])[0] < cells(l[i])[0]);
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(cells(l[i]).at(4) == "true");
}

TEST_CASE("property: identical flags give byte-identical output") {
    for (const std::string args : {
             "eval --function alpha-ml --alpha 1.5 --nu 0.8 --gamma 1.2 --points 0:3:0.25",
             "eval --function gcom-normalizer --r 0.3 --nu 1.5 --points 0:4:0.5",
             "dist pmf --family fcom --nu 1.5 --alpha 0.8 --gamma 1.2 --t 2 --kmax 30",
             "dist sample --family com --nu 0.5 --t 2 -n 200 --seed 7",
             "dist moments --family gcom --r 0.3 --nu 1.5 --t 2",
             "verify --all",
         }) {
        const auto a = cli(args);
        const auto b = cli(args);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("the tolerance environment variable sets the default series tolerance") {
    const std::string args = " eval --function alpha-ml --alpha 1 --nu 1 --gamma 1 --points 1";
    const auto loose = run_process("HADML_DEFAULT_TOL=1e-3 " + kExe + args);
    const auto dflt = run_process(kExe + args);
    CHECK(loose.exit_code == 0);
    CHECK(std::stoi(cells(lines(loose.out).at(1)).at(2)) < std::stoi(cells(lines(dflt.out).at(1)).at(2)));
    CHECK(run_process("HADML_DEFAULT_TOL=abc " + kExe + args).exit_code == 2);
}

TEST_CASE("output ignores the process locale") {
    const std::string args = " eval --function ml --nu 1 --gamma 1 --points 0.5";
    CHECK(run_process("LC_ALL=de_DE.UTF-8 " + kExe + args).out == run_process("LC_ALL=C " + kExe + args).out);
}
