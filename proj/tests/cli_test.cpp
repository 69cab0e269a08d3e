#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Result run_cli(const std::string& args)
{
    const std::string err_path = ::testing::TempDir() + "mw_cli_stderr.txt";
    const std::string cmd = std::string(MATTERWAVE_CLI) + " " + args + " 2>" + err_path;
    FILE* p = popen(cmd.c_str(), "r");
    EXPECT_NE(p, nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
}

nlohmann::json error_of(const Result& r)
{
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_TRUE(j.contains("error"));
    return j.at("error");
}

std::string strip_timestamp(std::string s)
{
    const auto pos = s.find("\"timestamp\"");
    if (pos == std::string::npos) return s;
    const auto end = s.find('\n', pos);
    return s.erase(pos, end - pos);
}

TEST(Cli, ConstantsReport)
{
    const auto r = run_cli("constants");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    const double est = j.at("results").at("hbar_estimate").at("value").get<double>();
    EXPECT_NEAR(est, 1.081e-34, 0.002e-34);
    EXPECT_EQ(j.at("results").at("hbar_estimate").at("unit"), "J s");
    EXPECT_EQ(j.at("experiment"), "constants");
    EXPECT_TRUE(j.contains("timestamp"));
    EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, ComptonBackscatter)
{
    const auto r = run_cli("compton --theta-deg 180 --lambda 5e-11");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j.at("results").at("delta_lambda").at("value").get<double>(), 2.0 * 2.4263e-12, 1e-15);
    EXPECT_EQ(j.at("inputs").at("theta-deg").get<double>(), 180.0);
    EXPECT_EQ(j.at("inputs").at("lambda").get<double>(), 5e-11);
}

TEST(Cli, MaxwellPasses)
{
    const auto r = run_cli("maxwell --check all --ladder 64,128");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("results").at("pass").at("value").get<bool>());
}

TEST(Cli, CsvOutputToFile)
{
    const std::string path = ::testing::TempDir() + "mw_cli_compton.csv";
    const auto r = run_cli("-f csv -o " + path + " compton");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto text = slurp(path);
    EXPECT_EQ(text.rfind("name,index,value,unit,provenance\r\n", 0), 0u);
    EXPECT_NE(text.find("delta_lambda,,2.42"), std::string::npos);
}

TEST(Cli, DeterministicAcrossThreadCounts)
{
    const std::string args = "wave-residual --dir 1,1,0 --n 128 --ladder 64,128";
    const auto a = run_cli("--threads 1 " + args);
    const auto b = run_cli("--threads 4 " + args);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(strip_timestamp(a.out), strip_timestamp(b.out));

    const auto c = run_cli("--seed 5 epr --n 5000 --window1 0.1");
    const auto d = run_cli("--seed 5 epr --n 5000 --window1 0.1");
    EXPECT_EQ(strip_timestamp(c.out), strip_timestamp(d.out));
    EXPECT_EQ(nlohmann::json::parse(c.out).at("inputs").at("seed"), 5);
}

TEST(Cli, ConfigFileAndOverrides)
{
    const std::string path = ::testing::TempDir() + "mw_cli.cfg";
    {
        std::ofstream f(path);
        f << "# test config\nformat = json\n[compton]\ntheta-deg = 60\nlambda = 2e-10\n";
    }
    auto r = run_cli("--config " + path + " compton");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("inputs").at("theta-deg").get<double>(), 60.0);
    EXPECT_EQ(j.at("inputs").at("lambda").get<double>(), 2e-10);

    r = run_cli("--config " + path + " compton --theta-deg 120");
    ASSERT_EQ(r.code, 0) << r.err;
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("inputs").at("theta-deg").get<double>(), 120.0);
    EXPECT_EQ(j.at("inputs").at("lambda").get<double>(), 2e-10);

    {
        std::ofstream f(path);
        f << "[compton]\ntheta = 60\n";
    }
    r = run_cli("--config " + path + " compton");
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(error_of(r).at("kind"), "invalid_parameter");
}

TEST(Cli, UsageErrorsExitTwo)
{
    auto r = run_cli("bogus");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(error_of(r).at("code"), 2);
    EXPECT_EQ(error_of(r).at("kind"), "unknown_experiment");

    r = run_cli("");
    EXPECT_EQ(r.code, 2);

    r = run_cli("suite nonsense");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(error_of(r).at("kind"), "unknown_experiment");

    r = run_cli("compton --no-such-flag 1");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(error_of(r).at("kind"), "usage");
}

TEST(Cli, InvalidParametersExitThree)
{
    for (const char* args : {"compton --theta-deg abc", "wave-residual --n 4", "lorentz --beta 1.5",
                             "wave-residual --order 3", "spin --kind anyon", "compton --lambda -1"}) {
        const auto r = run_cli(args);
        EXPECT_EQ(r.code, 3) << args << "\n" << r.err;
        EXPECT_EQ(error_of(r).at("code"), 3) << args;
        EXPECT_TRUE(r.out.empty()) << args;
    }
}

TEST(Cli, IoFailuresExitFour)
{
    auto r = run_cli("-o /nonexistent-dir/out.json constants");
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(error_of(r).at("kind"), "io");
    r = run_cli("--config /nonexistent-dir/none.cfg constants");
    EXPECT_EQ(r.code, 4);
}

TEST(Cli, HelpListsExitCodes)
{
    const auto r = run_cli("--help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
    for (const char* name : {"constants", "maxwell", "compton", "epr", "suite"})
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

} // namespace
