/* vim: set sw=4 sts=4 et : */

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{
    class Cli : public testing::Test
    {
        protected:
            fs::path dir;

            auto SetUp() -> void override
            {
                auto name = std::string("embedlab-cli-") + testing::UnitTest::GetInstance()->current_test_info()->name();
                dir = fs::temp_directory_path() / name;
                fs::remove_all(dir);
                fs::create_directories(dir);
            }

            auto TearDown() -> void override
            {
                fs::remove_all(dir);
            }

            auto path(const std::string & name) const -> std::string
            {
                return (dir / name).string();
            }

            // exit status of the CLI; stdout and stderr land in out.txt and err.txt
            auto cli(const std::string & args, const std::string & env = "") const -> int
            {
                auto command = env + " " + std::string(EMBEDLAB_CLI) + " " + args
                    + " >" + path("out.txt") + " 2>" + path("err.txt");
                int status = std::system(command.c_str());
                return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            }

            auto read(const std::string & name) const -> std::string
            {
                std::ifstream in(path(name), std::ios::binary);
                std::stringstream s;
                s << in.rdbuf();
                return s.str();
            }

            auto count(const std::string & name, const std::string & prefix) const -> std::size_t
            {
                std::istringstream in(read(name));
                std::size_t n = 0;
                for (std::string line ; std::getline(in, line) ; )
                    n += line.starts_with(prefix);
                return n;
            }

            auto write(const std::string & name, const std::string & text) const -> void
            {
                std::ofstream(path(name)) << text;
            }
    };

    auto data(const std::string & file) -> std::string
    {
        return std::string(EMBEDLAB_TEST_DATA) + "/" + file;
    }
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(cli(""), 2);
    EXPECT_EQ(cli("frobnicate"), 2);
    EXPECT_EQ(cli("gen --family omega_k --k 0 --stages 5"), 2);
    EXPECT_NE(read("err.txt").find("InvalidSpec"), std::string::npos);
    EXPECT_EQ(cli("suite --criterion 9"), 2);
    EXPECT_EQ(cli("--help"), 0);
}

TEST_F(Cli, GenIsDeterministic)
{
    ASSERT_EQ(cli("gen --family omega_k --k 3 --policy permuted --seed 5 --stages 200 --out " + path("a.txt")), 0);
    ASSERT_EQ(cli("gen --family omega_k --k 3 --policy permuted --seed 5 --stages 200 --out " + path("b.txt")), 0);
    EXPECT_EQ(count("a.txt", "-- stage "), 200u);
    EXPECT_EQ(read("a.txt"), read("b.txt"));
    ASSERT_EQ(cli("gen --family omega_k --k 3 --policy permuted --seed 6 --stages 200 --out " + path("c.txt")), 0);
    EXPECT_NE(read("a.txt"), read("c.txt"));
}

TEST_F(Cli, RunAndClassify)
{
    ASSERT_EQ(cli("gen --family omega --stages 200 --out " + path("s.txt")), 0);
    ASSERT_EQ(cli("run --op replicate:3 --in " + path("s.txt") + " --stages 200 --log " + path("r.jsonl")), 0);
    EXPECT_EQ(count("r.jsonl", "{"), 200u);
    auto first = read("r.jsonl");
    ASSERT_EQ(cli("run --op replicate:3 --in " + path("s.txt") + " --stages 200 --log " + path("r.jsonl")), 0);
    EXPECT_EQ(read("r.jsonl"), first);

    ASSERT_EQ(cli("classify --log " + path("r.jsonl") + " --claim omega_k:3 --W 5"), 0);
    EXPECT_EQ(json::parse(read("out.txt")).at("verdict"), "CONSISTENT");
    ASSERT_EQ(cli("classify --log " + path("r.jsonl") + " --claim omega_star --W 5"), 0);
    EXPECT_EQ(json::parse(read("out.txt")).at("verdict"), "INCONSISTENT");
}

TEST_F(Cli, RunErrors)
{
    ASSERT_EQ(cli("gen --family omega --stages 20 --out " + path("s.txt")), 0);
    EXPECT_EQ(cli("run --op no_such_op --in " + path("s.txt")), 2);
    EXPECT_NE(read("err.txt").find("UnknownOperator"), std::string::npos);
    EXPECT_EQ(cli("run --op eq2ord_v1 --in " + path("s.txt")), 3);
    EXPECT_EQ(cli("run --op replicate:2 --in " + path("missing.txt")), 2);
    EXPECT_EQ(cli("run --op replicate:2 --in " + path("s.txt") + " --schedule shrink"), 2);
    EXPECT_EQ(cli("run --op formula2eq --in " + path("s.txt")), 2);
}

TEST_F(Cli, SentencesAndConstructions)
{
    ASSERT_EQ(cli("gen --family omega_k --k 2 --stages 60 --out " + path("s.txt")), 0);
    ASSERT_EQ(cli("run --op phi_sigma2 --phi " + data("least.s2") + " --psi " + data("greatest.s2")
                + " --in " + path("s.txt") + " --log " + path("r.jsonl")), 0);
    ASSERT_EQ(cli("classify --log " + path("r.jsonl") + " --claim omega --W 5"), 0);
    EXPECT_EQ(json::parse(read("out.txt")).at("verdict"), "CONSISTENT");

    ASSERT_EQ(cli("gen --family omega --policy ascending --stages 30 --out " + path("w.txt")), 0);
    ASSERT_EQ(cli("run --op phi_pair --target-a omega_k:2 --target-b omega_star_k:2 --in " + path("w.txt")
                + " --log " + path("p.jsonl")), 0);
    std::istringstream in(read("p.jsonl"));
    std::string line;
    while (std::getline(in, line))
        EXPECT_EQ(json::parse(line).at("annotations").at("building"), "A");
}

TEST_F(Cli, Force)
{
    write("alpha.txt", "lt 0 1\nlt 1 2\n");
    ASSERT_EQ(cli("force --op replicate:2 --alpha " + path("alpha.txt") + " --atom \"lt 1 4\" --ext 2 --budget 4"), 0);
    auto j = json::parse(read("out.txt"));
    EXPECT_EQ(j.at("outcome"), "FORCED");
    EXPECT_FALSE(j.contains("certificate"));

    ASSERT_EQ(cli("force --op replicate:2 --alpha " + path("alpha.txt") + " --atom \"lt 4 1\" --ext 2 --budget 4"), 0);
    j = json::parse(read("out.txt"));
    EXPECT_EQ(j.at("outcome"), "REFUTED");
    EXPECT_TRUE(j.contains("certificate"));

    write("pair.txt", "lt 0 1\n");
    ASSERT_EQ(cli("force --op axioms --axioms " + data("undetermined.ax") + " --alpha " + path("pair.txt")
                + " --atom \"lt 100 101\" --ext 1 --budget 3"), 0);
    EXPECT_EQ(json::parse(read("out.txt")).at("outcome"), "UNKNOWN");
    EXPECT_EQ(cli("force --op replicate:2 --alpha " + path("alpha.txt") + " --atom \"lt 1 99\""), 2);
}

TEST_F(Cli, SuiteSeedOverride)
{
    ASSERT_EQ(cli("suite --criterion 3 --seed 7 --out " + path("a.jsonl")), 0);
    ASSERT_EQ(cli("suite --criterion 3 --seed 1 --out " + path("b.jsonl"), "EMBEDLAB_SEED=7"), 0);
    EXPECT_EQ(read("a.jsonl"), read("b.jsonl"));
    ASSERT_EQ(cli("suite --criterion 3 --seed 1 --out " + path("c.jsonl")), 0);
    EXPECT_NE(read("a.jsonl"), read("c.jsonl"));

    std::istringstream in(read("a.jsonl"));
    std::string line;
    std::size_t records = 0;
    while (std::getline(in, line)) {
        auto j = json::parse(line);
        EXPECT_EQ(j.at("v"), 1);
        EXPECT_EQ(j.at("verdict"), "PASS");
        ++records;
    }
    EXPECT_EQ(records, 3u);
}
