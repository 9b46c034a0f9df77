#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "isoshare/cli.hpp"

using namespace isoshare;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = ISOSHARE_SOURCE_DIR;
const fs::path demo_config = source_dir / "configs" / "demo.conf";

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("isoshare_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    /// Runs the real binary; stdout and stderr land in files.
    CliRun cli(const std::string& args) {
        const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
        const std::string cmd = std::string("\"") + ISOSHARE_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                                err.string() + "\"";
        int status = std::system(cmd.c_str());
        CliRun r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    std::string share(std::size_t i, const fs::path& sub = "deal") const {
        return "\"" + (dir_ / sub / ("share_" + std::to_string(i) + ".isoshare")).string() + "\"";
    }
    std::string pub(const fs::path& sub = "deal") const {
        return "\"" + (dir_ / sub / "public.isoshare").string() + "\"";
    }
    std::string q(const fs::path& p) const { return "\"" + p.string() + "\""; }

    fs::path dir_;
};

std::string line_value(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return {};
}

/// The chain the CLI deals for a given master seed, via the library.
std::string expected_chain_text(const SchemeParams& params, std::uint64_t master) {
    auto chain = random_walk(params.curve, params.iso_prime, params.iso_exponent, derive_seed(master, walk_seed_tag));
    auto P = random_point_of_order(params.curve, params.torsion_order, derive_seed(master, point_seed_tag));
    std::ostringstream o;
    print_chain(o, chain, P, evaluate_chain(chain, P));
    return o.str();
}

} // namespace

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(ErrorKind::not_enough_shares), 4);
    EXPECT_EQ(exit_code_for(ErrorKind::digest_mismatch), 5);
    EXPECT_EQ(exit_code_for(ErrorKind::inconsistent), 6);
    EXPECT_EQ(exit_code_for(ErrorKind::not_a_codeword), 6);
    EXPECT_EQ(exit_code_for(ErrorKind::parse_error), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::duplicate_share), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::io_error), 3);
}

TEST(Config, ParsesAndRejects) {
    auto cfg = parse_config(slurp(demo_config));
    EXPECT_EQ(cfg.params.n, 5u);
    EXPECT_EQ(cfg.params.code.kind, CodeKind::block_rs);
    ASSERT_TRUE(cfg.seed);
    EXPECT_EQ(*cfg.seed, 0x5eedu);
    auto kind = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::invalid_argument;
    };
    const std::string good = slurp(demo_config);
    EXPECT_EQ(kind(good + "n = 6\n"), ErrorKind::parse_error);
    EXPECT_EQ(kind(good + "colour = blue\n"), ErrorKind::parse_error);
    EXPECT_EQ(kind("p = 431\n"), ErrorKind::parse_error);
    EXPECT_EQ(kind(good + "bogus line\n"), ErrorKind::parse_error);
}

TEST(PublicFile, RoundTripAndDigest) {
    auto cfg = parse_config(slurp(demo_config));
    PublicContext ctx{cfg.params, random_walk(cfg.params.curve, 3, 2, 1).codomain()};
    auto text = format_public(ctx);
    auto parsed = parse_public(text);
    EXPECT_EQ(parsed.context.params, ctx.params);
    EXPECT_EQ(parsed.context.e1, ctx.e1);
    EXPECT_EQ(parsed.digest, context_digest(ctx));
    auto pos = text.find("\nn 5");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 4, "\nn 6");
    EXPECT_THROW(
        try { parse_public(text); } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::digest_mismatch);
            throw;
        },
        Error);
}

TEST(ShareFileFormat, RoundTrip) {
    Share s{3, {1, 0, 1, 1, 0, 0, 1, 0, 1}};
    auto parsed = parse_share(format_share(s, "abcd"));
    EXPECT_EQ(parsed.share, s);
    EXPECT_EQ(parsed.digest, "abcd");
    EXPECT_THROW(parse_share("ISOSHARE 1\ndigest x\n"), Error);
    EXPECT_THROW(parse_share("ISOSHARE 1\ndigest x\nindex 0\ngamma 4\nbits zz\n"), Error);
}

TEST_F(CliTest, DealWritesFilesDeterministically) {
    auto r1 = cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "a"));
    ASSERT_EQ(r1.code, 0) << r1.err;
    auto r2 = cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "b"));
    ASSERT_EQ(r2.code, 0) << r2.err;
    EXPECT_EQ(line_value(r1.out, "status"), "ok");
    for (std::size_t i = 0; i < 5; ++i) {
        auto name = "share_" + std::to_string(i) + ".isoshare";
        ASSERT_TRUE(fs::exists(dir_ / "a" / name));
        EXPECT_EQ(slurp(dir_ / "a" / name), slurp(dir_ / "b" / name));
    }
    EXPECT_FALSE(fs::exists(dir_ / "a" / "share_5.isoshare"));
    EXPECT_EQ(slurp(dir_ / "a" / "public.isoshare"), slurp(dir_ / "b" / "public.isoshare"));
    auto r3 = cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "c") + " --seed 1234");
    ASSERT_EQ(r3.code, 0);
    EXPECT_NE(slurp(dir_ / "a" / "share_0.isoshare"), slurp(dir_ / "c" / "share_0.isoshare"));
}

TEST_F(CliTest, RecoverMatchesDealtSecret) {
    ASSERT_EQ(cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "deal")).code, 0);
    const auto expected = expected_chain_text(parse_config(slurp(demo_config)).params, 0x5eed);
    for (auto set : {std::vector<int>{0, 1, 2}, {2, 3, 4}, {0, 2, 4}, {1, 3, 4}, {0, 1, 2, 3, 4}}) {
        std::string args = "recover -p " + pub();
        for (int i : set) args += " " + share(i);
        auto r = cli(args);
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(line_value(r.out, "status"), "ok");
        EXPECT_EQ(line_value(r.out, "shares_used"), std::to_string(set.size()));
        EXPECT_NE(r.out.find(expected), std::string::npos) << r.out;
    }
}

TEST_F(CliTest, ShowSecretPrintsTheDealtChain) {
    auto r = cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "deal") + " --show-secret");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find(expected_chain_text(parse_config(slurp(demo_config)).params, 0x5eed)), std::string::npos);
}

TEST_F(CliTest, RecoverFailureModes) {
    ASSERT_EQ(cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "deal")).code, 0);
    ASSERT_EQ(cli("deal -c " + q(demo_config) + " -o " + q(dir_ / "other") + " --seed 99").code, 0);

    auto few = cli("recover -p " + pub() + " " + share(0) + " " + share(3));
    EXPECT_EQ(few.code, 4);
    EXPECT_EQ(line_value(few.out, "status"), "NotEnoughShares");

    auto mixed = cli("recover -p " + pub() + " " + share(0) + " " + share(1) + " " + share(2, "other"));
    EXPECT_EQ(mixed.code, 5);

    auto dup = cli("recover -p " + pub() + " " + share(0) + " " + share(1) + " " + share(1));
    EXPECT_EQ(dup.code, 2);

    // Flip one hex digit of share 2's body and present all five shares.
    auto text = slurp(dir_ / "deal" / "share_2.isoshare");
    auto pos = text.find("bits ") + 5;
    text[pos] = text[pos] == '0' ? '1' : '0';
    spit(dir_ / "deal" / "share_2.isoshare", text);
    std::string all = "recover -p " + pub();
    for (int i = 0; i < 5; ++i) all += " " + share(i);
    auto tampered = cli(all);
    EXPECT_EQ(tampered.code, 6) << tampered.out << tampered.err;

    spit(dir_ / "garbage.isoshare", "not a share\n");
    EXPECT_EQ(cli("recover -p " + pub() + " " + q(dir_ / "garbage.isoshare") + " " + share(0) + " " + share(1)).code, 2);
    EXPECT_EQ(cli("recover -p " + pub() + " " + q(dir_ / "missing.isoshare")).code, 3);
}

TEST_F(CliTest, DealRefusesViolationsWithoutForce) {
    auto text = slurp(demo_config);
    auto pos = text.find("t = 3");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 5, "t = 2");
    spit(dir_ / "bad.conf", text);
    auto r = cli("deal -c " + q(dir_ / "bad.conf") + " -o " + q(dir_ / "x"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("below_dimension_bound"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_ / "x" / "public.isoshare"));
    EXPECT_EQ(cli("deal -c " + q(dir_ / "bad.conf") + " -o " + q(dir_ / "x") + " --force").code, 0);
    EXPECT_EQ(cli("deal -c " + q(dir_ / "nope.conf") + " -o " + q(dir_ / "x")).code, 3);
    EXPECT_EQ(cli("deal -o " + q(dir_ / "x")).code, 2);
}

TEST_F(CliTest, CheckReportsIntervalAndBurstConditions) {
    auto demo = cli("check -c " + q(demo_config));
    ASSERT_EQ(demo.code, 0);
    EXPECT_EQ(line_value(demo.out, "interval"), "[3, 3]");
    EXPECT_EQ(line_value(demo.out, "status"), "valid");
    EXPECT_EQ(line_value(demo.out, "cost.s2"), "45");

    auto rs = cli("check -c " + q(source_dir / "configs" / "rs16.conf"));
    ASSERT_EQ(rs.code, 0);
    EXPECT_EQ(line_value(rs.out, "code.provenance"), "binary-expanded-RS");
    EXPECT_EQ(line_value(rs.out, "burst.status"), "violated");
    EXPECT_EQ(line_value(rs.out, "status"), "valid");

    auto burst = cli("check -c " + q(source_dir / "configs" / "burst.conf"));
    ASSERT_EQ(burst.code, 0);
    EXPECT_EQ(line_value(burst.out, "burst.status"), "");
    EXPECT_EQ(line_value(burst.out, "burst.epsilon"), "2");

    auto text = slurp(demo_config);
    text.replace(text.find("lambda = 32"), 11, "lambda = 90");
    spit(dir_ / "empty.conf", text);
    auto none = cli("check -c " + q(dir_ / "empty.conf"));
    EXPECT_EQ(none.code, 0);
    EXPECT_EQ(line_value(none.out, "interval"), "none");
    EXPECT_EQ(line_value(none.out, "note"), "no valid t");
    EXPECT_EQ(line_value(none.out, "status"), "invalid");
}

TEST_F(CliTest, BurstDecoderUsedWhenConditionsHold) {
    auto d = cli("deal -c " + q(source_dir / "configs" / "burst.conf") + " -o " + q(dir_ / "deal") + " --seed 7");
    ASSERT_EQ(d.code, 0) << d.err;
    std::string args = "recover -p " + pub();
    for (int i = 2; i < 15; ++i) args += " " + share(i);
    auto r = cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(line_value(r.out, "decoder"), "burst");
    auto params = parse_config(slurp(source_dir / "configs" / "burst.conf")).params;
    EXPECT_NE(r.out.find(expected_chain_text(params, 7)), std::string::npos);
}
