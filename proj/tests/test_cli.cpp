#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <lierep/cli.hpp>

using namespace lierep;
using namespace lierep::cli;

namespace {

struct Result {
    int code;
    std::string out, err;
};

EnvLookup env_of(std::map<std::string, std::string> vars) {
    return [vars](const std::string &k) -> std::optional<std::string> {
        auto it = vars.find(k);
        if (it == vars.end())
            return std::nullopt;
        return it->second;
    };
}

Result invoke(const std::string &verb, std::vector<std::string> args, std::map<std::string, std::string> flags = {},
              std::map<std::string, std::string> env = {}, std::optional<std::string> config = std::nullopt) {
    Invocation inv{verb, std::move(args), std::move(flags), std::move(config), {}, {}};
    std::ostringstream out, err;
    const int code = run(inv, out, err, env_of(std::move(env)));
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name) { return std::filesystem::temp_directory_path() / name; }

} // namespace

TEST(ParseWeight, Examples) {
    EXPECT_EQ(parse_weight("[1,0,1]", 3), (DominantWeight{1, 0, 1}));
    EXPECT_EQ(parse_weight(" [ 0 , 1 ] ", 2), (DominantWeight{0, 1}));
    EXPECT_EQ(parse_weight("[8,7,0,7,8]"), (DominantWeight{8, 7, 0, 7, 8}));
}

TEST(ParseWeight, Errors) {
    EXPECT_THROW(parse_weight("[1,-2]"), InvalidArgument);
    EXPECT_THROW(parse_weight("1,2"), InvalidArgument);
    EXPECT_THROW(parse_weight("[1,,2]"), InvalidArgument);
    EXPECT_THROW(parse_weight("[]"), InvalidArgument);
    EXPECT_THROW(parse_weight("[1,a]"), InvalidArgument);
    EXPECT_THROW(parse_weight("[1,0]", 3), InvalidArgument);
    EXPECT_THROW(parse_weight("[0,0,0,0,0,0,0,0,0,0,0,0,0]"), InvalidArgument);
}

TEST(Run, CellOnSlSideWeights) {
    const auto r = invoke("cell", {"[0,1,0]", "[1,0,1]"}, {{"pair", "even"}, {"n", "2"}, {"format", "json"}});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["body"]["n1"], 4);
    EXPECT_EQ(j["body"]["n2"], 2);
    EXPECT_EQ(j["body"]["n3"], 2);
    EXPECT_EQ(j["body"]["n4"], 0);
}

TEST(Run, CellPaperLayout) {
    const auto r = invoke("cell", {"[0,1]", "[0,1]"}, {{"pair", "odd"}, {"n", "2"}});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "12 1\n4 3\nmissing: [0,1,1,0]\n");
}

TEST(Run, Decompose) {
    const auto r = invoke("decompose", {"[0,1]", "[0,1]"}, {{"family", "B"}, {"rank", "2"}, {"format", "long"}});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "weight,multiplicity\n\"[0,2]\",1\n\"[1,0]\",1\n\"[0,0]\",1\n");
    const auto inferred = invoke("decompose", {"[0,1,0]", "[0,1,0]"}, {{"family", "A"}});
    EXPECT_EQ(inferred.code, 0) << inferred.err;
    EXPECT_NE(inferred.out.find("(3 distinct)"), std::string::npos);
}

TEST(Run, FoldAndUnfold) {
    auto r = invoke("fold", {"[8,7,0]"}, {{"pair", "even"}, {"n", "3"}});
    EXPECT_EQ(r.out, "[8,7,0,7,8]\n");
    r = invoke("unfold", {"[8,7,0,7,8]"}, {{"n", "3"}});
    EXPECT_EQ(r.out, "[8,7,0]\n");
    r = invoke("unfold", {"[8,7,1,7,0]"}, {{"n", "3"}});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("not-selfdual"), std::string::npos);
}

TEST(Run, ExitCodes) {
    EXPECT_EQ(invoke("fold", {"[1,-2]"}).code, 2);
    EXPECT_EQ(invoke("explode", {}).code, 2);
    EXPECT_EQ(invoke("cell", {"[1,0,0]", "[1,0,1]"}).code, 3);
    EXPECT_EQ(invoke("scan", {}, {{"height", "1"}, {"limit", "5"}}).code, 0); // partial, not an error
    EXPECT_EQ(invoke("table", {}, {{"preset", "a3b2"}, {"limit", "10"}}).code, 5);
    EXPECT_EQ(invoke("decompose", {"[1]", "[1]"}).code, 2);           // no family
    EXPECT_EQ(invoke("triple", {"[1,0]", "[1,0]"}).code, 2);          // arity
    EXPECT_EQ(invoke("fold", {"[1,0]"}, {{"workers", "0"}}).code, 2); // bad setting
    const auto err = invoke("fold", {"[1,-2]"}).err;
    EXPECT_NE(err.find("error[parse] code=2"), std::string::npos);
}

TEST(Run, Triple) {
    const auto r = invoke("triple", {"[1,0]", "[1,0]", "[1,0]"}, {{"format", "json"}, {"deterministic", "1"}});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto body = Json::parse(r.out)["body"];
    EXPECT_EQ(body["m_sl"], 2);
    EXPECT_EQ(body["m_fold"], 0);
    EXPECT_EQ(body["is_missing"], true);
}

TEST(Run, TablePresetPaperAndLong) {
    const auto paper = invoke("table", {}, {{"preset", "a3b2"}});
    ASSERT_EQ(paper.code, 0) << paper.err;
    std::istringstream lines(paper.out);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    EXPECT_EQ(header, "row,\"{1,0}\",,\"{1,1}\",,\"{2,2}\",,\"{2,8}\",,\"{5,0}\",,\"{5,9}\",,\"{8,0}\",");
    EXPECT_EQ(first, "\"{0,1}\",4,0,6,0,6,0,6,0,4,0,6,0,4,0");
    EXPECT_EQ(second, ",2,2,4,4,4,4,4,4,2,2,4,4,2,2");

    const auto longf = invoke("table", {}, {{"pair", "odd"}, {"format", "long"}}, {}, std::nullopt);
    EXPECT_EQ(longf.code, 0);
    EXPECT_EQ(longf.out, "pair,n,row,col,V,W,n1,n2,n3,n4\n");
}

TEST(Run, TableRowsAndColumns) {
    Invocation inv{"table", {}, {{"pair", "odd"}, {"format", "long"}}, std::nullopt, {"[0,5]"}, {"[5,0]", "[0,1]"}};
    std::ostringstream out, err;
    ASSERT_EQ(run(inv, out, err, env_of({})), 0) << err.str();
    EXPECT_EQ(out.str(), "pair,n,row,col,V,W,n1,n2,n3,n4\n"
                         "odd,2,\"{0,5}\",\"{5,0}\",\"[0,5,5,0]\",\"[5,0,0,5]\",349,12,12,0\n"
                         "odd,2,\"{0,5}\",\"{0,1}\",\"[0,5,5,0]\",\"[0,1,1,0]\",20,4,3,1\n");
}

TEST(Run, ScanAndVerify) {
    auto r = invoke("scan", {}, {{"height", "1"}, {"filter", "last_zero(1) && last_zero(2)"}, {"format", "long"}});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("even,2,1,last_zero(1) && last_zero(2),C1,16,5,1,1/5,"), std::string::npos) << r.out;
    r = invoke("verify", {}, {{"pair", "odd"}, {"height", "1"}, {"format", "json"}});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out)["body"]["conjecture"], "C3");
    EXPECT_EQ(invoke("verify", {}, {{"conjecture", "C3"}}).code, 2);
}

TEST(Run, OtherVerbs) {
    auto r = invoke("special", {"1", "1"}, {{"format", "json"}});
    ASSERT_EQ(r.code, 0) << r.err;
    auto b = Json::parse(r.out)["body"];
    EXPECT_EQ(b["selfdual_total"], 4);
    EXPECT_EQ(b["distinct_matches"], false);
    r = invoke("question1", {"2", "2"}, {{"n", "2"}, {"format", "json"}});
    EXPECT_EQ(Json::parse(r.out)["body"]["doubling_match"], false);
    EXPECT_EQ(Json::parse(r.out)["body"]["halving_match"], true);
    r = invoke("question2", {"1", "1"}, {{"n", "2"}, {"format", "json"}});
    EXPECT_EQ(Json::parse(r.out)["body"]["bijection_holds"], true);
    r = invoke("twisted", {}, {{"n", "1"}, {"format", "json"}});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out)["body"]["fixed_count"], 2);
    r = invoke("twisted", {}, {{"n", "3"}});
    EXPECT_NE(r.out.find("fixed_count: 8"), std::string::npos);
}

TEST(Json, ReportRoundTrip) {
    const auto r = invoke("table", {}, {{"pair", "even"}, {"format", "json"}}, {}, std::nullopt);
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    const Report rep = report_from_json(j);
    EXPECT_EQ(to_json(rep), j);
    EXPECT_TRUE(rep.metadata.cache.has_value());
    EXPECT_TRUE(rep.metadata.elapsed_ms.has_value());
}

TEST(Json, TypedBodiesRoundTrip) {
    const PairKind pair(PairKind::odd, 2);
    const auto cell = pair_table_cell_folded(pair, {0, 1}, {0, 1});
    EXPECT_EQ(cell_from_json(Json::parse(to_json(cell).dump())), cell);
    const auto triple = triple_report(PairKind(PairKind::even, 2), {1, 0}, {1, 0}, {1, 0});
    EXPECT_EQ(triple_report_from_json(Json::parse(to_json(triple).dump())), triple);
    const auto scan = scan_missing(PairKind(PairKind::even, 2), 1, TripleFilter::parse("last_zero(1)"));
    EXPECT_EQ(scan_report_from_json(Json::parse(to_json(scan).dump())), scan);
    const auto d = tensor_decompose(root_datum(Letter::C, 2), {1, 1}, {0, 2});
    EXPECT_EQ(decomposition_from_json(Json::parse(to_json(d).dump())), d);
}

TEST(Json, DeterministicOutputIsByteIdenticalAcrossWorkers) {
    std::string reference;
    for (const char *workers : {"1", "2", "4"}) {
        const auto r = invoke("scan", {},
                              {{"pair", "odd"}, {"height", "2"}, {"workers", workers}, {"format", "json"},
                               {"deterministic", "true"}});
        ASSERT_EQ(r.code, 0) << r.err;
        if (reference.empty())
            reference = r.out;
        EXPECT_EQ(r.out, reference);
    }
    const Json j = Json::parse(reference);
    EXPECT_FALSE(j["metadata"].contains("elapsed_ms"));
    EXPECT_FALSE(j["metadata"].contains("cache"));
    EXPECT_EQ(j["metadata"]["settings"]["height"], 2);
    EXPECT_EQ(j["metadata"]["settings"]["pair"], "odd");
}

TEST(Json, DeterministicTableGolden) {
    const auto r = invoke("cell", {"[0,1]", "[1,0]"}, {{"format", "json"}, {"deterministic", "true"}});
    ASSERT_EQ(r.code, 0);
    const char *golden = R"({
  "metadata": {
    "tool": "lierep",
    "version": "1.0.0",
    "verb": "cell",
    "args": [
      "[0,1]",
      "[1,0]"
    ],
    "settings": {
      "family": null,
      "rank": null,
      "pair": "even",
      "n": 2,
      "height": 1,
      "filter": "none",
      "conjecture": null,
      "limit": 10000000,
      "preset": null
    },
    "notes": []
  },
  "body": {
    "pair": {
      "kind": "even",
      "n": 2
    },
    "V": [
      0,
      1,
      0
    ],
    "W": [
      1,
      0,
      1
    ],
    "V_folded": [
      0,
      1
    ],
    "W_folded": [
      1,
      0
    ],
    "n1": 4,
    "n2": 2,
    "n3": 2,
    "n4": 0,
    "missing": []
  }
}
)";
    EXPECT_EQ(r.out, golden);
}

TEST(Settings, Precedence) {
    const auto cfg = temp_file("lierep_test.conf");
    std::ofstream(cfg) << "# settings\npair = odd\nn = 3\nformat = json\n";
    // Config alone.
    auto s = resolve_settings("fold", {}, {}, cfg.string(), env_of({}));
    EXPECT_EQ(s.pair, PairKind::odd);
    EXPECT_EQ(s.n, 3);
    // Environment beats config.
    s = resolve_settings("fold", {}, {}, cfg.string(), env_of({{"LIEREP_N", "4"}}));
    EXPECT_EQ(s.n, 4);
    EXPECT_EQ(s.pair, PairKind::odd);
    // Flags beat environment.
    s = resolve_settings("fold", {}, {{"n", "5"}}, cfg.string(), env_of({{"LIEREP_N", "4"}}));
    EXPECT_EQ(s.n, 5);
    // Config path from the environment.
    s = resolve_settings("fold", {}, {}, std::nullopt, env_of({{"LIEREP_CONFIG", cfg.string()}}));
    EXPECT_EQ(s.n, 3);
    // Defaults.
    s = resolve_settings("fold", {}, {}, std::nullopt, env_of({}));
    EXPECT_EQ(s.n, 2);
    EXPECT_EQ(s.pair, PairKind::even);
    EXPECT_EQ(s.format, Format::paper);
    EXPECT_EQ(s.limit, 10'000'000u);

    std::ofstream(cfg) << "colour = blue\n";
    EXPECT_THROW(resolve_settings("fold", {}, {}, cfg.string(), env_of({})), InvalidArgument);
    std::filesystem::remove(cfg);
    EXPECT_THROW(resolve_settings("fold", {}, {}, cfg.string(), env_of({})), InvalidArgument);
}

TEST(Settings, CachePersistenceThroughRun) {
    for (const char *format : {"json", "bin"}) {
        const auto path = temp_file(std::string("lierep_cli_cache.") + format);
        std::filesystem::remove(path);
        const std::map<std::string, std::string> flags{
            {"cache", path.string()}, {"cache-format", format}, {"format", "json"}, {"pair", "odd"}};
        const auto first = invoke("cell", {"[0,5]", "[5,0]"}, flags);
        ASSERT_EQ(first.code, 0) << first.err;
        ASSERT_TRUE(std::filesystem::exists(path));
        const auto second = invoke("cell", {"[0,5]", "[5,0]"}, flags);
        const auto j1 = Json::parse(first.out), j2 = Json::parse(second.out);
        EXPECT_EQ(j1["body"], j2["body"]);
        EXPECT_EQ(j1["metadata"]["cache"]["decompositions"]["hits"], 0);
        EXPECT_EQ(j2["metadata"]["cache"]["decompositions"]["hits"], 2);
        EXPECT_EQ(j2["metadata"]["cache"]["decompositions"]["misses"], 0);
        std::filesystem::remove(path);
    }
}

TEST(Binary, EndToEnd) {
    const std::string cli = LIEREP_CLI_PATH;
    const auto out = temp_file("lierep_e2e.txt");
    const std::string cmd = cli + " cell --pair odd --n 2 '[0,1]' '[0,1]' > " + out.string() + " 2>&1";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), "12 1\n4 3\nmissing: [0,1,1,0]\n");
    const std::string bad = cli + " fold '[1,-2]' > /dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
    const std::string unknown = cli + " fold --bogus 1 > /dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system(unknown.c_str())), 2);
    const std::string help = cli + " --help > /dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system(help.c_str())), 0);
    std::filesystem::remove(out);
}
