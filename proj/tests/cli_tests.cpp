#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cofin/artifact.hpp"

using namespace cofin;

namespace {

std::string cli() {
    const char* path = std::getenv("COFIN_CLI");
    REQUIRE(path != nullptr);
    return path;
}

int run(const std::string& args) {
    const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const char* kDir = "/tmp/cofin_cli_tests";

std::string path_of(const std::string& name) { return std::string(kDir) + "/" + name; }

Json base_config() {
    return Json{
        {"schema_version", 1},
        {"ground", Json::array({Json{{"name", "b"},
                                     {"kind", "block"},
                                     {"size", 2},
                                     {"pattern", Json::array({1, 0})}}})},
        {"generics", Json::array({"a"})},
        {"poset", "free"}};
}

} // namespace

TEST_CASE("certify exit codes") {
    REQUIRE(std::system((std::string("mkdir -p ") + kDir).c_str()) == 0);

    Json good = base_config();
    good["depth"] = 2;
    write_artifact(path_of("certify_good.json"), good);
    CHECK(run("certify --config " + path_of("certify_good.json") + " --out " +
              path_of("cert.json")) == 0);

    Json bad = base_config();
    bad["ground"] = Json::array({Json{{"name", "i"}, {"kind", "identity"}}});
    bad["depth"] = 1;
    write_artifact(path_of("certify_bad.json"), bad);
    CHECK(run("certify --config " + path_of("certify_bad.json")) == 1);

    spit(path_of("broken.json"), "{ not json");
    CHECK(run("certify --config " + path_of("broken.json")) == 2);
    CHECK(run("certify --config " + path_of("missing.json")) == 2);
}

TEST_CASE("hitable exit codes") {
    Json cfg = base_config();
    cfg["ground"] = Json::array();
    cfg["f"] = Json{{"head_len", 0},
                    {"head", Json::array()},
                    {"window", Json::array({1, nullptr})}};
    cfg["depth"] = 3;
    write_artifact(path_of("hitable.json"), cfg);
    CHECK(run("hitable --config " + path_of("hitable.json") + " --out " +
              path_of("hit_cert.json")) == 0);

    // Against the block swap the same map fails.
    Json fail = base_config();
    fail["f"] = cfg["f"];
    fail["depth"] = 3;
    write_artifact(path_of("hitable_fail.json"), fail);
    CHECK(run("hitable --config " + path_of("hitable_fail.json")) == 1);
}

TEST_CASE("build, determinism and verify") {
    Json cfg = base_config();
    Json schedule = Json::array();
    schedule.push_back(Json{{"kind", "word_add"}, {"word", "a"}});
    schedule.push_back(Json{{"kind", "word_add"}, {"word", "a b"}});
    for (int k = 0; k < 6; ++k)
        schedule.push_back(Json{{"kind", "domain_hit"}, {"name", "a"}, {"arg", k}});
    cfg["schedule"] = schedule;
    write_artifact(path_of("build.json"), cfg);

    CHECK(run("build generic --config " + path_of("build.json") + " --out " +
              path_of("trace1.json")) == 0);
    CHECK(run("build generic --config " + path_of("build.json") + " --out " +
              path_of("trace2.json")) == 0);
    CHECK(slurp(path_of("trace1.json")) == slurp(path_of("trace2.json")));

    CHECK(run("verify " + path_of("trace1.json")) == 0);

    // A digit flipped inside the stages section must be caught.
    std::string text = slurp(path_of("trace1.json"));
    const std::size_t stages_at = text.find("\"stages\"");
    REQUIRE(stages_at != std::string::npos);
    std::size_t digit_at = std::string::npos;
    for (std::size_t i = stages_at; i < text.size(); ++i) {
        if (isdigit(static_cast<unsigned char>(text[i]))) {
            digit_at = i;
            break;
        }
    }
    REQUIRE(digit_at != std::string::npos);
    text[digit_at] = text[digit_at] == '9' ? '8' : text[digit_at] + 1;
    spit(path_of("mutated.json"), text);
    CHECK(run("verify " + path_of("mutated.json")) == 1);

    // Truncated artifacts are unreadable.
    spit(path_of("truncated.json"), slurp(path_of("trace1.json")).substr(0, 64));
    CHECK(run("verify " + path_of("truncated.json")) == 2);
}

TEST_CASE("greedy and orbit graph commands") {
    Json cfg = base_config();
    cfg["ground"] = Json::array();
    cfg["generics"] = Json::array();
    cfg["partition"] = Json{{"kind", "singletons"}};
    cfg["stages"] = 4;
    write_artifact(path_of("greedy.json"), cfg);

    CHECK(run("build greedy-h --config " + path_of("greedy.json") + " --out " +
              path_of("greedy_out.json")) == 0);
    const Json out = read_artifact(path_of("greedy_out.json"));
    CHECK(out.at("pairs") == Json::array({Json::array({0, 1}), Json::array({1, 3}),
                                          Json::array({2, 0}), Json::array({4, 2})}));
    CHECK(out.at("claims").at("acyclic") == true);

    CHECK(run("orbit-graph --config " + path_of("greedy.json") + " --out " +
              path_of("orbit_out.json")) == 0);

    // Finitely many orbits exhaust: property failure exit.
    Json fin = cfg;
    fin["partition"] = Json{{"kind", "residues"}, {"modulus", 5}};
    fin["stages"] = 100;
    write_artifact(path_of("greedy_fin.json"), fin);
    CHECK(run("build greedy-h --config " + path_of("greedy_fin.json")) == 1);
}

TEST_CASE("embed build command") {
    Json cfg = base_config();
    cfg["ground"] = Json::array();
    cfg["generics"] = Json::array();
    cfg["poset"] = "embed";
    cfg["group"] = Json{{"kind", "cyclic"}, {"order", 2}};
    Json schedule = Json::array();
    schedule.push_back(Json{{"kind", "word_add"}, {"word", "g1 g1"}});
    for (int k = 0; k < 4; ++k)
        schedule.push_back(Json{{"kind", "domain_hit"}, {"name", "g1"}, {"arg", k}});
    cfg["schedule"] = schedule;
    write_artifact(path_of("embed.json"), cfg);

    CHECK(run("build embed --config " + path_of("embed.json") + " --out " +
              path_of("embed_trace.json")) == 0);
    CHECK(run("verify " + path_of("embed_trace.json")) == 0);

    // Mismatched mode is an input error.
    CHECK(run("build generic --config " + path_of("embed.json")) == 2);
}

TEST_CASE("stage step command") {
    Json cfg = base_config();
    cfg["ground"] = Json::array();
    cfg["generics"] = Json::array();
    cfg["partition"] =
        Json{{"kind", "mixed"},
             {"bounded", Json::array()},
             {"unbounded",
              Json::array({Json{{"head_len", 0},
                                {"head", Json::array()},
                                {"period", 2},
                                {"residues", Json::array({0})}},
                           Json{{"head_len", 0},
                                {"head", Json::array()},
                                {"period", 2},
                                {"residues", Json::array({1})}}})}};
    cfg["f"] = Json{{"head_len", 0},
                    {"head", Json::array()},
                    {"window", Json::array({2, nullptr, nullptr, nullptr})}};
    cfg["stage_params"] = Json{{"alpha_range", 3}, {"word_len", 2}, {"hits", 3}};
    write_artifact(path_of("stage.json"), cfg);

    CHECK(run("build stage-step --config " + path_of("stage.json") + " --out " +
              path_of("stage_out.json")) == 0);
    const Json out = read_artifact(path_of("stage_out.json"));
    CHECK(out.at("case") == 2);
    CHECK(out.at("certificate_passed") == true);
}
