#include "klt/json_io.hpp"

#include "klt/error.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <unistd.h>

using namespace klt;

namespace {

json load_schema(const std::string& name) {
    std::ifstream in(std::string(KLT_SCHEMA_DIR) + "/" + name);
    REQUIRE(in);
    json j;
    in >> j;
    return j;
}

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(KLT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

} // namespace

TEST_CASE("field descriptors round-trip through JSON") {
    FieldCtx f8 = ff_make(2, {1, 1, 0, 1});
    json j = field_to_json(f8);
    std::string why;
    CHECK(json_matches_schema(j, load_schema("field.schema.json"), &why));
    FieldCtx back = field_from_json(j);
    CHECK(back.q == 8);
    CHECK(back.generator == f8.generator);

    json bad = j;
    bad["generator"] = {0, 1, 1};
    CHECK_THROWS_AS(field_from_json(bad), Error);
}

TEST_CASE("matrices parse from integer residues including negatives") {
    FieldCtx f5 = ff_make_prime(5);
    MatrixFq m = matrix_from_json(f5, json::parse("[[0,-1],[1,-1]]"));
    CHECK(m.at(0, 1) == f5.from_residues({4}));
    CHECK(m.at(1, 1) == f5.from_residues({4}));
    json round = matrix_to_json(m);
    CHECK(round[0][1].get<long long>() == 4);
}

TEST_CASE("library outputs validate against the shipped schemas") {
    std::string why;

    FieldCtx f4 = ff_make(2, {1, 1, 1});
    KlValue v = kl_normalize(kl_plain(f4, CharSpec::trivial(2), f4.from_index(2)));
    CHECK(json_matches_schema(klvalue_to_json(v), load_schema("klvalue.schema.json"), &why));

    FieldCtx f3 = ff_make_prime(3);
    MatKlResult res = alg2_general(MatrixFq::from_residues(f3, {{0, -1}, {1, -1}}),
                                   CharSpec::trivial(2));
    CHECK(json_matches_schema(matkl_to_json(res), load_schema("matkl.schema.json"), &why));

    auto vals = sweep_vertical(11, VerticalMode::scale);
    CHECK(json_matches_schema(gof_to_json(gof(vals, RefDensity::semicircle_trace)),
                              load_schema("gof.schema.json"), &why));
    CHECK(json_matches_schema(histogram_to_json(make_histogram(vals, RefDensity::semicircle_trace)),
                              load_schema("histogram.schema.json"), &why));

    SequenceInput seq{make_generator_bytes(GeneratorKind::random, 1, 4000), 53, 100};
    CHECK(json_matches_schema(report_to_json(run_test(seq, 0.05)),
                              load_schema("testreport.schema.json"), &why));

    DetectionRates rates = detection_benchmark(3, 0.05, 53, 500, 2);
    CHECK(json_matches_schema(detection_to_json(rates), load_schema("detection.schema.json"), &why));
}

TEST_CASE("schema validator rejects malformed documents") {
    json schema = load_schema("gof.schema.json");
    json good{{"ks_stat", 0.1}, {"chi2", 2.0}, {"pvalue_ks", 0.5}, {"n", 10}};
    std::string why;
    CHECK(json_matches_schema(good, schema, &why));
    json missing = good;
    missing.erase("chi2");
    CHECK_FALSE(json_matches_schema(missing, schema, &why));
    json wrong_type = good;
    wrong_type["n"] = "ten";
    CHECK_FALSE(json_matches_schema(wrong_type, schema, &why));
}

TEST_CASE("CLI reproduces the reference table and is byte-stable") {
    std::string a = run_cli("lfunc --p 2 --modulus 1,1,0,1 --rmax 4");
    std::string b = run_cli("lfunc --p 2 --modulus 1,1,0,1 --rmax 4");
    CHECK(a == b);
    json j = json::parse(a);
    CHECK(j["table"][1]["K"]["re"].get<double>() == doctest::Approx(1.875));
    CHECK(j["table"][1]["C"]["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(j["table"][2]["C"]["re"].get<double>()) < 1e-9);
}

TEST_CASE("CLI green table output matches the cache schema") {
    json j = json::parse(run_cli("green --r 3"));
    std::string why;
    CHECK(json_matches_schema(j, load_schema("green_table.schema.json"), &why));
    CHECK(j["entries"].size() == 9);
}

TEST_CASE("CLI oracle subcommand") {
    json j = json::parse(run_cli("oracle --all-gl2 --q 3 --nontrivial"));
    CHECK(j["matrices"].get<int>() == 48);
    CHECK(j["max_abs_diff"].get<double>() < 1e-9);
}

TEST_CASE("CLI error reporting is machine readable") {
    json j = json::parse(run_cli("kl --p 4"));
    CHECK(j["error"].get<std::string>() == "NotPrime");
}

TEST_CASE("CLI outputs validate against the shipped schemas") {
    std::string why;
    json kl = json::parse(run_cli("kl --p 2 --modulus 1,1,0,1 --xi 0,1"));
    CHECK(json_matches_schema(kl, load_schema("klvalue.schema.json"), &why));
    json mk = json::parse(run_cli("matkl --p 5 --matrix [[0,-1],[1,-1]]"));
    CHECK(json_matches_schema(mk, load_schema("matkl.schema.json"), &why));
}

TEST_CASE("CLI randtest exit codes and verdicts") {
    // constant hex stream through a file: verdict FAIL, exit code 1
    std::string path = std::string("/tmp/klt_cli_randtest_") + std::to_string(getpid()) + ".hex";
    {
        std::ofstream out(path);
        for (int i = 0; i < 6000; ++i) out << "01";
    }
    std::string cmd = std::string(KLT_CLI_PATH) + " randtest --hex --p 53 --file " + path +
                      " > /dev/null 2>&1; echo $?";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[16] = {0};
    REQUIRE(fgets(buf, sizeof buf, pipe));
    pclose(pipe);
    std::remove(path.c_str());
    CHECK(std::string(buf) == "1\n");
}
