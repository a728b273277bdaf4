#include <doctest.h>

#include <json.hpp>

#include "cli_support.hpp"

using cli_support::run;
using cli_support::tmp;
using nlohmann::json;

namespace {

std::string gen(const std::string& name, const std::string& args)
{
    const auto path = tmp(name);
    const auto r = run("graph gen " + args + " --out '" + path + "'");
    REQUIRE(r.exit_code == 0);
    return path;
}

} // namespace

TEST_CASE("cli: help and unknown flags")
{
    const auto help = run("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("spectral") != std::string::npos);
    CHECK(run("simulate --help").exit_code == 0);

    const auto bad = run("spectral --bogus");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.rfind("error: invalid-argument: ", 0) == 0);
}

TEST_CASE("cli: graph gen and spectral")
{
    const auto k8 = gen("k8.json", "--type complete --n 8");
    const auto r = run("spectral --graph '" + k8 + "'");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["n"] == 8);
    CHECK(j["edges"] == 28);
    CHECK(j["lambda1"].get<double>() == doctest::Approx(7.0).epsilon(1e-10));

    const auto stored = tmp("k8_report.json");
    CHECK(run("spectral --graph '" + k8 + "' --report '" + stored + "'").exit_code == 0);
    CHECK(json::parse(cli_support::slurp(stored)) == j);

    const auto er = run("graph gen --type erdos-renyi --n 30 --p 0.2 --seed 5");
    CHECK(er.exit_code == 0);
    CHECK(run("graph gen --type erdos-renyi --n 30 --p 0.2 --seed 5").out == er.out);
    CHECK(run("graph gen --type lattice --n 3").exit_code == 2);
}

TEST_CASE("cli: threshold verdicts and errors")
{
    const auto k8 = gen("k8.json", "--type complete --n 8");
    const auto die = run("threshold --graph '" + k8 + "' --beta 0.4 --gamma 0.05");
    REQUIRE(die.exit_code == 0);
    CHECK(json::parse(die.out)["regime"] == "DieOut");
    const auto persist = run("threshold --graph '" + k8 + "' --beta 0.1 --gamma 0.05");
    CHECK(json::parse(persist.out)["regime"] == "Persist");

    const auto zero = run("threshold --graph '" + k8 + "' --beta 0.4 --gamma 0");
    CHECK(zero.exit_code == 2);
    CHECK(zero.err == "error: invalid-argument: gamma must be > 0\n");

    CHECK(run("threshold --graph '" + k8 + "' --beta 1.5 --gamma 0.1").exit_code == 2);
}

TEST_CASE("cli: parse errors and convergence failures")
{
    const auto broken = tmp("broken.json");
    cli_support::write_file(broken, "{\"n\": 3,\n \"edges\": [[0, 1],\n [1, 1]]}\n");
    const auto r = run("spectral --graph '" + broken + "'");
    CHECK(r.exit_code == 2);
    CHECK(r.err.rfind("error: parse-error: ", 0) == 0);
    CHECK(r.err.find("edges[1]") != std::string::npos);

    const auto path = gen("path40.json", "--type path --n 40");
    const auto slow = run("spectral --graph '" + path + "' --max-iter 2");
    CHECK(slow.exit_code == 3);
    CHECK(slow.err.rfind("error: convergence-error: ", 0) == 0);

    CHECK(run("spectral --graph '" + tmp("missing.json") + "'").exit_code == 2);
}

TEST_CASE("cli: simulate is reproducible across reruns and thread counts")
{
    const auto g = gen("k10.json", "--type complete --n 10");
    const std::string base = "simulate --graph '" + g + "' --beta 0.2 --gamma 0.05 --horizon 150 --replicates 16 --seed 99";
    const auto csv1 = tmp("sim1.csv");
    const auto csv4 = tmp("sim4.csv");
    const auto a = run(base + " --threads 1 --out '" + csv1 + "'");
    const auto b = run(base + " --threads 4 --out '" + csv4 + "'");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(cli_support::slurp(csv1) == cli_support::slurp(csv4));
    CHECK(cli_support::slurp(csv1).rfind("step,replicate,compromised_count\n", 0) == 0);
    CHECK(run(base + " --threads 1").out == a.out);

    const auto j = json::parse(a.out);
    CHECK(j["replicates"] == 16);
    CHECK(j["mean_compromised_fraction"].size() == 151);
    CHECK(run(base + " --init random:30").exit_code == 2);
}

TEST_CASE("cli: meanfield")
{
    const auto g = gen("k20.json", "--type complete --n 20");
    const auto csv = tmp("mf.csv");
    const auto r = run("meanfield --graph '" + g + "' --beta 0.5 --gamma 0.01 --horizon 500 --out '" + csv + "'");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["final_total"].get<double>() < 1e-6);
    CHECK(cli_support::slurp(csv).rfind("step,total_p,max_p\n", 0) == 0);
    CHECK(run("meanfield --graph '" + g + "' --beta 0.5 --gamma 0.01 --p0 2").exit_code == 2);
}

TEST_CASE("cli: emergence and compose")
{
    const auto k6 = gen("k6.json", "--type complete --n 6");
    const std::string comps = "--components '" + k6 + "' '" + k6 + "'";
    const auto r = run("emergence " + comps +
                       " --op join --beta 0.4 --gamma 0.05 --horizon 100 --replicates 10 --seed 3");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["emergent"] == true);
    CHECK(j["composition_op"] == "join");
    CHECK(j["composite"]["lambda1"].get<double>() == doctest::Approx(11.0));

    const auto composed = run("graph compose " + comps + " --op union");
    REQUIRE(composed.exit_code == 0);
    CHECK(json::parse(composed.out)["n"] == 12);

    const auto bridge = tmp("bridge.json");
    cli_support::write_file(bridge, R"({"edges": [[0, 0], [1, 2]]})");
    const auto bridged = run("graph compose " + comps + " --op bridge --bridge-edges '" + bridge + "'");
    REQUIRE(bridged.exit_code == 0);
    CHECK(json::parse(bridged.out)["edges"].size() == 32);
    CHECK(run("graph compose " + comps + " --op bridge").exit_code == 2);
}

TEST_CASE("cli: hyperprop subcommands")
{
    const auto traces = tmp("traces.json");
    cli_support::write_file(traces, R"({"traces": [
        {"events": [{"level": "L", "kind": "out", "value": 0, "rt": 1}]},
        {"events": [{"level": "L", "kind": "out", "value": 0, "rt": 3}]}]})");
    const auto avg = run("hyperprop check --traces '" + traces + "' --property avg-rt:2.5");
    REQUIRE(avg.exit_code == 0);
    CHECK(json::parse(avg.out)["passed"] == true);
    const auto pointwise = run("hyperprop check --traces '" + traces + "' --property pointwise:max-rt:2.5");
    CHECK(json::parse(pointwise.out)["passed"] == false);
    CHECK(run("hyperprop check --traces '" + traces + "' --property fairness").exit_code == 2);

    const auto w = run("hyperprop witness --traces '" + traces + "' --property avg-rt:2.5");
    REQUIRE(w.exit_code == 0);
    CHECK(json::parse(w.out)["found"] == true);
    const auto none = run("hyperprop witness --traces '" + traces + "' --property pointwise:max-rt:2.5");
    CHECK(json::parse(none.out)["found"] == false);
    const auto generated = run("hyperprop witness --sigma Hin:0,Hin:1,Lout:0,Lout:1 --len 2 --property noninterference");
    REQUIRE(generated.exit_code == 0);
    CHECK(json::parse(generated.out)["pool"] == 16);

    const auto prop = tmp("prop.json");
    cli_support::write_file(prop, R"({"members": [["a", "b"], ["b", "a"], ["b", "b"]]})");
    const auto d = run("hyperprop decompose --property '" + prop + "' --sigma a,b --len 2");
    REQUIRE(d.exit_code == 0);
    const auto dj = json::parse(d.out);
    CHECK(dj["input_is_liveness"] == true);
    CHECK(dj["safe_is_safety"] == true);
    CHECK(dj["live_is_liveness"] == true);
    CHECK(dj["intersection_equals_input"] == true);
    CHECK(run("hyperprop decompose --property '" + prop + "'").exit_code == 2);
}
