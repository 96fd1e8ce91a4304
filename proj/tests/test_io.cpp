#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "avedim/runner.hpp"

using namespace avedim;

namespace {

// Captures the message of the DomainError thrown by fn; empty if none thrown.
template <typename Fn>
std::string domain_message(Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("numbers render at 12 significant digits and survive a round trip") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.0 / 3.0) == "-0.666666666667");
  CHECK(format_number(1e-10) == "1e-10");
  CHECK(format_number(1048576.0) == "1048576");

  // round_display is idempotent and stays within one part in 1e11.
  for (double v : {std::log(2.0), 0.4812118250596035, 1.0616063116448504, 3.0e-14}) {
    const double r = round_display(v);
    CHECK(round_display(r) == r);
    CHECK(std::abs(r - v) <= 1e-11 * std::max(1.0, std::abs(v)));
  }

  CHECK(json_number(std::numeric_limits<double>::quiet_NaN()).is_null());
  CHECK(json_number(std::numeric_limits<double>::infinity()).is_null());
  CHECK(json_number(0.25).get<double>() == 0.25);
}

TEST_CASE("csv writers produce exact plot-ready tables") {
  BracketTable table;
  table.rows.push_back({0, 1.0 / 3.0, 1.0, true, true});
  BracketRow partial;
  partial.k = 1;
  partial.t_lower = 0.5;
  partial.t_upper = std::numeric_limits<double>::quiet_NaN();
  partial.upper_ok = false;
  table.rows.push_back(partial);
  CHECK(csv_to_string([&](std::ostream& os) { write_brackets_csv(os, table); }) ==
        "k,block_length,t_lower,t_upper\n"
        "0,1,0.333333333333,1\n"
        "1,2,0.5,\n");

  BoxCountResult boxes;
  boxes.scales = {0.5, 0.25};
  boxes.counts = {10, 37};
  CHECK(csv_to_string([&](std::ostream& os) { write_box_count_csv(os, boxes); }) ==
        "delta,count\n"
        "0.5,10\n"
        "0.25,37\n");

  SweepResult sweep;
  sweep.points.push_back({3.0, 1.5, true, ""});
  sweep.points.push_back({3.5, std::numeric_limits<double>::quiet_NaN(), false, "boom"});
  CHECK(csv_to_string([&](std::ostream& os) { write_sweep_csv(os, sweep); }) ==
        "parameter,dim_total,ok\n"
        "3,1.5,1\n"
        "3.5,,0\n");

  PointCloud cloud;
  cloud.points.push_back({0.125, 2.0 / 3.0});
  CHECK(csv_to_string([&](std::ostream& os) { write_points_csv(os, cloud); }) ==
        "x,y\n"
        "0.125,0.666666666667\n");
}

TEST_CASE("json reports carry certificates and mark missing values as null") {
  BracketRow partial;
  partial.k = 2;
  partial.t_lower = 0.4;
  partial.t_upper = std::numeric_limits<double>::quiet_NaN();
  partial.upper_ok = false;
  const nlohmann::json j = partial;
  CHECK(j["k"] == 2);
  CHECK(j["block_length"] == 4);
  CHECK(j["t_lower"].get<double>() == 0.4);
  CHECK(j["t_upper"].is_null());

  DefectCertificate cert{8, 0.2876820724517809};
  const nlohmann::json jc = cert;
  CHECK(jc["level"] == 8);
  CHECK(jc["defect_per_step"].get<double>() == round_display(0.2876820724517809));
}

TEST_CASE("config parser reads the full key set and strips comments") {
  const std::string text =
      "# dimension run on an explicit cocycle\n"
      "task = dim\n"
      "model = matrix\n"
      "alphabet = 2\n"
      "transitions = 1, 1, 1, 0\n"
      "bundle_dim = 2\n"
      "unstable_0 = 2, 0, 0, 2   # conformal generator\n"
      "unstable_1 = 3, 0, 0, 3\n"
      "stable_0 = 0.5, 0, 0, 0.5\n"
      "stable_1 = 0.25, 0, 0, 0.25\n"
      "\n"
      "k_max = 2\n"
      "tol = 1e-9\n"
      "threads = 2\n"
      "out = runs/demo\n";
  const RunConfig cfg = parse_config_text(text);
  CHECK(cfg.task == "dim");
  CHECK(cfg.model_kind == "matrix");
  CHECK(cfg.alphabet == 2);
  CHECK(cfg.transitions == std::vector<int>{1, 1, 1, 0});
  CHECK(cfg.bundle_dim == 2);
  REQUIRE(cfg.unstable_gen.size() == 2);
  REQUIRE(cfg.stable_gen.size() == 2);
  CHECK(cfg.unstable_gen[1] == std::vector<double>{3, 0, 0, 3});
  CHECK(cfg.stable_gen[1] == std::vector<double>{0.25, 0, 0, 0.25});
  CHECK(cfg.k_max == 2);
  CHECK(cfg.tol == 1e-9);
  CHECK(cfg.threads == 2);
  CHECK(cfg.out_dir == "runs/demo");
  CHECK(!cfg.has_seed);
  CHECK_NOTHROW(validate_config(cfg));

  const RunConfig hs = parse_config_text(
      "task = boxcount\nmodel = horseshoe\nexpansions = 3, 3\ncontractions = 0.2, 0.2\n"
      "beta = 0.5\ndepth = 4\nscales = 0.25, 0.125, 0.0625, 0.03125\nseed = 42\n"
      "emit_points = true\n");
  CHECK(hs.expansions == std::vector<double>{3, 3});
  CHECK(hs.contractions == std::vector<double>{0.2, 0.2});
  CHECK(hs.beta == 0.5);
  CHECK(hs.depth == 4);
  CHECK(hs.scales.size() == 4);
  CHECK(hs.has_seed);
  CHECK(hs.seed == 42);
  CHECK(hs.emit_points);
  CHECK_NOTHROW(validate_config(hs));
}

TEST_CASE("config parser rejects malformed input by name") {
  CHECK(contains(domain_message([] { parse_config_text("task = dim\nbogus_key = 1\n"); }),
                 "unknown config key 'bogus_key'"));
  CHECK(contains(domain_message([] { parse_config_text("k_max = banana\n"); }), "not a number"));
  CHECK(contains(domain_message([] { parse_config_text("tol = 1e-9 extra\n"); }),
                 "trailing characters"));
  CHECK(contains(domain_message([] { parse_config_text("just a line\n"); }), "key = value"));
  CHECK(contains(domain_message([] { parse_config_text("task =\n"); }), "missing value"));
  CHECK(contains(domain_message([] { parse_config_text("k_max = 2.5\n"); }), "integer"));
  CHECK(contains(domain_message([] { parse_config_text("seed = -3\n"); }), "nonnegative"));
  CHECK(contains(domain_message([] { parse_config_text("scales = 0.5,,0.25\n"); }),
                 "empty element"));
  CHECK(contains(domain_message([] { parse_config_text("transitions = 1, 2\n"); }), "0 or 1"));
  CHECK(contains(domain_message([] { parse_config_text("unstable_x = 1\n"); }),
                 "malformed generator key"));
  CHECK(contains(domain_message([] { parse_config_text("unstable_0 = 1\nunstable_0 = 2\n"); }),
                 "duplicate generator key"));
  CHECK(contains(domain_message([] { parse_config_text("unstable_1 = 1\n"); }), "contiguous"));
  CHECK(contains(domain_message([] { parse_config_text("emit_points = maybe\n"); }),
                 "true or false"));
}

TEST_CASE("config validation pins knob ranges and demands seeds for sampling") {
  auto base = [] {
    RunConfig cfg;
    cfg.task = "dim";
    cfg.model_kind = "horseshoe";
    cfg.expansions = {3.0, 3.0};
    cfg.contractions = {0.2, 0.2};
    return cfg;
  };

  CHECK_NOTHROW(validate_config(base()));

  auto broken = base();
  broken.task = "interpolate";
  CHECK(contains(domain_message([&] { validate_config(broken); }), "unknown task"));

  broken = base();
  broken.model_kind = "ifs";
  CHECK(contains(domain_message([&] { validate_config(broken); }), "horseshoe or matrix"));

  broken = base();
  broken.k_max = 31;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "k_max"));

  broken = base();
  broken.tol = 0.0;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "tol"));

  broken = base();
  broken.threads = 0;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "threads"));

  broken = base();
  broken.beta = 1.5;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "beta"));

  broken = base();
  broken.contractions = {0.2};
  CHECK(contains(domain_message([&] { validate_config(broken); }), "matching"));

  // Sampling tasks refuse to run without an explicit seed.
  broken = base();
  broken.task = "boxcount";
  broken.depth = 4;
  broken.scales = {0.5, 0.25, 0.125, 0.0625};
  CHECK(contains(domain_message([&] { validate_config(broken); }), "'seed' is required"));
  broken.has_seed = true;
  CHECK_NOTHROW(validate_config(broken));
  broken.scales = {0.5, 0.25};
  CHECK(contains(domain_message([&] { validate_config(broken); }), "at least 4"));

  broken = base();
  broken.task = "holder";
  broken.expansions_b = {3.3, 3.3};
  broken.contractions_b = {0.25, 0.25};
  broken.depth = 8;
  broken.pairs = 100;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "'seed' is required"));
  broken.has_seed = true;
  CHECK_NOTHROW(validate_config(broken));
  broken.pairs = 4;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "pairs"));

  broken = base();
  broken.task = "sweep";
  broken.sweep_from = 4.0;
  broken.sweep_to = 3.0;
  CHECK(contains(domain_message([&] { validate_config(broken); }), "sweep"));

  RunConfig matrix;
  matrix.task = "dim";
  matrix.model_kind = "matrix";
  matrix.alphabet = 2;
  matrix.transitions = {1, 1, 1, 1};
  matrix.bundle_dim = 1;
  matrix.unstable_gen = {{4.0}, {4.0}};
  CHECK(contains(domain_message([&] { validate_config(matrix); }), "stable generator"));
  matrix.stable_gen = {{0.25}, {0.25}};
  CHECK_NOTHROW(validate_config(matrix));
  matrix.transitions = {1, 1};
  CHECK(contains(domain_message([&] { validate_config(matrix); }), "alphabet^2"));
}

TEST_CASE("entropy and pressure tasks reproduce closed forms through the runner") {
  RunConfig cfg;
  cfg.task = "entropy";
  cfg.model_kind = "matrix";
  cfg.alphabet = 2;
  cfg.transitions = {1, 1, 1, 0};
  const RunOutputs ent = run_task(cfg);
  CHECK(ent.report["entropy"].get<double>() == doctest::Approx(0.4812118250596035).epsilon(1e-10));
  CHECK(ent.report["alphabet"] == 2);
  CHECK(ent.report["config"]["task"] == "entropy");

  RunConfig pr;
  pr.task = "pressure";
  pr.model_kind = "horseshoe";
  pr.expansions = {3.0, 3.0};
  pr.contractions = {0.2, 0.2};
  pr.k_max = 2;
  pr.t_value = 1.0;
  const RunOutputs out = run_task(pr);
  REQUIRE(out.report["estimates"].size() == 3);
  // Constant rates: every block level gives log(2/3) exactly.
  for (const auto& est : out.report["estimates"])
    CHECK(est["value"].get<double>() == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-10));
  REQUIRE(out.files.count("pressure_table.csv") == 1);
  const std::string& csv = out.files.at("pressure_table.csv");
  CHECK(contains(csv, "k,block_length,pressure\n0,1,-0.405465108108\n"));
  CHECK(contains(csv, "2,4,-0.405465108108"));
}

TEST_CASE("dim task emits bracket tables and an optional box-count cross-check") {
  RunConfig cfg;
  cfg.task = "dim";
  cfg.model_kind = "matrix";
  cfg.alphabet = 2;
  cfg.transitions = {1, 1, 1, 1};
  cfg.bundle_dim = 1;
  cfg.unstable_gen = {{4.0}, {4.0}};
  cfg.stable_gen = {{0.25}, {0.25}};
  cfg.k_max = 1;
  const RunOutputs out = run_task(cfg);
  const auto& dim = out.report["dimension"];
  CHECK(dim["dim_total"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dim["certified"] == true);
  CHECK(dim["tolerance"].get<double>() == doctest::Approx(1e-10));
  CHECK(dim["box_count_ref"].is_null());
  CHECK(dim["unstable_brackets"]["rows"].size() == 2);
  CHECK(dim["t_unstable"]["scheme"].get<std::string>().find("norm side") != std::string::npos);
  REQUIRE(out.files.count("brackets_unstable.csv") == 1);
  REQUIRE(out.files.count("brackets_stable.csv") == 1);
  // First data row: k=0 block of length 1, both roots within solver tolerance
  // of 0.5 (bisection rarely lands on the exact decimal).
  const std::string& bcsv = out.files.at("brackets_unstable.csv");
  const std::size_t row_start = bcsv.find('\n') + 1;
  REQUIRE(bcsv.substr(row_start, 4) == "0,1,");
  const double lower_rendered = std::strtod(bcsv.c_str() + row_start + 4, nullptr);
  CHECK(lower_rendered == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(out.files.count("box_counts.csv") == 0);

  RunConfig geo;
  geo.task = "dim";
  geo.model_kind = "horseshoe";
  geo.expansions = {3.0, 3.0};
  geo.contractions = {1.0 / 3.0, 1.0 / 3.0};
  geo.k_max = 1;
  geo.depth = 5;
  geo.scales = {1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0, 1.0 / 81.0};
  geo.seed = 11;
  geo.has_seed = true;
  const RunOutputs gout = run_task(geo);
  // Product of two middle-thirds sets: exact triadic counts 4^j, slope 2 log2/log3.
  const double expected = 2.0 * std::log(2.0) / std::log(3.0);
  CHECK(gout.report["box_count"]["slope"].get<double>() == doctest::Approx(expected).epsilon(1e-9));
  CHECK(gout.report["dimension"]["box_count_ref"].get<double>() ==
        doctest::Approx(expected).epsilon(1e-9));
  CHECK(gout.report["dimension"]["dim_total"].get<double>() ==
        doctest::Approx(expected).epsilon(1e-9));
  REQUIRE(gout.files.count("box_counts.csv") == 1);
  CHECK(contains(gout.files.at("box_counts.csv"), "0.333333333333,4\n"));
}

TEST_CASE("sweep and holder tasks run end to end through the runner") {
  RunConfig sw;
  sw.task = "sweep";
  sw.model_kind = "horseshoe";
  sw.contractions = {0.2, 0.2};
  sw.sweep_from = 3.0;
  sw.sweep_to = 3.2;
  sw.sweep_step = 0.1;
  sw.k_max = 0;
  const RunOutputs sout = run_task(sw);
  REQUIRE(sout.report["sweep"]["points"].size() == 3);
  const double at3 = std::log(2.0) / std::log(3.0) + std::log(2.0) / std::log(5.0);
  CHECK(sout.report["sweep"]["points"][0]["dim_total"].get<double>() ==
        doctest::Approx(at3).epsilon(1e-9));
  REQUIRE(sout.files.count("sweep.csv") == 1);
  CHECK(contains(sout.files.at("sweep.csv"), "parameter,dim_total,ok\n3,"));

  RunConfig ho;
  ho.task = "holder";
  ho.model_kind = "horseshoe";
  ho.expansions = {3.0, 3.0};
  ho.contractions = {0.25, 0.25};
  ho.expansions_b = {3.0, 3.0};
  ho.contractions_b = {0.25, 0.25};
  ho.depth = 8;
  ho.pairs = 64;
  ho.seed = 5;
  ho.has_seed = true;
  const RunOutputs hout = run_task(ho);
  CHECK(hout.report["holder"]["r_lower"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hout.report["holder"]["pairs_used"] == 64);
}

TEST_CASE("identical configs produce byte-identical reports and tables") {
  RunConfig cfg;
  cfg.task = "boxcount";
  cfg.model_kind = "horseshoe";
  cfg.expansions = {3.0, 3.0};
  cfg.contractions = {0.2, 0.2};
  cfg.depth = 4;
  cfg.scales = {1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0, 1.0 / 81.0};
  cfg.seed = 42;
  cfg.has_seed = true;
  cfg.emit_points = true;

  const RunOutputs first = run_task(cfg);
  const RunOutputs second = run_task(cfg);
  CHECK(render_report(first.report) == render_report(second.report));
  REQUIRE(first.files.size() == second.files.size());
  for (const auto& [name, contents] : first.files) {
    REQUIRE(second.files.count(name) == 1);
    CHECK(contents == second.files.at(name));
  }
  REQUIRE(first.files.count("points.csv") == 1);
  CHECK(first.files.at("points.csv").substr(0, 4) == "x,y\n");

  // The invariant-set sampler is exhaustive (one cylinder midpoint per word
  // pair), so a reseeded run changes only the echoed provenance, never the
  // geometry.
  RunConfig reseeded = cfg;
  reseeded.seed = 43;
  const RunOutputs third = run_task(reseeded);
  CHECK(third.files.at("points.csv") == first.files.at("points.csv"));
  CHECK(third.report["box_count"]["counts"] == first.report["box_count"]["counts"]);
  CHECK(third.report["config"]["seed"] == 43);
}

TEST_CASE("runner surfaces domain errors from the model layer") {
  RunConfig cfg;
  cfg.task = "dim";
  cfg.model_kind = "horseshoe";
  cfg.expansions = {2.0, 2.0};  // branch bases touch, no gap
  cfg.contractions = {0.2, 0.2};
  CHECK_THROWS_AS(run_task(cfg), DomainError);

  RunConfig pr;
  pr.task = "pressure";
  pr.model_kind = "matrix";
  pr.alphabet = 2;
  pr.transitions = {1, 1, 1, 1};
  pr.bundle_dim = 1;
  pr.unstable_gen = {{4.0}, {0.0}};  // singular generator
  CHECK_THROWS_AS(run_task(pr), DomainError);
}
