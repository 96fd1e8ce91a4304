// Command-line driver. Reads a key = value config, runs one task, writes
// report.json plus any CSV tables into the output directory. Exit codes:
// 0 success, 1 domain/input error, 2 resource budget exceeded, 3 verification
// failure. All numeric work happens in the header-only library; this file
// only shuffles bytes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "avedim/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw avedim::DomainError("cli: cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw avedim::DomainError("cli: cannot write output file '" + path.string() + "'");
  out << contents;
}

void print_summary(const avedim::RunConfig& cfg, const avedim::RunOutputs& out) {
  using avedim::format_number;
  const nlohmann::json& r = out.report;
  if (cfg.task == "entropy") {
    std::cout << "entropy = " << format_number(r["entropy"].get<double>()) << " nats\n";
  } else if (cfg.task == "pressure") {
    const auto& last = r["estimates"].back();
    std::cout << "block pressure at t = " << format_number(cfg.t_value) << " (" << cfg.cost
              << " cost): " << format_number(last["value"].get<double>()) << " at block length "
              << (1 << cfg.k_max) << "\n";
  } else if (cfg.task == "dim") {
    const auto& d = r["dimension"];
    std::cout << "dim = " << format_number(d["dim_total"].get<double>()) << " in ["
              << format_number(d["dim_lower"].get<double>()) << ", "
              << format_number(d["dim_upper"].get<double>()) << "], certified "
              << (d["certified"].get<bool>() ? "yes" : "no") << ", " << d["flags"].size()
              << " flag(s)\n";
    for (const auto& f : d["flags"]) std::cout << "  flag: " << f.get<std::string>() << "\n";
    if (!d["box_count_ref"].is_null())
      std::cout << "box-count cross-check slope = "
                << format_number(d["box_count_ref"].get<double>()) << "\n";
  } else if (cfg.task == "boxcount") {
    const auto& b = r["box_count"];
    std::cout << "box-count slope = " << format_number(b["slope"].get<double>())
              << " (fit quality " << format_number(b["fit_quality"].get<double>()) << ") over "
              << r["points"].get<std::size_t>() << " points\n";
    const std::string note = b["note"].get<std::string>();
    if (!note.empty()) std::cout << "  note: " << note << "\n";
  } else if (cfg.task == "sweep") {
    std::cout << r["sweep"]["points"].size() << " sweep points, max adjacent jump = "
              << format_number(r["sweep"]["max_adjacent_jump"].get<double>()) << "\n";
  } else if (cfg.task == "holder") {
    std::cout << "conjugacy exponent lower bound = "
              << format_number(r["holder"]["r_lower"].get<double>()) << " from "
              << r["holder"]["pairs_used"].get<int>() << " pairs\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bowen-equation dimension reports for hyperbolic sets, with box-count cross-checks"};
  std::string config_path, task_override, out_override;
  int threads = 0;
  long long seed = -1;
  app.add_option("--config,-c", config_path, "run configuration file (key = value lines)");
  app.add_option("--task,-t", task_override,
                 "task to run: entropy | pressure | dim | boxcount | sweep | holder | verify");
  app.add_option("--out,-o", out_override, "output directory (default from config, else '.')");
  app.add_option("--threads", threads, "worker threads; affects speed only, never results");
  app.add_option("--seed", seed, "sampling seed; overrides the config value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    avedim::RunConfig cfg;
    if (!config_path.empty())
      cfg = avedim::parse_config_text(read_file(config_path));
    else if (task_override.empty())
      throw avedim::DomainError("cli: need --config or --task (try 'verify')");
    if (!task_override.empty()) cfg.task = task_override;
    if (threads > 0) cfg.threads = threads;
    if (seed >= 0) {
      cfg.seed = static_cast<std::uint64_t>(seed);
      cfg.has_seed = true;
    }
    if (!out_override.empty()) cfg.out_dir = out_override;

    const avedim::RunOutputs out = avedim::run_task(cfg);

    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", avedim::render_report(out.report));
    for (const auto& [name, contents] : out.files) write_file(dir / name, contents);

    if (cfg.task == "verify") {
      for (const auto& c : out.report["criteria"])
        std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  criterion "
                  << c["id"].get<int>() << " (" << c["name"].get<std::string>()
                  << "): " << c["detail"].get<std::string>() << "\n";
      if (!out.report["all_passed"].get<bool>()) {
        std::cout << "verification FAILED; details in " << (dir / "report.json").string() << "\n";
        return 3;
      }
      std::cout << "all criteria passed\n";
    } else {
      print_summary(cfg, out);
    }
    std::cout << "wrote " << (dir / "report.json").string();
    for (const auto& [name, contents] : out.files) std::cout << ", " << (dir / name).string();
    std::cout << "\n";
    return 0;
  } catch (const avedim::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const avedim::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
