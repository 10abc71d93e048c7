#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edpnct/attacks.hpp"
#include "edpnct/io.hpp"
#include "edpnct/sim.hpp"
#include "edpnct/trace.hpp"

namespace fs = std::filesystem;
using namespace edpnct;

namespace {

EnergyTrace trace_for_config(const SimConfig& cfg, const std::string& trace_path) {
  if (!trace_path.empty()) {
    EnergyTrace trace = load_trace(trace_path);
    if (trace.n_meters == cfg.n_meters &&
        trace.n_instants == cfg.total_instants())
      return trace;
    throw std::invalid_argument("trace dimensions do not match config");
  }
  int total = cfg.total_instants();
  if (total % kSlotsPerDay != 0) {
    // Pad generation to whole days, then trim.
    EnergyTrace full =
        synth_trace(cfg.n_meters, total / kSlotsPerDay + 1, cfg.seed);
    EnergyTrace trimmed = EnergyTrace::zeros(cfg.n_meters, total);
    for (int i = 0; i < cfg.n_meters; ++i)
      for (int t = 0; t < total; ++t) trimmed(i, t) = full(i, t);
    return trimmed;
  }
  return synth_trace(cfg.n_meters, total / kSlotsPerDay, cfg.seed);
}

int cmd_gen_data(int meters, int days, std::uint64_t seed,
                 const std::string& out) {
  EnergyTrace trace = synth_trace(meters, days, seed);
  write_trace(trace, out, seed);
  std::cout << "wrote " << trace.n_meters << "x" << trace.n_instants
            << " trace to " << out << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& trace_path,
                 const std::string& out_dir) {
  SimConfig cfg = parse_sim_config(config_path);
  EnergyTrace trace = trace_for_config(cfg, trace_path);
  ExperimentResult result = run_experiment(cfg, trace);
  write_reports(result.first_run, result.metrics, {}, out_dir);
  save_transcript(result.first_run, fs::path(out_dir) / "transcript");
  std::cout << "simulated " << cfg.runs << " run(s), N=" << cfg.n_meters
            << ", T=" << cfg.total_instants() << "\n"
            << "  mae_energy=" << result.metrics.mae_energy
            << " mae_bill=" << result.metrics.mae_bill
            << " corr=" << result.metrics.corr_masked_vs_original << "\n"
            << "reports written to " << out_dir << "\n";
  return 0;
}

int cmd_attack_filtering(const std::string& transcript_dir, int p_min,
                         int p_max, const std::string& out) {
  SimTranscript tr = load_transcript(transcript_dir);
  std::vector<AttackRecord> records;
  const int total = tr.config.total_instants();
  for (int i = 0; i < tr.config.n_meters; ++i) {
    std::span<const double> masked(tr.masked.row(i),
                                   static_cast<std::size_t>(total));
    std::span<const double> truth(tr.ground_truth.row(i),
                                  static_cast<std::size_t>(total));
    double base_r;
    try {
      base_r = pearson_corr(masked, truth);
    } catch (const std::invalid_argument&) {
      continue;
    }
    auto [best_p, best_r] = best_fit_window(masked, truth, p_min, p_max);
    records.push_back({"filtering", static_cast<double>(best_p), i,
                       "corr_unfiltered", base_r});
    records.push_back(
        {"filtering", static_cast<double>(best_p), i, "corr_best", best_r});
  }
  write_attacks_csv(records, out, tr.config.seed);
  std::cout << "filtering attack on " << tr.config.n_meters
            << " meters, P in [" << p_min << "," << p_max << "] -> " << out
            << "\n";
  return 0;
}

int cmd_attack_collusion(const std::string& transcript_dir,
                         int malicious_count, const std::string& sweep_masters,
                         const std::string& out) {
  SimTranscript tr = load_transcript(transcript_dir);
  CollusionScenario scenario;
  scenario.malicious.resize(static_cast<std::size_t>(malicious_count));
  std::iota(scenario.malicious.begin(), scenario.malicious.end(), 0);
  scenario.transcript = &tr;
  LeakStats stats = collusion_attack(scenario);

  std::vector<AttackRecord> records;
  records.push_back({"collusion", static_cast<double>(tr.config.m_masters), -1,
                     "leak_sim", stats.leak_fraction});
  records.push_back({"collusion", static_cast<double>(tr.config.m_masters), -1,
                     "leak_analytic",
                     analytic_leak(tr.config.n_meters, malicious_count,
                                   tr.config.m_masters)});
  if (!sweep_masters.empty()) {
    auto dots = sweep_masters.find("..");
    if (dots == std::string::npos)
      throw std::invalid_argument("--sweep-masters expects lo..hi");
    int lo = std::stoi(sweep_masters.substr(0, dots));
    int hi = std::stoi(sweep_masters.substr(dots + 2));
    for (int m = lo; m <= hi; ++m) {
      records.push_back({"collusion", static_cast<double>(m), -1,
                         "leak_analytic",
                         analytic_leak(tr.config.n_meters, malicious_count, m)});
    }
  }
  write_attacks_csv(records, out, tr.config.seed);
  std::cout << "collusion attack: c=" << malicious_count
            << " m=" << tr.config.m_masters << " leak=" << stats.leak_fraction
            << " (" << stats.reconstructed_points << "/"
            << stats.honest_points_total << " honest points) -> " << out
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& vary,
              const std::string& values_csv, int malicious_count,
              const std::string& trace_path, const std::string& out) {
  SimConfig base = parse_sim_config(config_path);
  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string field;
  while (std::getline(ss, field, ',')) values.push_back(std::stod(field));
  if (values.empty()) throw std::invalid_argument("--values is empty");

  std::ofstream csv(out);
  if (!csv) throw std::runtime_error("cannot write file: " + out);
  csv << "# seed=" << base.seed << "\n";
  csv << "param,value,leak_sim,leak_analytic,mae_energy\n";
  for (double v : values) {
    SimConfig cfg = base;
    int c = malicious_count;
    if (vary == "malicious-count")
      c = static_cast<int>(v);
    else if (vary == "m-masters")
      cfg.m_masters = static_cast<int>(v);
    else if (vary == "n-meters")
      cfg.n_meters = static_cast<int>(v);
    else if (vary == "epsilon")
      cfg.epsilon = v;
    else if (vary == "master-drop-probability")
      cfg.master_drop_probability = v;
    else
      throw std::invalid_argument("unknown sweep parameter: " + vary);
    EnergyTrace trace = trace_for_config(cfg, vary == "n-meters" ? "" : trace_path);
    ExperimentResult result = run_experiment(cfg, trace, c);
    csv << vary << ',' << v << ',' << result.metrics.leak_fraction << ','
        << analytic_leak(cfg.n_meters, c, cfg.m_masters) << ','
        << result.metrics.mae_energy << "\n";
    csv.flush();
  }
  std::cout << "sweep over " << vary << " (" << values.size()
            << " points) -> " << out << "\n";
  return 0;
}

int cmd_report(const std::string& in_dir) {
  fs::path path = fs::path(in_dir) / "metrics.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in);
  std::cout << "metrics summary (" << path.string() << ")\n"
            << "  seed:       " << j.value("seed", 0ULL) << "\n"
            << "  runs:       " << j.value("runs", 0) << "\n"
            << "  mae_energy: " << j.value("mae_energy", 0.0) << "\n"
            << "  mae_bill:   " << j.value("mae_bill", 0.0) << "\n"
            << "  corr:       " << j.value("corr_masked_vs_original", 0.0)
            << "\n"
            << "  leak:       " << j.value("leak_fraction", 0.0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"E-DPNCT smart-metering privacy simulator and attack harness"};
  app.require_subcommand(1);

  int meters = 200, days = 30;
  std::uint64_t seed = 1;
  std::string out, config_path, trace_path, out_dir, transcript_dir;
  int p_min = 1, p_max = 60;
  int malicious_count = 0;
  std::string sweep_masters, vary, values_csv;

  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic trace CSV");
  gen->add_option("--meters", meters, "Number of households")->required();
  gen->add_option("--days", days, "Number of days (144 slots each)")->required();
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", out, "Output trace CSV")->required();

  auto* sim = app.add_subcommand("simulate", "Run the protocol simulation");
  sim->add_option("--config", config_path, "key=value config file")->required();
  sim->add_option("--trace", trace_path, "Trace CSV (synthesized when absent)");
  sim->add_option("--out-dir", out_dir, "Report output directory")->required();

  auto* af = app.add_subcommand("attack-filtering",
                                "Moving-average filtering attack");
  af->add_option("--transcript", transcript_dir, "Transcript directory")
      ->required();
  af->add_option("--p-min", p_min, "Smallest window half-size");
  af->add_option("--p-max", p_max, "Largest window half-size");
  af->add_option("--out", out, "attacks.csv output path")->required();

  auto* ac = app.add_subcommand("attack-collusion",
                                "Colluding-masters reconstruction attack");
  ac->add_option("--transcript", transcript_dir, "Transcript directory")
      ->required();
  ac->add_option("--malicious-count", malicious_count, "Colluding meters")
      ->required();
  ac->add_option("--sweep-masters", sweep_masters,
                 "Also tabulate the analytic leak for m in lo..hi");
  ac->add_option("--out", out, "attacks.csv output path")->required();

  auto* sw = app.add_subcommand("sweep", "Parameter sweep emitting a CSV curve");
  sw->add_option("--config", config_path, "key=value config file")->required();
  sw->add_option("--vary", vary,
                 "malicious-count | m-masters | n-meters | epsilon | "
                 "master-drop-probability")
      ->required();
  sw->add_option("--values", values_csv, "Comma-separated values")->required();
  sw->add_option("--malicious-count", malicious_count,
                 "Colluding meters (when not the swept parameter)");
  sw->add_option("--trace", trace_path, "Trace CSV (synthesized when absent)");
  sw->add_option("--out", out, "Output CSV")->required();

  std::string in_dir;
  auto* rep = app.add_subcommand("report", "Summarize metrics.json");
  rep->add_option("--in-dir", in_dir, "Directory holding metrics.json")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(meters, days, seed, out);
    if (sim->parsed()) return cmd_simulate(config_path, trace_path, out_dir);
    if (af->parsed())
      return cmd_attack_filtering(transcript_dir, p_min, p_max, out);
    if (ac->parsed())
      return cmd_attack_collusion(transcript_dir, malicious_count,
                                  sweep_masters, out);
    if (sw->parsed())
      return cmd_sweep(config_path, vary, values_csv, malicious_count,
                       trace_path, out);
    if (rep->parsed()) return cmd_report(in_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
