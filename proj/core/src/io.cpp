#include "edpnct/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace edpnct {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

void write_matrix(const EnergyTrace& m, const std::filesystem::path& path,
                  std::uint64_t seed) {
  auto out = open_out(path);
  if (seed != 0) out << "# seed=" << seed << "\n";
  out << "meter_id";
  for (int t = 0; t < m.n_instants; ++t) out << ",t" << t;
  out << "\n";
  for (int i = 0; i < m.n_meters; ++i) {
    out << i;
    for (int t = 0; t < m.n_instants; ++t) out << ',' << fmt(m(i, t));
    out << "\n";
  }
}

// Trace-shaped CSV without the non-negativity constraint (noise is signed).
EnergyTrace read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::string line;
  do {
    if (!std::getline(in, line))
      throw std::invalid_argument("malformed matrix: missing header");
  } while (!line.empty() && line[0] == '#');
  EnergyTrace m;
  int expected_cols = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // meter id
    int cols = 0;
    while (std::getline(row, field, ',')) {
      m.values.push_back(std::stod(field));
      ++cols;
    }
    if (expected_cols < 0)
      expected_cols = cols;
    else if (cols != expected_cols)
      throw std::invalid_argument("malformed matrix");
    ++m.n_meters;
  }
  m.n_instants = expected_cols;
  return m;
}

}  // namespace

SimConfig parse_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file: " + path.string());
  SimConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    std::string stripped;
    for (char c : line)
      if (!is_space(c)) stripped += c;
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    std::string key = stripped.substr(0, eq);
    std::string value = stripped.substr(eq + 1);
    auto bad_value = [&key]() -> std::invalid_argument {
      return std::invalid_argument("invalid value for config key: " + key);
    };
    auto to_i = [&](const std::string& s) {
      try {
        return std::stoi(s);
      } catch (const std::exception&) {
        throw bad_value();
      }
    };
    auto to_d = [&](const std::string& s) {
      try {
        return std::stod(s);
      } catch (const std::exception&) {
        throw bad_value();
      }
    };
    auto to_u = [&](const std::string& s) -> std::uint64_t {
      try {
        return std::stoull(s);
      } catch (const std::exception&) {
        throw bad_value();
      }
    };
    if (key == "n_meters")
      cfg.n_meters = to_i(value);
    else if (key == "m_masters")
      cfg.m_masters = to_i(value);
    else if (key == "instants_per_period")
      cfg.instants_per_period = to_i(value);
    else if (key == "n_periods")
      cfg.n_periods = to_i(value);
    else if (key == "epsilon")
      cfg.epsilon = to_d(value);
    else if (key == "unit_price")
      cfg.tariff.unit_price = to_d(value);
    else if (key == "surcharge_price")
      cfg.tariff.surcharge_price = to_d(value);
    else if (key == "max_allowed_units")
      cfg.tariff.max_allowed_units = to_d(value);
    else if (key == "seed")
      cfg.seed = to_u(value);
    else if (key == "master_drop_probability")
      cfg.master_drop_probability = to_d(value);
    else if (key == "runs")
      cfg.runs = to_i(value);
    else if (key == "sensitivity")
      cfg.sensitivity = to_d(value);
    else if (key == "record_share_messages")
      cfg.record_share_messages = (value == "1" || value == "true");
    else
      throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

void write_attacks_csv(const std::vector<AttackRecord>& attacks,
                       const std::filesystem::path& path, std::uint64_t seed) {
  auto out = open_out(path);
  out << "# seed=" << seed << "\n";
  out << "attack,param,meter_id,metric,value\n";
  for (const auto& rec : attacks) {
    out << rec.attack << ',' << fmt(rec.param) << ',' << rec.meter_id << ','
        << rec.metric << ',' << fmt(rec.value) << "\n";
  }
}

void write_reports(const SimTranscript& transcript,
                   const MetricBundle& metrics,
                   const std::vector<AttackRecord>& attacks,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::uint64_t seed = transcript.config.seed;

  {
    auto out = open_out(out_dir / "load.csv");
    out << "# seed=" << seed << "\n";
    out << "instant,masked_sum,reported_noise,recovered_load,masters_missing\n";
    for (const auto& lr : transcript.load_reports) {
      out << lr.instant << ',' << fmt(lr.masked_sum) << ','
          << fmt(lr.reported_noise_sum) << ',' << fmt(lr.recovered_load) << ','
          << lr.masters_missing << "\n";
    }
  }
  {
    auto out = open_out(out_dir / "bills.csv");
    out << "# seed=" << seed << "\n";
    out << "meter_id,period,masked_total,base,surcharge,correction,total\n";
    for (const auto& b : transcript.bills) {
      out << b.meter_id << ',' << b.period << ',' << fmt(b.masked_total) << ','
          << fmt(b.base_bill) << ',' << fmt(b.surcharge_bill) << ','
          << fmt(b.error_correction_applied) << ',' << fmt(b.total_bill)
          << "\n";
    }
  }
  write_attacks_csv(attacks, out_dir / "attacks.csv", seed);
  {
    json j;
    j["seed"] = seed;
    j["runs"] = metrics.per_run_mae_energy.size();
    j["mae_energy"] = metrics.mae_energy;
    j["mae_bill"] = metrics.mae_bill;
    j["corr_masked_vs_original"] = metrics.corr_masked_vs_original;
    j["leak_fraction"] = metrics.leak_fraction;
    j["per_run"]["mae_energy"] = metrics.per_run_mae_energy;
    j["per_run"]["mae_bill"] = metrics.per_run_mae_bill;
    j["per_run"]["corr_masked_vs_original"] = metrics.per_run_corr;
    j["per_run"]["leak_fraction"] = metrics.per_run_leak;
    auto out = open_out(out_dir / "metrics.json");
    out << j.dump(2) << "\n";
  }
}

void save_transcript(const SimTranscript& transcript,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& cfg = transcript.config;

  json meta;
  meta["n_meters"] = cfg.n_meters;
  meta["m_masters"] = cfg.m_masters;
  meta["instants_per_period"] = cfg.instants_per_period;
  meta["n_periods"] = cfg.n_periods;
  meta["epsilon"] = cfg.epsilon;
  meta["unit_price"] = cfg.tariff.unit_price;
  meta["surcharge_price"] = cfg.tariff.surcharge_price;
  meta["max_allowed_units"] = cfg.tariff.max_allowed_units;
  meta["seed"] = cfg.seed;
  meta["master_drop_probability"] = cfg.master_drop_probability;
  meta["sensitivity"] = transcript.params.sensitivity;
  meta["scale"] = transcript.params.scale;
  {
    auto out = open_out(dir / "meta.json");
    out << meta.dump(2) << "\n";
  }

  write_matrix(transcript.ground_truth, dir / "ground_truth.csv", cfg.seed);
  write_matrix(transcript.masked, dir / "masked.csv", cfg.seed);
  write_matrix(transcript.net_noise, dir / "net_noise.csv", cfg.seed);
  {
    auto out = open_out(dir / "masters.csv");
    out << "# seed=" << cfg.seed << "\n";
    out << "instant";
    for (int k = 0; k < cfg.m_masters; ++k) out << ",m" << k;
    out << "\n";
    for (std::size_t t = 0; t < transcript.masters.size(); ++t) {
      out << t;
      for (int id : transcript.masters[t]) out << ',' << id;
      out << "\n";
    }
  }
}

SimTranscript load_transcript(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "meta.json");
  if (!meta_in)
    throw std::runtime_error("cannot open transcript meta: " +
                             (dir / "meta.json").string());
  json meta = json::parse(meta_in);

  SimTranscript tr;
  tr.config.n_meters = meta.at("n_meters").get<int>();
  tr.config.m_masters = meta.at("m_masters").get<int>();
  tr.config.instants_per_period = meta.at("instants_per_period").get<int>();
  tr.config.n_periods = meta.at("n_periods").get<int>();
  tr.config.epsilon = meta.at("epsilon").get<double>();
  tr.config.tariff.unit_price = meta.at("unit_price").get<double>();
  tr.config.tariff.surcharge_price = meta.at("surcharge_price").get<double>();
  tr.config.tariff.max_allowed_units =
      meta.at("max_allowed_units").get<double>();
  tr.config.seed = meta.at("seed").get<std::uint64_t>();
  tr.config.master_drop_probability =
      meta.at("master_drop_probability").get<double>();
  tr.params = PrivacyParams::create(tr.config.epsilon,
                                    meta.at("sensitivity").get<double>(),
                                    tr.config.n_meters);

  tr.ground_truth = read_matrix(dir / "ground_truth.csv");
  tr.masked = read_matrix(dir / "masked.csv");
  tr.net_noise = read_matrix(dir / "net_noise.csv");

  std::ifstream in(dir / "masters.csv");
  if (!in)
    throw std::runtime_error("cannot open transcript masters: " +
                             (dir / "masters.csv").string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("instant", 0) == 0)
      continue;
    std::stringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // instant
    std::vector<int> ids;
    while (std::getline(row, field, ',')) ids.push_back(std::stoi(field));
    tr.masters.push_back(std::move(ids));
  }
  return tr;
}

}  // namespace edpnct
