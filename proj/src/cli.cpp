#include "qcvol/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "qcvol/analytic.hpp"
#include "qcvol/mc.hpp"
#include "qcvol/repr.hpp"

namespace qcvol::cli {

namespace {

using json = nlohmann::json;
using Row = std::vector<json>;

const char* kind_name(ChannelKind kind) { return kind == ChannelKind::general ? "general" : "unital"; }

json meta(const RunConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"n", cfg.n},
              {"workers", cfg.workers},
              {"version", kVersion},
              {"command_line", cfg.command_line}};
}

std::string csv_cell(const json& cell) {
  if (cell.is_number_float()) return format_double(cell.get<double>());
  if (cell.is_number()) return cell.dump();
  if (cell.is_null()) return "";
  std::string s = cell.is_string() ? cell.get<std::string>() : cell.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

/// Writes a table either as CSV (header + rows) or as a JSON document holding
/// `meta`, the `extra` fields, and the rows as objects keyed by column.
void emit(const RunConfig& cfg, std::ostream& out, const std::vector<std::string>& header,
          const std::vector<Row>& rows, const json& extra = json::object()) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.output_path) {
    file.open(*cfg.output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + *cfg.output_path);
    sink = &file;
  }
  if (cfg.output_format == OutputFormat::csv) {
    for (std::size_t i = 0; i < header.size(); ++i) *sink << (i ? "," : "") << header[i];
    *sink << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) *sink << (i ? "," : "") << csv_cell(row[i]);
      *sink << '\n';
    }
    return;
  }
  json doc = extra;
  doc["meta"] = meta(cfg);
  json records = json::array();
  for (const auto& row : rows) {
    json record = json::object();
    for (std::size_t i = 0; i < header.size(); ++i) record[header[i]] = row[i];
    records.push_back(std::move(record));
  }
  doc["rows"] = std::move(records);
  *sink << doc.dump(2) << '\n';
}

double analytic_volume(ChannelKind kind) {
  return kind == ChannelKind::general ? vol_general() : vol_unital();
}

json ks_json(const KsResult& ks) {
  return json{{"d_statistic", ks.d_statistic}, {"p_value", ks.p_value}, {"n", ks.n}};
}

Row general_row(const GeneralChannelParams& p) {
  return {p.a,        p.f,        p.b.real(), p.b.imag(), p.c.real(), p.c.imag(),
          p.d.real(), p.d.imag(), p.e.real(), p.e.imag(), p.g.real(), p.g.imag()};
}

Row unital_row(const UnitalChannelParams& p) {
  return {p.a,        p.b.real(), p.b.imag(), p.c.real(), p.c.imag(),
          p.d.real(), p.d.imag(), p.e.real(), p.e.imag()};
}

struct CurveSpec {
  double lo, hi;
  std::function<double(double)> f;
  std::vector<double> seams;
  bool is_density;
};

CurveSpec curve_for(const RunConfig& cfg) {
  const double r0 = cfg.r0;
  const auto& w = cfg.which;
  if (w == "va") return {0.0, 1.0, v_a, {}, false};
  if (w == "eta") return {-1.0, 1.0, eta_z, {0.0}, true};
  if (w == "kappa") return {0.0, 1.0, kappa_mm, {}, true};
  if (w == "kappa_unital") {
    if (!(r0 > 0.0)) throw std::invalid_argument("--which kappa_unital needs --r0 > 0");
    return {0.0, 1.0, [r0](double r) { return kappa_unital(r, r0); }, {r0}, true};
  }
  if (w == "kappa_general") {
    return {0.0, 1.0, [r0](double r) { return kappa_general(r, r0); }, {r0}, true};
  }
  if (w == "fz") return {-1.0, 1.0, [r0](double x) { return fz_general(x, r0); }, {-r0, r0}, true};
  if (w == "cdfz") {
    return {-1.0, 1.0, [r0](double x) { return cdf_z_general(x, r0); }, {-r0, r0}, false};
  }
  if (w == "mean_radius") return {0.0, 1.0, mean_radius_general, {}, false};
  throw std::invalid_argument("unknown --which " + w);
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  const auto value = std::stoull(text, &used, 0);
  if (used != text.size()) throw std::invalid_argument("bad seed: " + text);
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (cfg.bins < 2) throw std::invalid_argument("--bins must be >= 2");
  if (cfg.grid < 2) throw std::invalid_argument("--grid must be >= 2");
  if (!(cfg.r0 >= 0.0 && cfg.r0 <= 1.0)) throw std::invalid_argument("--r0 must lie in [0, 1]");
  if (cfg.workers < 1) throw std::invalid_argument("--workers must be >= 1");
  if (cfg.steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (cfg.rotations < 1) throw std::invalid_argument("--rotations must be >= 1");
  if (!(cfg.contraction > 0.0)) throw std::invalid_argument("--contraction must be positive");
  if (cfg.sampler != "sequential" && cfg.sampler != "rejection") {
    throw std::invalid_argument("--sampler must be sequential or rejection");
  }
}

int cmd_volume(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const VolumeEstimate est = estimate_volume(cfg.kind, cfg.n, cfg.seed, cfg.workers);
  const double analytic = analytic_volume(cfg.kind);
  const json z_score = est.std_error > 0.0 ? json((est.value - analytic) / est.std_error) : json();
  emit(cfg, out, {"kind", "estimate", "std_error", "analytic", "z_score", "n", "accepted", "lambda_volume"},
       {{kind_name(cfg.kind), est.value, est.std_error, analytic, z_score, est.n_trials,
         est.n_accepted, est.lambda_volume}});
  return kExitOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<Row> rows;
  rows.reserve(cfg.n);
  RngStream rng(cfg.seed, 0);
  const bool rejection = cfg.sampler == "rejection";
  if (cfg.kind == ChannelKind::general) {
    for (std::uint64_t i = 0; i < cfg.n; ++i) {
      rows.push_back(general_row(rejection ? rejection_sample_general(rng)
                                           : sequential_sample_general(rng)));
    }
    emit(cfg, out,
         {"a", "f", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "e_re", "e_im", "g_re", "g_im"},
         rows, json{{"kind", "general"}, {"sampler", cfg.sampler}});
  } else {
    for (std::uint64_t i = 0; i < cfg.n; ++i) {
      rows.push_back(unital_row(rejection ? rejection_sample_unital(rng)
                                          : sequential_sample_unital(rng)));
    }
    emit(cfg, out, {"a", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "e_re", "e_im"}, rows,
         json{{"kind", "unital"}, {"sampler", cfg.sampler}});
  }
  return kExitOk;
}

int cmd_push(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double r0 = cfg.r0;
  if (cfg.kind == ChannelKind::unital && !(r0 > 0.0)) {
    throw std::invalid_argument("unital push needs --r0 > 0 (the output is the centre otherwise)");
  }
  EmpiricalDistribution radii = pushforward_radii(cfg.kind, r0, cfg.n, cfg.seed, cfg.workers);
  std::function<double(double)> density, cdf;
  if (cfg.kind == ChannelKind::general) {
    density = [r0](double r) { return kappa_general(r, r0); };
    cdf = [r0](double r) { return kappa_general_cdf(r, r0); };
  } else {
    density = [r0](double r) { return kappa_unital(r, r0); };
    cdf = [r0](double r) { return kappa_unital_cdf(r, r0); };
  }
  const KsResult ks = ks_test(radii, cdf);
  const Histogram& h = radii.bin(cfg.bins, 0.0, 1.0);
  const double width = 1.0 / cfg.bins;
  std::vector<Row> rows;
  for (int i = 0; i < cfg.bins; ++i) {
    const double centre = 0.5 * (h.edges[i] + h.edges[i + 1]);
    rows.push_back({centre, static_cast<double>(h.counts[i]) / (static_cast<double>(cfg.n) * width),
                    density(centre)});
  }
  const bool pass = ks.p_value > 0.01;
  emit(cfg, out, {"r", "empirical_density", "analytic_density"}, rows,
       json{{"kind", kind_name(cfg.kind)},
            {"r0", r0},
            {"ks", ks_json(ks)},
            {"mean_radius", radii.mean()},
            {"mean_std_error", radii.std_error()},
            {"verdict", pass ? "PASS" : "FAIL"}});
  if (cfg.output_format == OutputFormat::csv) {
    err << "ks_d=" << format_double(ks.d_statistic) << " ks_p=" << format_double(ks.p_value)
        << (pass ? " PASS" : " FAIL") << '\n';
  }
  return pass ? kExitOk : kExitStatFail;
}

int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.which == "vaf") {
    std::vector<Row> rows;
    for (int i = 0; i < cfg.grid; ++i) {
      const double a = static_cast<double>(i) / (cfg.grid - 1);
      for (int j = 0; j < cfg.grid; ++j) {
        const double f = static_cast<double>(j) / (cfg.grid - 1);
        rows.push_back({a, f, v_af(a, f)});
      }
    }
    emit(cfg, out, {"a", "f", "value"}, rows,
         json{{"which", "vaf"}, {"normalization", vol_general()}});
    return kExitOk;
  }
  const CurveSpec spec = curve_for(cfg);
  const DensityCurve curve = tabulate(spec.f, spec.lo, spec.hi, cfg.grid, spec.seams);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) rows.push_back({curve.grid[i], curve.values[i]});
  json extra{{"which", cfg.which}, {"r0", cfg.r0}};
  extra["normalization"] = spec.is_density || cfg.which == "va" ? json(curve.normalization) : json();
  emit(cfg, out, {"x", "value"}, rows, extra);
  return kExitOk;
}

int cmd_invariance(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto results = invariance_test(cfg.rotations, cfg.n, cfg.seed, cfg.contraction);
  std::vector<Row> rows;
  int rejections = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    rejections += results[i].p_value < 0.01;
    rows.push_back({static_cast<int>(i / 2), i % 2 == 0 ? "post" : "pre", results[i].d_statistic,
                    results[i].p_value});
  }
  const bool pass = rejections <= 2;
  emit(cfg, out, {"rotation", "map", "d_statistic", "p_value"}, rows,
       json{{"rejections", rejections}, {"verdict", pass ? "PASS" : "FAIL"}});
  err << "invariance: " << rejections << " of " << results.size() << " p-values below 0.01 -> "
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitStatFail;
}

int cmd_iterate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto steps = iterate_dynamics(cfg.kind, cfg.r0, cfg.steps, cfg.n, cfg.seed, cfg.workers);
  std::vector<Row> rows;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    rows.push_back({static_cast<int>(k + 1), steps[k].mean_radius, steps[k].std_error});
  }
  json extra{{"kind", kind_name(cfg.kind)}, {"r0", cfg.r0}};
  if (cfg.kind == ChannelKind::general) {
    const double fixed = fixed_point_radius();
    extra["fixed_point_radius"] = fixed;
    if (cfg.output_format == OutputFormat::csv) {
      err << "fixed_point_radius=" << format_double(fixed) << '\n';
    }
  } else {
    extra["shrink_factor"] = 63.0 / 128.0;
  }
  emit(cfg, out, {"step", "mean_radius", "std_error"}, rows, extra);
  return kExitOk;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  for (std::size_t i = 0; i < argv.size(); ++i) cfg.command_line += (i ? " " : "") + argv[i];
  if (const char* env = std::getenv("QCVOL_SEED")) {
    try {
      cfg.seed = parse_seed(env);
    } catch (const std::exception&) {
      err << "QCVOL_SEED is not an unsigned integer: " << env << '\n';
      return kExitUsage;
    }
  }

  CLI::App app{"Volumes and random-channel statistics for qubit quantum channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const std::map<std::string, ChannelKind> kinds{{"general", ChannelKind::general},
                                                 {"unital", ChannelKind::unital}};
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                    {"json", OutputFormat::json}};
  std::string seed_text;
  std::string format_text;
  std::string out_path;

  std::map<CLI::App*, std::pair<Command, OutputFormat>> commands;
  auto add = [&](const char* name, const char* help, Command c, OutputFormat fmt) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands[sub] = {c, fmt};
    return sub;
  };

  CLI::App* volume = add("volume", "Monte Carlo channel-space volume", Command::volume, OutputFormat::json);
  CLI::App* sample = add("sample", "Emit uniformly random channel parameters", Command::sample, OutputFormat::csv);
  CLI::App* push = add("push", "Radii of a fixed state pushed through random channels", Command::push, OutputFormat::csv);
  CLI::App* density = add("density", "Tabulate an analytic curve", Command::density, OutputFormat::csv);
  CLI::App* invariance = add("invariance", "Rotation-invariance KS tests", Command::invariance, OutputFormat::json);
  CLI::App* iterate = add("iterate", "Mean radius under repeated random channels", Command::iterate, OutputFormat::csv);

  // Each subcommand keeps its own --n default; the parsed one is copied into cfg.
  std::uint64_t n_volume = 1000000, n_sample = 1000, n_push = 10000, n_inv = 10000, n_iter = 10000;
  for (auto [sub, n_ref] : std::vector<std::pair<CLI::App*, std::uint64_t*>>{
           {volume, &n_volume}, {sample, &n_sample}, {push, &n_push}, {density, nullptr},
           {invariance, &n_inv}, {iterate, &n_iter}}) {
    sub->add_option("--kind", cfg.kind, "general | unital")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    if (n_ref) sub->add_option("--n", *n_ref, "Sample or trial count")->capture_default_str();
    sub->add_option("--seed", seed_text, "64-bit seed (decimal or 0x-hex); env QCVOL_SEED");
    sub->add_option("--workers", cfg.workers, "Worker streams")->capture_default_str();
    sub->add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "Write output to this path instead of stdout");
  }
  sample->add_option("--sampler", cfg.sampler, "sequential | rejection")->capture_default_str();
  push->add_option("--r0", cfg.r0, "Initial Bloch radius")->capture_default_str();
  push->add_option("--bins", cfg.bins, "Histogram bins")->capture_default_str();
  density->add_option("--which", cfg.which,
                      "vaf | va | eta | kappa | kappa_unital | kappa_general | fz | cdfz | mean_radius")
      ->capture_default_str();
  density->add_option("--grid", cfg.grid, "Grid points")->capture_default_str();
  density->add_option("--r0", cfg.r0, "Initial Bloch radius")->capture_default_str();
  invariance->add_option("--rotations", cfg.rotations, "Number of random rotations")->capture_default_str();
  invariance->add_option("--contraction", cfg.contraction)->group("");  // negative control
  iterate->add_option("--r0", cfg.r0, "Initial Bloch radius")->capture_default_str();
  iterate->add_option("--steps", cfg.steps, "Channel applications")->capture_default_str();

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto [command, default_format] = commands.at(chosen);
  cfg.command = command;
  cfg.output_format = format_text.empty() ? default_format : formats.at(format_text);
  if (!out_path.empty()) cfg.output_path = out_path;
  switch (command) {
    case Command::volume: cfg.n = n_volume; break;
    case Command::sample: cfg.n = n_sample; break;
    case Command::push: cfg.n = n_push; break;
    case Command::invariance: cfg.n = n_inv; break;
    case Command::iterate: cfg.n = n_iter; break;
    case Command::density: cfg.n = 1; break;
  }

  try {
    if (!seed_text.empty()) cfg.seed = parse_seed(seed_text);
    validate(cfg);
    if (command == Command::density && cfg.which != "vaf") (void)curve_for(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n' << chosen->help();
    return kExitUsage;
  }

  try {
    switch (command) {
      case Command::volume: return cmd_volume(cfg, out, err);
      case Command::sample: return cmd_sample(cfg, out, err);
      case Command::push: return cmd_push(cfg, out, err);
      case Command::density: return cmd_density(cfg, out, err);
      case Command::invariance: return cmd_invariance(cfg, out, err);
      case Command::iterate: return cmd_iterate(cfg, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qcvol::cli
