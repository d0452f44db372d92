#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotorlattice/checks.hpp"
#include "rotorlattice/csvio.hpp"
#include "rotorlattice/errors.hpp"
#include "rotorlattice/integrators.hpp"
#include "rotorlattice/measure.hpp"
#include "rotorlattice/oracle.hpp"
#include "rotorlattice/version.hpp"

namespace rotor {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir == ".") return file;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);  // best effort; write reports
  if (dir.back() == '/') return dir + file;
  return dir + "/" + file;
}

std::string csv_header(const RunConfig& cfg, const char* command) {
  std::string out;
  out += std::string("# ") + kProjectName + " " + command + "\n";
  out += "# config_hash " + cfg.hash() + "\n";
  out += "# seed " + format_int(static_cast<long long>(cfg.seed)) + "\n";
  return out;
}

void stamp(ordered_json& j, const RunConfig& cfg, const char* command) {
  j["command"] = command;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
  const Model model = cfg.make_model();
  const StepPlan plan = cfg.make_plan();
  const std::vector<double> epochs = cfg.make_epochs();
  const int threads = resolve_threads(cfg);
  const std::size_t nsite = cfg.track.size();
  const std::size_t per_epoch = 2 * nsite + 1;  // x, x^2 per site, then V
  const int stat_dim = static_cast<int>(epochs.size() * per_epoch);

  const StatFn stat = [&](const TrajectoryRecord& rec, std::span<double> o) {
    std::size_t d = 0;
    for (std::size_t e = 0; e < rec.snapshots.size(); ++e) {
      const auto& x = rec.snapshots[e];
      for (int s : cfg.track) o[d++] = x[static_cast<std::size_t>(s)];
      for (int s : cfg.track) {
        const double v = x[static_cast<std::size_t>(s)];
        o[d++] = v * v;
      }
      o[d++] = model.potential(x);
    }
  };

  EnsembleSpec spec;
  spec.plan = plan;
  spec.epochs = epochs;
  EnsembleStats stats;
  if (cfg.start == RunConfig::Start::Gaussian) {
    GaussianMeasure mu(model, cfg.r);
    stats = run_ensemble(
        model, spec,
        [&mu](RngStream& rng, std::vector<double>& x) { mu.sample(rng, x); },
        cfg.ntraj, cfg.seed, threads, stat_dim, stat);
  } else {
    stats = run_ensemble(model, spec, cfg.start_field(model), cfg.ntraj,
                         cfg.seed, threads, stat_dim, stat);
  }

  std::vector<std::string> names;
  for (int s : cfg.track) names.push_back("x[" + std::to_string(s) + "]");
  for (int s : cfg.track) names.push_back("x2[" + std::to_string(s) + "]");
  names.push_back("V");

  std::string csv = csv_header(cfg, "simulate");
  csv += "t,observable,mean,var,stderr\n";
  ordered_json rows = ordered_json::array();
  for (std::size_t e = 0; e < epochs.size(); ++e)
    for (std::size_t k = 0; k < per_epoch; ++k) {
      const std::size_t d = e * per_epoch + k;
      const double se = std::sqrt(stats.var[d] / cfg.ntraj);
      const std::string cells[] = {format_real(epochs[e]), names[k],
                                   format_real(stats.mean[d]),
                                   format_real(stats.var[d]), format_real(se)};
      csv += csv_line(cells, 5);
      rows.push_back({{"t", epochs[e]},
                      {"observable", names[k]},
                      {"mean", stats.mean[d]},
                      {"var", stats.var[d]},
                      {"stderr", se}});
    }

  if (cfg.write_csv) {
    const std::string path = join_path(cfg.out_dir, "simulate.csv");
    write_text_file(path, csv);
    std::printf("wrote %s\n", path.c_str());
  }
  if (cfg.write_json) {
    ordered_json j;
    stamp(j, cfg, "simulate");
    j["ntraj"] = cfg.ntraj;
    j["scheme"] = to_string(plan.scheme);
    j["dt"] = plan.dt;
    j["observables"] = rows;
    const std::string path = join_path(cfg.out_dir, "simulate.json");
    write_text_file(path, j.dump(2) + "\n");
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int cmd_oracle(const RunConfig& cfg, const std::string& task,
               const std::string& observable) {
  const Model model = cfg.make_model();
  std::string csv = csv_header(cfg, ("oracle " + task).c_str());
  std::string filename;

  if (task == "heat") {
    if (!model.diagonal())
      throw ConfigError("oracle task heat needs a diagonal stencil");
    const double b = model.stencil().diagonal_coeff();
    csv += "t,site,value\n";
    for (double t : cfg.make_epochs()) {
      // squares diffuse with kernel time b^2 t
      const auto kernel = heat_kernel_torus(model.lattice(), b * b * t);
      for (std::size_t s = 0; s < kernel.size(); ++s) {
        const std::string cells[] = {format_real(t),
                                     format_int(static_cast<long long>(s)),
                                     format_real(kernel[s])};
        csv += csv_line(cells, 3);
      }
    }
    filename = "oracle_heat.csv";
  } else if (task == "quadratic") {
    const int n = model.lattice().num_sites();
    QuadraticForm q(n);
    std::string name;
    if (observable == "x0sq") {
      q.add(0, 0, 1.0);
      name = "x0sq";
    } else if (observable == "v") {
      // V = x.Mx/2: assemble the stencil row at every site
      for (int i = 0; i < n; ++i)
        for (const auto& ent : model.stencil().entries())
          q.add(i, model.lattice().shift(i, ent.offset), 0.5 * ent.coeff);
      name = "V";
    } else {
      throw ConfigError("oracle observable must be x0sq or v, got '" +
                        observable + "'");
    }
    GaussianMeasure mu(model, cfg.r);
    const auto times = cfg.make_epochs();
    const auto curve = quadratic_evolve_grid(model, q, cfg.beta, times);
    csv += "t,observable,mean,var\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
      const std::string cells[] = {
          format_real(times[k]), name,
          format_real(quadratic_mean(mu, curve[k].form)),
          format_real(quadratic_variance(mu, curve[k].form))};
      csv += csv_line(cells, 4);
    }
    filename = "oracle_quadratic.csv";
  } else if (task == "constantA") {
    if (!model.diagonal())
      throw ConfigError("oracle task constantA needs a diagonal stencil");
    const double b = model.stencil().diagonal_coeff();
    csv += "b,constant_a\n";
    const std::string cells[] = {format_real(b),
                                 format_real(gradient_envelope_plateau(b))};
    csv += csv_line(cells, 2);
    filename = "oracle_constantA.csv";
  } else {
    throw ConfigError("unknown oracle task '" + task +
                      "' (expected heat, quadratic or constantA)");
  }

  const std::string path = join_path(cfg.out_dir, filename);
  write_text_file(path, csv);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_check(const RunConfig& cfg, const std::string& suite) {
  CheckContext ctx;
  ctx.cfg = cfg;
  ctx.threads = resolve_threads(cfg);
  const auto reports = run_suite(suite, ctx);

  int hard_failures = 0;
  int passes = 0;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    if (r.pass) ++passes;
    if (!r.pass && r.hard) ++hard_failures;
    std::string line = r.pass ? "[PASS] " : "[FAIL] ";
    line += r.name;
    if (r.criterion > 0)
      line += " (criterion " + std::to_string(r.criterion) + ")";
    if (!r.hard) line += " [soft]";
    if (!r.note.empty()) line += " -- " + r.note;
    std::printf("%s\n", line.c_str());

    ordered_json jr;
    jr["name"] = r.name;
    jr["property"] = r.property;
    jr["tolerance"] = r.tolerance;
    jr["criterion"] = r.criterion;
    jr["hard"] = r.hard;
    jr["pass"] = r.pass;
    ordered_json meas = ordered_json::object();
    for (const auto& [key, value] : r.measured) meas[key] = value;
    jr["measured"] = meas;
    jr["note"] = r.note;
    jr["seed"] = r.seed;
    jr["config_hash"] = r.config_hash;
    arr.push_back(jr);
  }

  ordered_json j;
  stamp(j, cfg, "check");
  j["suite"] = suite;
  j["total"] = reports.size();
  j["passed"] = passes;
  j["hard_failures"] = hard_failures;
  j["reports"] = arr;
  const std::string path =
      join_path(cfg.out_dir, "checks_" + suite + ".json");
  write_text_file(path, j.dump(2) + "\n");

  std::printf("suite %s: %d/%zu passed, %d hard failure%s; wrote %s\n",
              suite.c_str(), passes, reports.size(), hard_failures,
              hard_failures == 1 ? "" : "s", path.c_str());
  return hard_failures > 0 ? 1 : 0;
}

}  // namespace rotor
