#include "hyperthick/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperthick/analysis.hpp"
#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/parallel.hpp"
#include "hyperthick/properties.hpp"
#include "hyperthick/shape_spec.hpp"
#include "verify.hpp"

namespace hyperthick::cli {
namespace {

using nlohmann::json;

struct Defaults {
  int resolution = 48;
  int quadrature = 256;
  std::uint64_t samples = std::uint64_t{1} << 22;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
T parse_config_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !in.eof()) throw UsageError("config: bad value for '" + key + "'");
  return value;
}

// key=value lines; '#' starts a comment.
Defaults load_config(const std::string& path) {
  Defaults d;
  if (path.empty()) return d;
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string{};
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "resolution") d.resolution = parse_config_value<int>(key, value);
    else if (key == "quadrature") d.quadrature = parse_config_value<int>(key, value);
    else if (key == "samples") d.samples = parse_config_value<std::uint64_t>(key, value);
    else if (key == "seed") d.seed = parse_config_value<std::uint64_t>(key, value);
    else if (key == "threads") d.threads = parse_config_value<int>(key, value);
    else throw UsageError("config: unknown key '" + key + "'");
  }
  return d;
}

std::string config_path_from(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json envelope(json params, std::optional<int> resolution, std::optional<std::uint64_t> seed) {
  json out = {{"tool_version", kToolVersion}, {"params_echo", std::move(params)}};
  out["grid_resolution"] = resolution ? json(*resolution) : json(nullptr);
  if (seed) out["seed"] = *seed;
  return out;
}

json props_json(const properties::BodyProperties& b, const stationary::StationaryParams& p) {
  return {{"volume", b.volume},
          {"moment", b.moment},
          {"thickness", b.thickness},
          {"centroid", b.moment / b.volume},
          {"moment_vector", b.moment_vector},
          {"identity_residual", properties::linear_identity_residual(b, p)}};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw UsageError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Defaults defaults;
  try {
    defaults = load_config(config_path_from(args));
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (defaults.threads > 0 && !std::getenv("HYPERTHICK_THREADS")) parallel::set_max_threads(defaults.threads);

  CLI::App app{"Average m-dimensional thickness of n-dimensional bodies and its stationary shapes"};
  app.name("hyperthick");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value defaults (resolution, quadrature, samples, seed, threads)");

  std::function<int()> action;

  // nsphere
  auto* nsphere_cmd = app.add_subcommand("nsphere", "Unit n-ball volume and (n-1)-sphere area");
  int ns_dim = 3;
  nsphere_cmd->add_option("--dim", ns_dim, "Dimension n")->required();
  nsphere_cmd->callback([&] {
    action = [&] {
      json j = envelope({{"dim", ns_dim}}, std::nullopt, std::nullopt);
      j["n"] = ns_dim;
      j["V"] = nsphere::unit_ball_volume(ns_dim);
      j["S"] = nsphere::unit_sphere_area(ns_dim - 1);
      out << j.dump(2) << "\n";
      return 0;
    };
  });

  // thickness
  auto* thick_cmd = app.add_subcommand("thickness", "Average thickness of a shape");
  std::string th_shape;
  int th_m = 1, th_res = defaults.resolution;
  bool th_mc = false;
  std::uint64_t th_samples = defaults.samples, th_seed = defaults.seed;
  thick_cmd->add_option("--shape", th_shape, "Shape spec: ball:R[;n=N] | harmonic:n=N;c0=..;c1=.. | file:path.json")
      ->required();
  thick_cmd->add_option("--m", th_m, "Section dimension")->required();
  thick_cmd->add_option("--resolution", th_res, "Grid nodes per angle");
  thick_cmd->add_flag("--mc", th_mc, "Monte Carlo estimate instead of quadrature");
  thick_cmd->add_option("--samples", th_samples, "Monte Carlo samples");
  thick_cmd->add_option("--seed", th_seed, "Monte Carlo seed");
  thick_cmd->callback([&] {
    action = [&] {
      const ParsedShape shape = parse_shape_spec(th_shape);
      nsphere::require_section_dims(th_m, shape.shape.n);
      json params = {{"shape", th_shape}, {"m", th_m}, {"mc", th_mc}};
      if (th_mc) {
        params["samples"] = th_samples;
        const auto body = thickness::indicator_from_star(shape.shape, shape.bounding_radius);
        const auto est = thickness::thickness_montecarlo(body, th_m, th_samples, th_seed);
        json j = envelope(params, std::nullopt, th_seed);
        j["n"] = shape.shape.n;
        j["T"] = est.estimate;
        j["stderr"] = est.standard_error;
        j["samples"] = est.samples;
        j["accepted"] = est.accepted;
        out << j.dump(2) << "\n";
        return 0;
      }
      const int res = shape.resolution ? *shape.resolution : th_res;
      const auto grid = geometry::build_grid(shape.shape.n, res);
      const std::vector<double> radii = shape.radii.empty() ? thickness::sample_radii(shape.shape, grid) : shape.radii;
      json j = envelope(params, res, std::nullopt);
      j["n"] = shape.shape.n;
      j["T"] = thickness::average_thickness(radii, th_m, grid);
      j["volume"] = thickness::volume(radii, grid);
      out << j.dump(2) << "\n";
      return 0;
    };
  });

  // stationary profile | props
  auto* stat_cmd = app.add_subcommand("stationary", "Stationary shapes");
  stat_cmd->require_subcommand(1);
  auto* profile_cmd = stat_cmd->add_subcommand("profile", "Meridian (z, R) of a stationary shape as CSV");
  int pr_gap = 1, pr_points = 201;
  double pr_lambda = 1.0, pr_ecc = 0.0;
  std::string pr_out;
  profile_cmd->add_option("--nm", pr_gap, "n - m")->required();
  profile_cmd->add_option("--lambda", pr_lambda, "Multiplier lambda > 0")->required();
  profile_cmd->add_option("--ecc", pr_ecc, "Eccentricity e >= 0")->required();
  profile_cmd->add_option("--points", pr_points, "Number of samples");
  profile_cmd->add_option("--out", pr_out, "CSV path; a JSON sidecar is written to <path>.json")->required();
  profile_cmd->callback([&] {
    action = [&] {
      const auto p = stationary::StationaryParams::from_gap(pr_gap, pr_lambda, pr_ecc);
      const auto curve = stationary::profile_curve(p, pr_points);
      std::ofstream csv(pr_out);
      if (!csv) throw DomainError("cannot write '" + pr_out + "'");
      csv << "z,R\r\n";
      for (const auto& s : curve.samples) csv << fmt17(s.z) << "," << fmt17(s.R) << "\r\n";
      json j = envelope({{"nm", pr_gap}, {"lambda", pr_lambda}, {"ecc", pr_ecc}, {"points", pr_points}, {"out", pr_out}},
                        pr_points, std::nullopt);
      j["mu"] = p.mu();
      j["shape_class"] = std::string(stationary::to_string(p.shape_class()));
      j["z_minus"] = curve.z_minus;
      j["z_plus"] = curve.z_plus;
      j["csv"] = pr_out;
      std::ofstream side(pr_out + ".json");
      if (!side) throw DomainError("cannot write '" + pr_out + ".json'");
      side << j.dump(2) << "\n";
      out << j.dump(2) << "\n";
      return 0;
    };
  });

  auto* props_cmd = stat_cmd->add_subcommand("props", "Volume, moment and thickness of a stationary shape");
  int pp_n = 3, pp_m = 1, pp_res = defaults.quadrature;
  double pp_lambda = 1.0, pp_ecc = 0.0;
  bool pp_closed = false;
  props_cmd->add_option("--n", pp_n, "Body dimension")->required();
  props_cmd->add_option("--m", pp_m, "Section dimension")->required();
  props_cmd->add_option("--lambda", pp_lambda, "Multiplier lambda > 0")->required();
  props_cmd->add_option("--ecc", pp_ecc, "Eccentricity e in [0, 1]")->required();
  props_cmd->add_option("--resolution", pp_res, "Quadrature nodes");
  props_cmd->add_flag("--closed-form", pp_closed, "Report the closed-form values");
  props_cmd->callback([&] {
    action = [&] {
      const auto p = stationary::StationaryParams::make(pp_n, pp_m, pp_lambda, pp_ecc);
      const auto quad = properties::body_properties(p, pp_res);
      json j = envelope({{"n", pp_n}, {"m", pp_m}, {"lambda", pp_lambda}, {"ecc", pp_ecc}, {"closed_form", pp_closed}},
                        pp_res, std::nullopt);
      j["mu"] = p.mu();
      j["shape_class"] = std::string(stationary::to_string(p.shape_class()));
      if (pp_closed) {
        const auto cf = properties::closed_form(p);
        if (!cf) throw DomainError("no closed form for this (n, m, e)");
        j["method"] = "closed-form";
        j.update(props_json(*cf, p));
        j["quadrature"] = props_json(quad, p);
      } else {
        j["method"] = "quadrature";
        j.update(props_json(quad, p));
      }
      out << j.dump(2) << "\n";
      return 0;
    };
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Invariant suites; exit 1 if any check fails");
  verify_cmd->require_subcommand(1);
  auto report = [&](json params, std::optional<int> res, std::optional<std::uint64_t> seed, json r) {
    json j = envelope(std::move(params), res, seed);
    j.update(r);
    out << j.dump(2) << "\n";
    return j["pass"].get<bool>() ? 0 : 1;
  };

  verify::SphereOptions so;
  so.seed = defaults.seed;
  auto* v_sphere = verify_cmd->add_subcommand("sphere-optimality", "Perturbed balls never beat the ball");
  v_sphere->add_option("--n", so.n);
  v_sphere->add_option("--m", so.m);
  v_sphere->add_option("--trials", so.trials);
  v_sphere->add_option("--amplitude", so.amplitude);
  v_sphere->add_option("--seed", so.seed);
  v_sphere->add_option("--resolution", so.resolution);
  v_sphere->callback([&] {
    action = [&] {
      return report({{"n", so.n}, {"m", so.m}, {"trials", so.trials}, {"amplitude", so.amplitude}}, so.resolution,
                    so.seed, verify::sphere_optimality(so));
    };
  });

  int id_res = defaults.quadrature;
  auto* v_identity = verify_cmd->add_subcommand("identity", "Linear relation between T, V and M");
  v_identity->add_option("--resolution", id_res, "Quadrature nodes");
  v_identity->callback([&] {
    action = [&] {
      return report(json::object(), id_res, std::nullopt, verify::identity(verify::default_identity_cases(), id_res));
    };
  });

  verify::NullvectorOptions no;
  no.seed = defaults.seed;
  auto* v_null = verify_cmd->add_subcommand("nullvector", "Recover lambda and mu from n+2 boundary points");
  v_null->add_option("--n", no.n);
  v_null->add_option("--m", no.m);
  v_null->add_option("--lambda", no.lambda);
  v_null->add_option("--ecc", no.ecc);
  v_null->add_option("--resamplings", no.resamplings);
  v_null->add_option("--seed", no.seed);
  v_null->callback([&] {
    action = [&] {
      return report({{"n", no.n}, {"m", no.m}, {"lambda", no.lambda}, {"ecc", no.ecc}, {"resamplings", no.resamplings}},
                    std::nullopt, no.seed, verify::nullvector(no));
    };
  });

  std::optional<int> fa_gap;
  int fa_points = 200;
  std::uint64_t fa_seed = defaults.seed;
  auto* v_fact = verify_cmd->add_subcommand("factorization", "Critical axis polynomial factors as (w-1)^2 q(w)");
  v_fact->add_option("--nm", fa_gap, "n - m (default: 1..8)");
  v_fact->add_option("--points", fa_points);
  v_fact->add_option("--seed", fa_seed);
  v_fact->callback([&] {
    action = [&] {
      json params = {{"points", fa_points}};
      params["nm"] = fa_gap ? json(*fa_gap) : json(nullptr);
      return report(params, std::nullopt, fa_seed, verify::factorization(fa_gap, fa_points, fa_seed));
    };
  });

  // dumbbell
  auto* db_cmd = app.add_subcommand("dumbbell", "Two-disc sweep toward the planar bound, as CSV");
  double db_area = std::numbers::pi, db_centroid = 1.0;
  std::string db_sweep;
  std::uint64_t db_samples = defaults.samples, db_seed = defaults.seed;
  db_cmd->add_option("--area", db_area, "Total area A")->required();
  db_cmd->add_option("--centroid", db_centroid, "Centroid distance G")->required();
  db_cmd->add_option("--gamma-sweep", db_sweep, "Comma-separated gamma values")->required();
  db_cmd->add_option("--samples", db_samples, "Monte Carlo samples per disc");
  db_cmd->add_option("--seed", db_seed);
  db_cmd->callback([&] {
    action = [&] {
      const std::vector<double> gammas = parse_list(db_sweep);
      std::vector<analysis::DumbbellConfig> configs;
      for (double g : gammas) configs.emplace_back(db_area, db_centroid, g);
      out << "gamma,T_asymptotic,T_exact,stderr\r\n";
      for (const auto& c : configs) {
        const auto est = analysis::dumbbell_exact(c, db_samples, db_seed);
        out << fmt17(c.gamma()) << "," << fmt17(analysis::dumbbell_asymptotic(c)) << "," << fmt17(est.estimate) << ","
            << fmt17(est.standard_error) << "\r\n";
      }
      return 0;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (!action) return 2;

  try {
    return action();
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << json{{"error", e.kind()}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    out << json{{"error", "domain"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace hyperthick::cli
