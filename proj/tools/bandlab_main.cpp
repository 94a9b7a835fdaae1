// bandlab: band-structure laboratory for Z^2-periodic Schrodinger operators
// with pi/2-rotation-invariant potentials.
//
// Usage: bandlab <task> --config <file> --out <dir> [--threads n]
//        bandlab reproduce --figure <name> --out <dir> [--threads n]

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "bandlab/hamiltonian.hpp"
#include "bandlab/lattice.hpp"
#include "bandlab/normal_form.hpp"
#include "bandlab/perturbation.hpp"
#include "bandlab/potential.hpp"
#include "bandlab/reports.hpp"
#include "bandlab/sectors.hpp"
#include "bandlab/tight_binding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bandlab;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key))
      throw ConfigError("unknown key \"" + key + "\" in " + where);
}

FourierPotential parse_potential(const json& spec, const std::string& where) {
  if (!spec.is_object()) throw ConfigError(where + " must be an object");
  const std::string type = spec.value("type", "");
  if (type == "cosine-modes") {
    require_keys(spec, {"type", "modes"}, where);
    std::vector<std::pair<DualIndex, double>> modes;
    for (const auto& m : spec.at("modes"))
      modes.push_back({{m.at(0).get<int>(), m.at(1).get<int>()}, m.at(2).get<double>()});
    return from_cosine_modes(modes);
  }
  if (type == "fourier-modes") {
    // Raw coefficients: each entry [m1, m2, value] sets V_m = V_{-m} = value.
    // No symmetrization; intended for deformations that break admissibility.
    require_keys(spec, {"type", "modes"}, where);
    int n = 1;
    for (const auto& m : spec.at("modes"))
      n = std::max({n, std::abs(m.at(0).get<int>()), std::abs(m.at(1).get<int>())});
    FourierPotential W(n, "fourier-modes");
    for (const auto& m : spec.at("modes")) {
      const DualIndex idx{m.at(0).get<int>(), m.at(1).get<int>()};
      const double v = m.at(2).get<double>();
      W.set_coefficient(idx, v);
      W.set_coefficient({-idx.m1, -idx.m2}, v);
    }
    return W;
  }
  if (type == "gaussian-lattice") {
    require_keys(spec, {"type", "centers", "signs", "depth", "sigma", "truncation"},
                 where);
    std::vector<Vec2> centers;
    for (const auto& c : spec.at("centers"))
      centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    return from_gaussian_lattice(centers, spec.at("signs").get<std::vector<int>>(),
                                 spec.at("depth").get<double>(),
                                 spec.at("sigma").get<double>(),
                                 spec.at("truncation").get<int>());
  }
  if (type == "radial-bumps") {
    require_keys(spec, {"type", "centers", "signs", "radius", "grid_samples",
                        "truncation"},
                 where);
    std::vector<Vec2> centers;
    for (const auto& c : spec.at("centers"))
      centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    const Eigen::MatrixXd grid =
        sample_radial_bumps(centers, spec.at("signs").get<std::vector<int>>(),
                            spec.at("radius").get<double>(),
                            spec.value("grid_samples", 256));
    return from_samples(grid, spec.at("truncation").get<int>());
  }
  throw ConfigError(where + ": unknown potential type \"" + type + "\"");
}

struct Run {
  json config;
  fs::path out;
  int threads = 1;

  FourierPotential potential() const {
    return parse_potential(config.at("potential"), "potential");
  }
  double epsilon() const { return config.value("epsilon", 1.0); }
  int truncation() const { return config.value("truncation", 6); }
  int bands() const { return config.value("bands", 8); }

  void save(const std::string& name, const std::string& content) const {
    write_file((out / name).string(), content);
  }
  void save(const std::string& name, const json& j) const {
    save(name, j.dump(2) + "\n");
  }
};

void check_config(const Run& run, std::set<std::string> task_keys) {
  task_keys.insert({"potential", "epsilon", "truncation", "bands"});
  require_keys(run.config, task_keys, "config");
}

void task_bands(const Run& run) {
  check_config(run, {"path_samples"});
  const PlaneWaveBasis basis(run.truncation());
  const KPath path = standard_path(run.config.value("path_samples", 40));
  const BandStructure bs = band_structure(run.potential(), run.epsilon(), path,
                                          run.bands(), basis, run.threads);
  run.save("bands.csv", band_csv(bs));
  std::ostringstream rep;
  rep << "bands: " << bs.k_samples.size() << " samples along Gamma-X-M-Gamma, "
      << run.bands() << " bands, eps = " << format_double(run.epsilon()) << "\n";
  run.save("report.txt", rep.str());
}

void task_surfaces(const Run& run) {
  check_config(run, {"grid_resolution"});
  const PlaneWaveBasis basis(run.truncation());
  const BandStructure bs =
      surfaces_on_grid(run.potential(), run.epsilon(),
                       run.config.value("grid_resolution", 40), run.bands(), basis,
                       run.threads);
  run.save("bands.csv", band_csv(bs));
  std::ostringstream rep;
  rep << "surfaces: (" << bs.grid_resolution + 1 << ")^2 grid over [-pi,pi]^2, "
      << run.bands() << " bands\n";
  run.save("report.txt", rep.str());
}

void task_sectors(const Run& run) {
  check_config(run, {"sector_bands"});
  const OrbitTable table(run.truncation());
  const int nb = run.config.value("sector_bands", 4);
  std::vector<SectorSpectrum> spectra;
  for (Sector s : all_sectors)
    spectra.push_back(sector_spectrum(run.potential(), run.epsilon(), s, table, nb));
  run.save("sectors.json", sectors_json(spectra, run.epsilon()));
  std::ostringstream rep;
  rep << "sector eigenvalues at M (lowest per sector):\n";
  for (const auto& s : spectra)
    rep << "  " << sector_name(s.sector) << ": " << format_double(s.eigenvalues[0])
        << "\n";
  run.save("report.txt", rep.str());
}

void task_perturb(const Run& run) {
  check_config(run, {});
  const FourierPotential V = run.potential();
  const FirstOrderPrediction p = first_order(V, run.epsilon());
  const OrderingCase oc = ordering_case(V);
  LeadingCoefficients lead;
  const LeadingCoefficients* lead_ptr = nullptr;
  if (p.nondegenerate && run.epsilon() != 0.0) {
    lead = leading_coefficients(V, run.epsilon());
    lead_ptr = &lead;
  }
  run.save("prediction.json", prediction_json(p, oc, lead_ptr));
  std::ostringstream rep;
  rep << "first-order cluster at M: mu_S = " << format_double(p.mu_S)
      << ", mu_{+1} = " << format_double(p.mu_plus1)
      << ", mu_{-1} = " << format_double(p.mu_minus1) << "\n"
      << "ordering case " << oc.label << (oc.ordering.empty() ? "" : ": " + oc.ordering)
      << "\n";
  run.save("report.txt", rep.str());
}

void task_normalform(const Run& run) {
  check_config(run, {"stencil_radius"});
  const PlaneWaveBasis basis(run.truncation());
  const FourierPotential V = run.potential();
  const ResolventReport res =
      resolvent_coefficients(V, run.epsilon(), basis, basis.dim());
  const auto samples =
      sample_stencil(V, run.epsilon(), basis, res.coefficients.mu_S,
                     run.config.value("stencil_radius", 1e-2), run.threads);
  const FitResult fit = fit_normal_form(samples, res.coefficients.mu_S);
  run.save("normalform.json", normalform_json(res, &fit));
  std::ostringstream rep;
  rep << "normal form at M: alpha = " << format_double(res.coefficients.alpha)
      << ", |beta| = " << format_double(std::abs(res.coefficients.beta))
      << ", |gamma| = " << format_double(std::abs(res.coefficients.gamma))
      << " (resolvent); fit residual " << format_double(fit.residual) << "\n";
  run.save("report.txt", rep.str());
}

void task_tb_lieb(const Run& run) {
  require_keys(run.config, {"path_samples", "depths", "sigma", "truncation"}, "config");
  const KPath path = standard_path(run.config.value("path_samples", 60));
  run.save("tb.csv", tb_csv(tb_band_structure(path), path.arclength));
  std::ostringstream rep;
  rep << "tight-binding Lieb bands along Gamma-X-M-Gamma (" << path.samples.size()
      << " samples)\n";
  if (run.config.contains("depths")) {
    const TBContrastReport contrast = tb_contrast_report(
        run.config.at("depths").get<std::vector<double>>(),
        run.config.value("sigma", 0.001), run.config.value("truncation", 14), 1e-2,
        run.threads);
    run.save("tb_contrast.json", tb_contrast_json(contrast));
    rep << "continuum contrast computed for " << contrast.entries.size()
        << " well depths\n";
  }
  run.save("report.txt", rep.str());
}

void task_deform(const Run& run) {
  check_config(run, {"deformation", "eta"});
  const PlaneWaveBasis basis(run.truncation());
  const FourierPotential V = run.potential();
  const FourierPotential W =
      parse_potential(run.config.at("deformation"), "deformation");
  const double eta = run.config.value("eta", 1e-3);

  const ResolventReport res =
      resolvent_coefficients(V, run.epsilon(), basis, basis.dim());
  const DeformationSplitting d = deformation_splitting(
      res.phi1, res.phi2, W, eta, res.coefficients.mu_S, basis);

  // Cross-check against the direct spectrum of eps*V + eta*W at M: the gap
  // between the two eigenvalues nearest mu_S.
  const FourierPotential combined =
      FourierPotential{}.plus_scaled(V, run.epsilon()).plus_scaled(W, eta);
  const Eigen::VectorXd mu = eigenvalues_only(
      assemble(combined, 1.0, point_m, basis), std::min(basis.dim(), 12));
  const auto pair = pair_nearest(mu, res.coefficients.mu_S);
  const double gap = pair.second - pair.first;

  run.save("deform.json", deform_json(d, eta, gap));
  std::ostringstream rep;
  rep << "deformation at M: predicted splitting "
      << format_double(2.0 * eta * d.offdiag_mod) << ", measured gap "
      << format_double(gap) << " (eta = " << format_double(eta) << ")\n";
  run.save("report.txt", rep.str());
}

int task_validate(const Run& run) {
  check_config(run, {"tolerance"});
  const SymmetryReport rep =
      validate_admissible(run.potential(), run.config.value("tolerance", 1e-8));
  run.save("validation.json", validation_json(rep));
  std::ostringstream txt;
  txt << "admissible: " << (rep.admissible() ? "yes" : "no") << "\n";
  run.save("report.txt", txt.str());
  return rep.admissible() ? 0 : 1;
}

json figure_config(const std::string& name) {
  const json lieb_bumps = {{"type", "radial-bumps"},
                           {"centers", {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}},
                           {"signs", {-1, -1, -1}},
                           {"radius", 0.2},
                           {"grid_samples", 256},
                           {"truncation", 12}};
  if (name == "fig5")
    return {{"task", "bands"},
            {"potential", {{"type", "cosine-modes"}, {"modes", json::array()}}},
            {"epsilon", 0.0},
            {"truncation", 8},
            {"bands", 8},
            {"path_samples", 60}};
  if (name == "fig7") return {{"task", "tb-lieb"}, {"path_samples", 60}};
  if (name == "fig8")
    return {{"task", "surfaces"},
            {"potential",
             {{"type", "gaussian-lattice"},
              {"centers", {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}},
              {"signs", {-1, -1, -1}},
              {"depth", 1000.0},
              {"sigma", 0.001},
              {"truncation", 24}}},
            {"epsilon", 1.0},
            {"truncation", 10},
            {"bands", 4},
            {"grid_resolution", 40}};
  if (name == "fig9")
    return {{"task", "bands"}, {"potential", lieb_bumps},     {"epsilon", 4.0},
            {"truncation", 10}, {"bands", 6}, {"path_samples", 60}};
  if (name == "fig10")
    return {{"task", "bands"},
            {"potential",
             {{"type", "radial-bumps"},
              {"centers", {{0.5, 0.5}}},
              {"signs", {-1}},
              {"radius", 0.2},
              {"grid_samples", 256},
              {"truncation", 12}}},
            {"epsilon", 2.0},
            {"truncation", 10},
            {"bands", 6},
            {"path_samples", 60}};
  if (name == "fig11")
    return {{"task", "bands"},
            {"potential",
             {{"type", "radial-bumps"},
              {"centers", {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}},
              {"signs", {1, -1, -1}},
              {"radius", 0.2},
              {"grid_samples", 256},
              {"truncation", 12}}},
            {"epsilon", 2.0},
            {"truncation", 10},
            {"bands", 6},
            {"path_samples", 60}};
  if (name == "fig12")
    return {{"task", "bands"},
            {"potential",
             {{"type", "radial-bumps"},
              {"centers", {{0.5, 0.25}, {0.25, 0.5}, {0.75, 0.5}, {0.5, 0.75}}},
              {"signs", {1, 1, 1, 1}},
              {"radius", 0.2},
              {"grid_samples", 256},
              {"truncation", 12}}},
            {"epsilon", 2.0},
            {"truncation", 10},
            {"bands", 6},
            {"path_samples", 60}};
  if (name == "fig13")
    return {{"task", "bands"},
            {"potential",
             {{"type", "radial-bumps"},
              {"centers", {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}},
              {"signs", {-1, 1, 1}},
              {"radius", 0.2},
              {"grid_samples", 256},
              {"truncation", 12}}},
            {"epsilon", 2.0},
            {"truncation", 10},
            {"bands", 6},
            {"path_samples", 60}};
  if (name == "fig14")
    return {{"task", "tb-lieb"},
            {"path_samples", 60},
            {"depths", {10.0, 500.0, 1000.0, 2000.0}},
            {"sigma", 0.001},
            {"truncation", 14}};
  if (name == "fig15")
    return {{"task", "surfaces"},
            {"potential",
             {{"type", "gaussian-lattice"},
              {"centers", {{0.0, 0.0}}},
              {"signs", {-1}},
              {"depth", 1000.0},
              {"sigma", 0.001},
              {"truncation", 24}}},
            {"epsilon", 1.0},
            {"truncation", 10},
            {"bands", 4},
            {"grid_resolution", 40}};
  if (name == "deform-w")
    return {{"task", "deform"},
            {"potential", lieb_bumps},
            {"epsilon", 4.0},
            {"truncation", 8},
            {"deformation",
             {{"type", "fourier-modes"}, {"modes", {{1, 1, 1.0}}}}},
            {"eta", 1e-3}};
  throw ConfigError("unknown figure name \"" + name + "\"");
}

int dispatch(const std::string& task, Run& run) {
  if (task == "bands") task_bands(run);
  else if (task == "surfaces") task_surfaces(run);
  else if (task == "sectors") task_sectors(run);
  else if (task == "perturb") task_perturb(run);
  else if (task == "normalform") task_normalform(run);
  else if (task == "tb-lieb") task_tb_lieb(run);
  else if (task == "deform") task_deform(run);
  else if (task == "validate") return task_validate(run);
  else throw ConfigError("unknown task \"" + task + "\"");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band-structure laboratory for rotation-invariant periodic potentials"};
  app.require_subcommand(1);

  std::string config_path, out_dir, figure_name;
  int threads = 1;

  const std::vector<std::string> tasks = {"bands",      "surfaces", "sectors",
                                          "perturb",    "normalform", "tb-lieb",
                                          "deform",     "validate"};
  for (const auto& t : tasks) {
    CLI::App* sub = app.add_subcommand(t);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--threads", threads, "worker threads");
  }
  CLI::App* repro = app.add_subcommand("reproduce");
  repro->add_option("--figure", figure_name, "figure name (fig5, fig7..fig15, deform-w)")
      ->required();
  repro->add_option("--out", out_dir, "output directory")->required();
  repro->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    Run run;
    run.threads = std::max(1, threads);
    run.out = out_dir;
    fs::create_directories(run.out);

    std::string task;
    if (repro->parsed()) {
      run.config = figure_config(figure_name);
      task = run.config.at("task").get<std::string>();
      run.config.erase("task");
    } else {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot open config file: " + config_path);
      try {
        run.config = json::parse(f);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
      }
      task = app.get_subcommands().front()->get_name();
    }

    try {
      return dispatch(task, run);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config error: ") + e.what());
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
}
