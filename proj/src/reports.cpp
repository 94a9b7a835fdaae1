#include "bandlab/reports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bandlab {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json values_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::string band_csv(const BandStructure& bands) {
  std::ostringstream out;
  out << "s,k1,k2";
  for (int b = 0; b < bands.bands.cols(); ++b) out << ",mu_" << (b + 1);
  out << '\n';
  for (std::size_t i = 0; i < bands.k_samples.size(); ++i) {
    out << format_double(bands.arclength[i]) << ','
        << format_double(bands.k_samples[i][0]) << ','
        << format_double(bands.k_samples[i][1]);
    for (int b = 0; b < bands.bands.cols(); ++b)
      out << ',' << format_double(bands.bands(static_cast<int>(i), b));
    out << '\n';
  }
  return out.str();
}

std::string tb_csv(const std::vector<TBBands>& bands,
                   const std::vector<double>& arclength) {
  if (bands.size() != arclength.size())
    throw std::invalid_argument("arclength size mismatch");
  std::ostringstream out;
  out << "s,k1,k2,E_minus,E_zero,E_plus\n";
  for (std::size_t i = 0; i < bands.size(); ++i)
    out << format_double(arclength[i]) << ',' << format_double(bands[i].k[0]) << ','
        << format_double(bands[i].k[1]) << ',' << format_double(bands[i].E_minus) << ','
        << format_double(bands[i].E_zero) << ',' << format_double(bands[i].E_plus)
        << '\n';
  return out.str();
}

json sectors_json(const std::vector<SectorSpectrum>& spectra, double eps) {
  json out;
  out["epsilon"] = eps;
  json sectors = json::object();
  for (const auto& s : spectra) {
    json entry;
    entry["eigenvalues"] = values_json(s.eigenvalues);
    entry["hermiticity_defect"] = s.hermiticity_defect;
    sectors[sector_name(s.sector)] = entry;
  }
  out["sectors"] = sectors;
  return out;
}

json prediction_json(const FirstOrderPrediction& p, const OrderingCase& oc,
                     const LeadingCoefficients* lead) {
  json out;
  out["epsilon"] = p.epsilon;
  out["mu_S"] = p.mu_S;
  out["mu_plus1"] = p.mu_plus1;
  out["mu_minus1"] = p.mu_minus1;
  out["nondegenerate"] = p.nondegenerate;
  out["case_label"] = oc.label;
  out["ordering"] = oc.ordering;
  if (lead) {
    out["alpha_lead"] = lead->alpha;
    out["beta_lead"] = complex_json(lead->beta);
    out["gamma_lead"] = complex_json(lead->gamma);
  }
  return out;
}

json normalform_json(const ResolventReport& res, const FitResult* fit) {
  json out;
  out["mu_S"] = res.coefficients.mu_S;
  out["alpha"] = res.coefficients.alpha;
  out["beta"] = complex_json(res.coefficients.beta);
  out["gamma"] = complex_json(res.coefficients.gamma);
  out["source"] = res.coefficients.source;
  out["structure_defects"] = {{"hermiticity", res.defects.hermiticity},
                              {"rotation", res.defects.rotation},
                              {"reflection", res.defects.reflection}};
  if (fit) {
    out["fit"] = {{"alpha", fit->coefficients.alpha},
                  {"beta_mod", fit->coefficients.beta.real()},
                  {"gamma_mod", fit->coefficients.gamma.real()},
                  {"re_gamma_beta_conj", fit->re_gamma_beta_conj},
                  {"fit_residual", fit->residual}};
  }
  return out;
}

json deform_json(const DeformationSplitting& d, double eta, double measured_gap) {
  json out;
  out["eta"] = eta;
  out["nu_plus"] = d.nu_plus;
  out["nu_minus"] = d.nu_minus;
  out["diag"] = d.diag;
  out["offdiag_mod"] = d.offdiag_mod;
  out["predicted_splitting"] = 2.0 * eta * d.offdiag_mod;
  out["measured_gap"] = measured_gap;
  return out;
}

json validation_json(const SymmetryReport& rep) {
  json out;
  out["is_real"] = rep.is_real;
  out["is_even"] = rep.is_even;
  out["is_rotation_invariant"] = rep.is_rotation_invariant;
  out["is_reflection_invariant"] = rep.is_reflection_invariant;
  out["admissible"] = rep.admissible();
  out["violations"] = {{"real", rep.real_violation},
                       {"even", rep.even_violation},
                       {"rotation", rep.rotation_violation},
                       {"reflection", rep.reflection_violation}};
  return out;
}

json tb_contrast_json(const TBContrastReport& rep) {
  json out;
  out["sigma"] = rep.sigma;
  json entries = json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"depth", e.depth},
                       {"mu_at_M", {e.mu_at_M[0], e.mu_at_M[1], e.mu_at_M[2]}},
                       {"pair_lo", e.pair_lo},
                       {"pair_third_gap", e.pair_third_gap},
                       {"pair_split_at_M", e.pair_split_at_M},
                       {"gap_over_kappa", e.gap_over_kappa},
                       {"gap_over_kappa_sq", e.gap_over_kappa_sq},
                       {"flatness_deviation", e.flatness_deviation}});
  }
  out["entries"] = entries;
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace bandlab
